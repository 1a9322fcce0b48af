#pragma once

#include <functional>

#include "skewfold/rng.hpp"
#include "skewfold/types.hpp"

namespace skewfold {

/// Grid factory; throws ConfigError on non-positive T or n = 0.
TimeGrid make_grid(double horizon, std::size_t n_steps);

/// Scaled Brownian motion: independent N(0, scale^2 dt) increments,
/// A == 0, qv[i] = scale^2 * t_i (constructed exactly, not estimated).
SemimartingalePath sample_brownian(const TimeGrid& grid, RngStream& stream,
                                   double scale = 1.0);

/// Left-point Ito sum: I[k] = sum_{i<k} H[i] (U[i+1] - U[i]).
SamplePath ito_integral(const SamplePath& integrand, const SamplePath& integrator);

/// Realized quadratic variation: Q[k] = sum_{i<k} (U[i+1] - U[i])^2.
SamplePath quadratic_variation(const SamplePath& path);

/// Brownian motion evaluated at a deterministic-per-path clock: increment i
/// is drawn with variance clock[i+1] - clock[i], so the law is exact with no
/// interpolation.  Throws DomainError if the clock decreases.
SamplePath brownian_with_clock(const SamplePath& clock, RngStream& stream);

using Coefficient = std::function<double(double state, double time)>;

/// Euler step X[i+1] = X[i] + drift(X[i], t_i) dt + dispersion(X[i], t_i) dD_i
/// against the increments of a supplied driver path.
SamplePath euler_path(const Coefficient& drift, const Coefficient& dispersion,
                      double x0, const TimeGrid& grid, const SamplePath& driver);

}  // namespace skewfold
