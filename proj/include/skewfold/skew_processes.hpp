#pragma once

#include "skewfold/excursion.hpp"
#include "skewfold/path_engine.hpp"
#include "skewfold/types.hpp"

namespace skewfold {

struct SkewBesselParams {
    double delta = 1.5;  // dimension, strictly in (1, 2)
    double alpha = 0.5;  // skewness, in (0, 1)
    double x0 = 0.0;     // starting point of the squared process, >= 0

    void validate() const;
};

/// Ocone-martingale counterexample: a martingale driven through a clock that
/// accelerates by u or v after t = 1 according to the sign of B(1).
struct OconeResult {
    SamplePath path;         // X = B(A(.))
    SamplePath mirror;       // Xi = -X
    SamplePath levy_driver;  // U = int sgn(X) dX (discrete)
    SamplePath clock;        // A, nondecreasing, A(t) = t for t <= 1
    double u = 0.0;
    double v = 0.0;
};

/// Strong solution of the perturbed skew-Tanaka equation via the
/// one-dimensional SDE with piecewise-constant dispersion.
struct NakaoResult {
    SamplePath solution;       // Y
    SamplePath unfolded;       // X, from Y by the inverse scaling map
    SamplePath driver_u;       // U, indicator splice of (B1, B2)
    SamplePath driver_v;       // V
    double residual = 0.0;     // sup-norm defect of the perturbed equation
    std::map<std::string, double> diagnostics;
};

/// Skew Brownian motion with parameter alpha.  For x0 = 0 this is the
/// skew-unfolded Skorokhod reflection of a Brownian path; for x0 != 0 the
/// path runs as plain Brownian motion until its first grid-detected zero
/// crossing and is unfolded from there on.
SamplePath skew_brownian(double alpha, double x0, const TimeGrid& grid,
                         RngStream& stream);

/// Clamped Euler path of dU2 = delta dt + 2 sqrt(U2) dB, delta in (1, 2).
SamplePath squared_bessel(double delta, double x0, const TimeGrid& grid,
                          RngStream& stream);

/// Skew Bessel process: the square root of a squared Bessel path, unfolded
/// excursion by excursion.  Diagnostics carry the estimated local time of the
/// folded path at 0 (should vanish) and its occupation time of the zero set.
UnfoldResult skew_bessel(const SkewBesselParams& params, const TimeGrid& grid,
                         RngStream& stream);

/// Boundary scale maps g(x) = |x|^(2-delta) / (2-delta), G(x) = sgn(x) g(x).
struct BesselScale {
    double g = 0.0;
    double G = 0.0;
};
BesselScale bessel_scale_maps(double x, double delta);

/// Example with u != v: X and its mirror both solve the same Tanaka equation
/// yet have different laws, visible in the third moment at t = 2.
/// The grid must contain t = 1 and extend to at least t = 2.
OconeResult ocone_counterexample(double u, double v, const TimeGrid& grid,
                                 RngStream& stream);

/// Dispersion-map construction of the perturbed skew-Tanaka solution, with
/// the drivers disentangled from the generating planar Brownian pair.
NakaoResult nakao_solution(double alpha, double x0, const TimeGrid& grid,
                           RngStream& stream);

}  // namespace skewfold
