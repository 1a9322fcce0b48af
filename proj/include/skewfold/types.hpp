#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewfold {

/// Thrown on invalid configuration (bad grid, parameters out of range).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when input data violates an operation's domain (negative path,
/// decreasing clock, grid mismatch, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Uniform grid t_i = i * dt on [0, T].
struct TimeGrid {
    double horizon = 0.0;
    std::size_t n_steps = 0;

    TimeGrid() = default;
    TimeGrid(double T, std::size_t n);

    double dt() const { return horizon / static_cast<double>(n_steps); }
    std::size_t size() const { return n_steps + 1; }
    double time(std::size_t i) const { return static_cast<double>(i) * dt(); }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.horizon == b.horizon && a.n_steps == b.n_steps;
    }
};

/// A scalar process sampled on a uniform grid; values.size() == grid.size().
struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;

    SamplePath() = default;
    explicit SamplePath(TimeGrid g) : grid(g), values(g.size(), 0.0) {}
    SamplePath(TimeGrid g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    double back() const { return values.back(); }

    /// Value at a grid time; t must lie on the grid (within fp slack).
    double at_time(double t) const;
};

/// U = M + A with quadratic variation <U> = <M>.
struct SemimartingalePath {
    SamplePath total;            // U
    SamplePath martingale_part;  // M, M[0] = 0
    SamplePath fv_part;          // A, A[0] = 0
    SamplePath qv;               // nondecreasing, qv[0] = 0

    const TimeGrid& grid() const { return total.grid; }
};

void require_same_grid(const SamplePath& a, const SamplePath& b);

}  // namespace skewfold
