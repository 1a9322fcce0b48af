#include "skewfold/path_engine.hpp"

#include <cmath>

namespace skewfold {

TimeGrid make_grid(double horizon, std::size_t n_steps) {
    return TimeGrid(horizon, n_steps);
}

SamplePath brownian_with_clock(const SamplePath& clock, RngStream& stream) {
    if (clock.values.empty() || clock.values.front() != 0.0) {
        throw DomainError("brownian_with_clock: clock must start at 0");
    }
    SamplePath out(clock.grid);
    for (std::size_t i = 0; i + 1 < clock.size(); ++i) {
        const double dv = clock[i + 1] - clock[i];
        if (dv < 0.0) {
            throw DomainError("brownian_with_clock: clock must be nondecreasing");
        }
        // One draw per step even when dv = 0, so the consumption pattern of
        // the stream does not depend on the clock values.
        const double z = stream.next_normal();
        out[i + 1] = out[i] + std::sqrt(dv) * z;
    }
    return out;
}

SemimartingalePath sample_brownian(const TimeGrid& grid, RngStream& stream,
                                   double scale) {
    if (!(scale > 0.0)) {
        throw ConfigError("sample_brownian: scale must be positive");
    }
    SamplePath clock(grid);
    for (std::size_t i = 0; i < clock.size(); ++i) {
        clock[i] = scale * scale * grid.time(i);
    }
    SemimartingalePath out;
    out.total = brownian_with_clock(clock, stream);
    out.martingale_part = out.total;
    out.fv_part = SamplePath(grid);
    out.qv = std::move(clock);
    return out;
}

SamplePath ito_integral(const SamplePath& integrand, const SamplePath& integrator) {
    require_same_grid(integrand, integrator);
    SamplePath out(integrand.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < integrand.size(); ++i) {
        acc += integrand[i] * (integrator[i + 1] - integrator[i]);
        out[i + 1] = acc;
    }
    return out;
}

SamplePath quadratic_variation(const SamplePath& path) {
    SamplePath out(path.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double d = path[i + 1] - path[i];
        acc += d * d;
        out[i + 1] = acc;
    }
    return out;
}

SamplePath euler_path(const Coefficient& drift, const Coefficient& dispersion,
                      double x0, const TimeGrid& grid, const SamplePath& driver) {
    if (!(driver.grid == grid)) {
        throw DomainError("euler_path: driver grid mismatch");
    }
    const double dt = grid.dt();
    SamplePath out(grid);
    out[0] = x0;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        const double t = grid.time(i);
        const double b = drift(out[i], t);
        const double s = dispersion(out[i], t);
        if (!std::isfinite(b) || !std::isfinite(s)) {
            throw DomainError("euler_path: coefficient evaluated to a non-finite value");
        }
        out[i + 1] = out[i] + b * dt + s * (driver[i + 1] - driver[i]);
    }
    return out;
}

}  // namespace skewfold
