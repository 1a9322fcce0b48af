#include "skewfold/types.hpp"

#include <cmath>

namespace skewfold {

TimeGrid::TimeGrid(double T, std::size_t n) : horizon(T), n_steps(n) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigError("TimeGrid: horizon must be positive and finite");
    }
    if (n < 1) {
        throw ConfigError("TimeGrid: need at least one step");
    }
}

SamplePath::SamplePath(TimeGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw DomainError("SamplePath: value count does not match grid");
    }
}

double SamplePath::at_time(double t) const {
    const double dt = grid.dt();
    const double pos = t / dt;
    const auto idx = static_cast<std::size_t>(std::llround(pos));
    if (idx >= size() || std::abs(pos - static_cast<double>(idx)) > 1e-9) {
        throw DomainError("SamplePath: time is not a grid point");
    }
    return values[idx];
}

void require_same_grid(const SamplePath& a, const SamplePath& b) {
    if (!(a.grid == b.grid)) {
        throw DomainError("paths live on different grids");
    }
}

}  // namespace skewfold
