#include "skewfold/local_time.hpp"

#include <algorithm>
#include <cmath>

#include "skewfold/path_engine.hpp"

namespace skewfold {

double default_bandwidth(const TimeGrid& grid) { return std::sqrt(grid.dt()); }

namespace {

SamplePath occupation_right(const SamplePath& path, const SamplePath& qv,
                            double epsilon) {
    SamplePath out(path.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        // Strictly positive lower bound: on a grid the exact-zero set can
        // carry qv mass of the same order as the band itself (Skorokhod
        // reflections hit 0 exactly), which would not vanish with epsilon.
        if (path[i] > 0.0 && path[i] < epsilon) {
            acc += (qv[i + 1] - qv[i]) / (2.0 * epsilon);
        }
        out[i + 1] = acc;
    }
    return out;
}

}  // namespace

LocalTimeCurve occupation_local_time(const SamplePath& path, const SamplePath& qv,
                                     double epsilon, LocalTimeSide side) {
    if (!(epsilon > 0.0)) {
        throw ConfigError("occupation_local_time: epsilon must be positive");
    }
    require_same_grid(path, qv);
    LocalTimeCurve out;
    out.method = LocalTimeMethod::occupation;
    out.side = side;
    out.epsilon = epsilon;
    if (side == LocalTimeSide::right) {
        out.values = occupation_right(path, qv, epsilon);
    } else {
        SamplePath negated(path.grid);
        for (std::size_t i = 0; i < path.size(); ++i) negated[i] = -path[i];
        const auto lp = occupation_right(path, qv, epsilon);
        const auto lm = occupation_right(negated, qv, epsilon);
        out.values = SamplePath(path.grid);
        for (std::size_t i = 0; i < path.size(); ++i) {
            out.values[i] = 0.5 * (lp[i] + lm[i]);
        }
    }
    return out;
}

LocalTimeCurve upcrossing_local_time(const SamplePath& folded, double epsilon,
                                     double at_zero_tol) {
    if (!(epsilon > 0.0)) {
        throw ConfigError("upcrossing_local_time: epsilon must be positive");
    }
    LocalTimeCurve out;
    out.method = LocalTimeMethod::upcrossing;
    out.side = LocalTimeSide::right;
    out.epsilon = epsilon;
    out.values = SamplePath(folded.grid);

    // Alternating passage times: armed at the zero level, count when the
    // path first exceeds epsilon, re-arm at the next return to zero.
    bool armed = true;
    std::size_t count = 0;
    for (std::size_t i = 0; i < folded.size(); ++i) {
        if (folded[i] < -at_zero_tol) {
            throw DomainError("upcrossing_local_time: path must be nonnegative");
        }
        if (armed && folded[i] > epsilon) {
            ++count;
            armed = false;
        } else if (!armed && folded[i] <= at_zero_tol) {
            armed = true;
        }
        out.values[i] = epsilon * static_cast<double>(count);
    }
    return out;
}

LocalTimeCurve tanaka_local_time(const SamplePath& path, SignConvention convention) {
    SamplePath signs(path.grid);
    for (std::size_t i = 0; i < path.size(); ++i) {
        signs[i] = sign_of(path[i], convention);
    }
    const auto integral = ito_integral(signs, path);
    LocalTimeCurve out;
    out.method = LocalTimeMethod::tanaka;
    out.side = convention == SignConvention::symmetric ? LocalTimeSide::symmetric
                                                       : LocalTimeSide::right;
    out.values = SamplePath(path.grid);
    double running = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double raw = std::abs(path[i]) - std::abs(path[0]) - integral[i];
        running = std::max(running, raw);
        out.values[i] = running;
    }
    return out;
}

}  // namespace skewfold
