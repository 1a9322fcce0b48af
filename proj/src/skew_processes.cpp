#include "skewfold/skew_processes.hpp"

#include <cmath>

#include "skewfold/local_time.hpp"
#include "skewfold/reflection.hpp"
#include "skewfold/statistics.hpp"

namespace skewfold {

void SkewBesselParams::validate() const {
    if (!(delta > 1.0 && delta < 2.0)) {
        throw ConfigError("SkewBesselParams: delta must lie strictly in (1, 2)");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("SkewBesselParams: alpha must lie in (0, 1)");
    }
    if (x0 < 0.0) {
        throw ConfigError("SkewBesselParams: x0 must be >= 0");
    }
}

SamplePath skew_brownian(double alpha, double x0, const TimeGrid& grid,
                         RngStream& stream) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("skew_brownian: alpha must be in (0, 1)");
    }
    if (x0 == 0.0) {
        const auto driver = sample_brownian(grid, stream);
        return unfold_skorokhod(driver, alpha, stream, 0.0).unfolded;
    }

    // Plain Brownian motion from x0 until the first grid-detected zero
    // crossing, then the unfolding takes over.  The first-passage time is
    // biased by the grid; see the module notes.
    auto path = sample_brownian(grid, stream).total;
    for (auto& v : path.values) v += x0;
    const double start_sign = x0 > 0.0 ? 1.0 : -1.0;
    std::size_t hit = path.size();
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (path[i] * start_sign <= 0.0) {
            hit = i;
            break;
        }
    }
    if (hit == path.size()) {
        return path;
    }
    const std::size_t tail_steps = grid.n_steps - hit;
    if (tail_steps == 0) {
        path[hit] = 0.0;
        return path;
    }
    TimeGrid tail_grid(grid.dt() * static_cast<double>(tail_steps), tail_steps);
    SemimartingalePath tail;
    tail.total = SamplePath(tail_grid);
    for (std::size_t j = 0; j <= tail_steps; ++j) {
        tail.total[j] = path[hit + j] - path[hit];
    }
    tail.martingale_part = tail.total;
    tail.fv_part = SamplePath(tail_grid);
    tail.qv = quadratic_variation(tail.total);
    const auto unfolded = unfold_skorokhod(tail, alpha, stream, 0.0);
    for (std::size_t j = 0; j <= tail_steps; ++j) {
        path[hit + j] = unfolded.unfolded[j];
    }
    return path;
}

SamplePath squared_bessel(double delta, double x0, const TimeGrid& grid,
                          RngStream& stream) {
    if (!(delta > 1.0 && delta < 2.0)) {
        throw ConfigError("squared_bessel: delta must lie strictly in (1, 2)");
    }
    if (x0 < 0.0) {
        throw ConfigError("squared_bessel: x0 must be >= 0");
    }
    const double dt = grid.dt();
    const double sq_dt = std::sqrt(dt);
    SamplePath out(grid);
    out[0] = x0;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        const double dw = sq_dt * stream.next_normal();
        const double next = out[i] + delta * dt + 2.0 * std::sqrt(out[i]) * dw;
        out[i + 1] = std::max(0.0, next);
    }
    return out;
}

UnfoldResult skew_bessel(const SkewBesselParams& params, const TimeGrid& grid,
                         RngStream& stream) {
    params.validate();
    const auto sq = squared_bessel(params.delta, params.x0, grid, stream);
    SamplePath folded(grid);
    for (std::size_t i = 0; i < sq.size(); ++i) folded[i] = std::sqrt(sq[i]);

    const double tol = default_fold_tolerance(grid);
    auto decomp = decompose_excursions(folded, tol);
    auto out = unfold_with_signs(folded, std::move(decomp), params.alpha, stream);
    out.input.total = folded;
    out.input.qv = quadratic_variation(folded);

    const double eps = default_bandwidth(grid);
    out.diagnostics["folded_local_time"] =
        occupation_local_time(folded, out.input.qv, eps, LocalTimeSide::right)
            .total();
    double occupation_zero = 0.0;
    for (std::size_t i = 0; i + 1 < folded.size(); ++i) {
        if (folded[i] <= tol) occupation_zero += grid.dt();
    }
    out.diagnostics["occupation_at_zero"] = occupation_zero;
    out.diagnostics["excursion_count"] =
        static_cast<double>(out.decomposition.excursion_count());
    return out;
}

BesselScale bessel_scale_maps(double x, double delta) {
    if (!(delta > 1.0 && delta < 2.0)) {
        throw ConfigError("bessel_scale_maps: delta must lie strictly in (1, 2)");
    }
    BesselScale out;
    out.g = std::pow(std::abs(x), 2.0 - delta) / (2.0 - delta);
    out.G = x > 0.0 ? out.g : (x < 0.0 ? -out.g : 0.0);
    return out;
}

OconeResult ocone_counterexample(double u, double v, const TimeGrid& grid,
                                 RngStream& stream) {
    if (!(u > 0.0) || !(v > 0.0)) {
        throw ConfigError("ocone_counterexample: u and v must be positive");
    }
    if (grid.horizon < 2.0 - 1e-12) {
        throw ConfigError("ocone_counterexample: horizon must reach t = 2");
    }
    const double dt = grid.dt();
    const double pos = 1.0 / dt;
    const auto switch_idx = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(switch_idx)) > 1e-9) {
        throw ConfigError("ocone_counterexample: t = 1 must be a grid point");
    }

    OconeResult out;
    out.u = u;
    out.v = v;
    out.path = SamplePath(grid);
    out.clock = SamplePath(grid);
    const double sq_dt = std::sqrt(dt);
    for (std::size_t i = 0; i < switch_idx; ++i) {
        out.path[i + 1] = out.path[i] + sq_dt * stream.next_normal();
        out.clock[i + 1] = grid.time(i + 1);
    }
    // The clock rate after t = 1 is decided by the sign of B(1); increments
    // are drawn with the scaled variance directly, which realizes B(A(t))
    // exactly in law with no interpolation.
    const double rate = out.path[switch_idx] > 0.0 ? u : v;
    const double sq_rate_dt = std::sqrt(rate * dt);
    for (std::size_t i = switch_idx; i + 1 < grid.size(); ++i) {
        out.path[i + 1] = out.path[i] + sq_rate_dt * stream.next_normal();
        out.clock[i + 1] = 1.0 + rate * (grid.time(i + 1) - 1.0);
    }

    out.mirror = SamplePath(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.mirror[i] = -out.path[i];
    out.levy_driver = levy_transform(out.path, SignConvention::left_continuous);
    return out;
}

namespace {

double nakao_dispersion(double y, double alpha) {
    return y > 0.0 ? 1.0 - alpha : alpha;
}

}  // namespace

NakaoResult nakao_solution(double alpha, double x0, const TimeGrid& grid,
                           RngStream& stream) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("nakao_solution: alpha must be in (0, 1)");
    }
    const double dt = grid.dt();
    const double sq_dt = std::sqrt(dt);
    const std::size_t n = grid.size();

    SamplePath b1(grid), b2(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b1[i + 1] = b1[i] + sq_dt * stream.next_normal();
        b2[i + 1] = b2[i] + sq_dt * stream.next_normal();
    }

    NakaoResult out;
    out.solution = SamplePath(grid);
    out.solution[0] = x0 > 0.0 ? (1.0 - alpha) * x0 : alpha * x0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double db = (b1[i + 1] - b1[i]) + (b2[i + 1] - b2[i]);
        out.solution[i + 1] =
            out.solution[i] + nakao_dispersion(out.solution[i], alpha) * db;
    }

    // Multiplicative inverse of the folding map: X = Y / (1-a) on {Y > 0},
    // X = Y / a on {Y <= 0}.
    out.unfolded = SamplePath(grid);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = out.solution[i];
        out.unfolded[i] = y > 0.0 ? y / (1.0 - alpha) : y / alpha;
    }

    out.driver_u = SamplePath(grid);
    out.driver_v = SamplePath(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool pos = out.unfolded[i] > 0.0;
        const double db1 = b1[i + 1] - b1[i];
        const double db2 = b2[i + 1] - b2[i];
        out.driver_u[i + 1] = out.driver_u[i] + (pos ? db1 : -db2);
        out.driver_v[i + 1] = out.driver_v[i] + (pos ? db2 : db1);
    }

    const auto sym_lt = occupation_local_time(
        out.unfolded, quadratic_variation(out.unfolded), default_bandwidth(grid),
        LocalTimeSide::symmetric);
    SamplePath signs(grid);
    for (std::size_t i = 0; i < n; ++i) {
        signs[i] = sign_of(out.unfolded[i], SignConvention::left_continuous);
    }
    const auto signed_integral = ito_integral(signs, out.driver_u);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lhs = out.unfolded[i] - x0 - signed_integral[i] -
                           out.driver_v[i] -
                           2.0 * (2.0 * alpha - 1.0) * sym_lt.values[i];
        residual = std::max(residual, std::abs(lhs));
    }
    out.residual = residual;
    out.diagnostics["perturbed_equation_residual"] = residual;
    out.diagnostics["qv_u"] = quadratic_variation(out.driver_u).back();
    out.diagnostics["qv_v"] = quadratic_variation(out.driver_v).back();
    double cross = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cross += (out.driver_u[i + 1] - out.driver_u[i]) *
                 (out.driver_v[i + 1] - out.driver_v[i]);
    }
    out.diagnostics["cross_uv"] = cross;
    return out;
}

}  // namespace skewfold
