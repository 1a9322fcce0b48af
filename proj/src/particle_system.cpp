#include "skewfold/particle_system.hpp"

#include <cmath>

#include "skewfold/local_time.hpp"
#include "skewfold/path_engine.hpp"
#include "skewfold/reflection.hpp"
#include "skewfold/statistics.hpp"

namespace skewfold {

SkewCollisionParams derive_skew_params(double zeta1, double zeta2, double eta1,
                                       double eta2) {
    SkewCollisionParams out;
    out.zeta = 1.0 + (zeta1 - zeta2) / 2.0;
    out.eta = 1.0 - (eta1 - eta2) / 2.0;
    const double denom = out.zeta + out.eta;
    if (denom == 0.0) {
        throw ConfigError("derive_skew_params: zeta + eta must be nonzero");
    }
    out.alpha = out.eta / denom;
    if (out.alpha < 0.0 || out.alpha > 1.0) {
        throw ConfigError("derive_skew_params: alpha = eta/(zeta+eta) outside [0, 1]");
    }
    out.beta = out.alpha * (zeta1 + zeta2) / 2.0 +
               (1.0 - out.alpha) * (eta1 + eta2) / 2.0;
    return out;
}

void ParticleParams::validate() const {
    if (!(rho > 0.0) || !(sigma > 0.0)) {
        throw ConfigError("ParticleParams: rho and sigma must be positive");
    }
    if (std::abs(rho * rho + sigma * sigma - 1.0) > 1e-12) {
        throw ConfigError("ParticleParams: rho^2 + sigma^2 must equal 1");
    }
    derived();  // validates zeta + eta != 0 and alpha in [0, 1]
}

SkewCollisionParams ParticleParams::derived() const {
    return derive_skew_params(zeta1, zeta2, eta1, eta2);
}

BaseSystem simulate_base(const ParticleParams& params, const TimeGrid& grid,
                         RngStream& stream) {
    params.validate();
    const double dt = grid.dt();
    const double sq_dt = std::sqrt(dt);
    const std::size_t n = grid.size();

    BaseSystem out;
    out.x1 = SamplePath(grid);
    out.x2 = SamplePath(grid);
    out.b1 = SamplePath(grid);
    out.b2 = SamplePath(grid);
    out.gap = SamplePath(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double db1 = sq_dt * stream.next_normal();
        const double db2 = sq_dt * stream.next_normal();
        out.b1[i + 1] = out.b1[i] + db1;
        out.b2[i + 1] = out.b2[i] + db2;
        const bool lead1 = out.x1[i] > out.x2[i];  // left-endpoint indicator
        const double drift1 = lead1 ? -params.h : params.g;
        const double drift2 = lead1 ? params.g : -params.h;
        const double disp1 = lead1 ? params.rho : params.sigma;
        const double disp2 = lead1 ? params.sigma : params.rho;
        out.x1[i + 1] = out.x1[i] + drift1 * dt + disp1 * db1;
        out.x2[i + 1] = out.x2[i] + drift2 * dt + disp2 * db2;
        out.gap[i + 1] = out.x1[i + 1] - out.x2[i + 1];
    }
    return out;
}

AuxiliaryBrownians auxiliary_brownians(const BaseSystem& base,
                                       const ParticleParams& params) {
    require_same_grid(base.x1, base.b1);
    const std::size_t n = base.x1.size();
    AuxiliaryBrownians out;
    const TimeGrid& grid = base.x1.grid;
    out.w = out.v = out.w1 = out.w2 = out.v1 = out.v2 = SamplePath(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double db1 = base.b1[i + 1] - base.b1[i];
        const double db2 = base.b2[i + 1] - base.b2[i];
        const bool lead1 = base.x1[i] > base.x2[i];
        const double dw1 = lead1 ? db1 : -db2;
        const double dw2 = lead1 ? -db2 : db1;
        const double dv1 = lead1 ? db1 : db2;
        const double dv2 = lead1 ? db2 : db1;
        out.w1[i + 1] = out.w1[i] + dw1;
        out.w2[i + 1] = out.w2[i] + dw2;
        out.v1[i + 1] = out.v1[i] + dv1;
        out.v2[i + 1] = out.v2[i] + dv2;
        out.w[i + 1] = out.w[i] + params.rho * dw1 + params.sigma * dw2;
        out.v[i + 1] = out.v[i] + params.rho * dv1 + params.sigma * dv2;
    }
    return out;
}

SkewSystemResult build_skew_system(const BaseSystem& base,
                                   const ParticleParams& params,
                                   RngStream& stream) {
    params.validate();
    if (!params.driftless()) {
        throw ConfigError("build_skew_system: base system must be driftless");
    }
    const TimeGrid& grid = base.x1.grid;
    const std::size_t n = base.x1.size();

    SkewSystemResult out;
    out.params = params.derived();
    const double alpha = out.params.alpha;
    const double beta = out.params.beta;
    out.aux = auxiliary_brownians(base, params);

    SemimartingalePath gap;
    gap.total = base.gap;
    gap.martingale_part = base.gap;
    gap.fv_part = SamplePath(grid);
    gap.qv = quadratic_variation(base.gap);
    out.gap_unfold = unfold_skorokhod(gap, alpha, stream, 0.0);
    const SamplePath& y = base.gap;
    const SamplePath& y_tilde = out.gap_unfold.unfolded;

    // Driver rewiring by the sign quadrant of (Y, Ytilde); ties go to the
    // "<= 0" branch, matching the indicator conventions of the base system.
    out.b1_tilde = SamplePath(grid);
    out.b2_tilde = SamplePath(grid);
    out.v_tilde = SamplePath(grid);
    out.w_tilde = SamplePath(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double db1 = base.b1[i + 1] - base.b1[i];
        const double db2 = base.b2[i + 1] - base.b2[i];
        const bool y_pos = y[i] > 0.0;
        const bool yt_pos = y_tilde[i] > 0.0;
        double db1_t, db2_t;
        if (y_pos && yt_pos) {
            db1_t = db1;
            db2_t = db2;
        } else if (!y_pos && yt_pos) {
            db1_t = -db2;
            db2_t = -db1;
        } else if (y_pos && !yt_pos) {
            db1_t = db2;
            db2_t = db1;
        } else {
            db1_t = -db1;
            db2_t = -db2;
        }
        out.b1_tilde[i + 1] = out.b1_tilde[i] + db1_t;
        out.b2_tilde[i + 1] = out.b2_tilde[i] + db2_t;
        const double lead = yt_pos ? params.rho : params.sigma;
        const double trail = yt_pos ? params.sigma : params.rho;
        out.v_tilde[i + 1] = out.v_tilde[i] + lead * db1_t + trail * db2_t;
        out.w_tilde[i + 1] = out.w_tilde[i] + lead * db1_t - trail * db2_t;
    }

    // <Ytilde> = <Y>: the unfolding only flips signs, and the realized qv of
    // the folded gap truncates moves across its zeros.
    const auto sym_lt = occupation_local_time(y_tilde, gap.qv,
                                              default_bandwidth(grid),
                                              LocalTimeSide::symmetric);
    out.sym_local_time = sym_lt.values;

    out.xi_tilde = SamplePath(grid);
    out.x1_tilde = SamplePath(grid);
    out.x2_tilde = SamplePath(grid);
    for (std::size_t i = 0; i < n; ++i) {
        out.xi_tilde[i] =
            out.v_tilde[i] + 2.0 * (1.0 - beta) * out.sym_local_time[i];
        out.x1_tilde[i] = 0.5 * (out.xi_tilde[i] + y_tilde[i]);
        out.x2_tilde[i] = 0.5 * (out.xi_tilde[i] - y_tilde[i]);
    }

    // Diagnostics.
    SamplePath sgn_yt(grid);
    for (std::size_t i = 0; i < n; ++i) {
        sgn_yt[i] = sign_of(y_tilde[i], SignConvention::left_continuous);
    }
    out.diagnostics["intertwine_residual"] =
        identity_residual(out.w_tilde, ito_integral(sgn_yt, out.aux.w));

    double res1 = 0.0, res2 = 0.0;
    SamplePath int1(grid), int2(grid);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool yt_pos = y_tilde[i] > 0.0;
        const double d1 = (yt_pos ? params.rho : params.sigma) *
                          (out.b1_tilde[i + 1] - out.b1_tilde[i]);
        const double d2 = (yt_pos ? params.sigma : params.rho) *
                          (out.b2_tilde[i + 1] - out.b2_tilde[i]);
        int1[i + 1] = int1[i] + d1;
        int2[i + 1] = int2[i] + d2;
    }
    for (std::size_t i = 0; i < n; ++i) {
        res1 = std::max(res1,
                        std::abs(out.x1_tilde[i] - int1[i] -
                                 (2.0 * alpha - beta) * out.sym_local_time[i]));
        res2 = std::max(res2,
                        std::abs(out.x2_tilde[i] - int2[i] -
                                 (2.0 - 2.0 * alpha - beta) * out.sym_local_time[i]));
    }
    out.diagnostics["skew_sde_residual_1"] = res1;
    out.diagnostics["skew_sde_residual_2"] = res2;

    const auto gap_reflection = skorokhod_reflect(base.gap);
    out.diagnostics["gap_identity_residual"] = identity_residual(
        conventional_reflect(y_tilde), gap_reflection.reflected);
    double diff_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diff_res = std::max(diff_res, std::abs(out.x1_tilde[i] - out.x2_tilde[i] -
                                               y_tilde[i]));
    }
    out.diagnostics["difference_identity_residual"] = diff_res;
    return out;
}

}  // namespace skewfold
