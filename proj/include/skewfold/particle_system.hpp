#pragma once

#include <map>
#include <string>

#include "skewfold/excursion.hpp"
#include "skewfold/types.hpp"

namespace skewfold {

/// Derived skewness parameters of the asymmetric-collision system.
struct SkewCollisionParams {
    double alpha = 0.5;
    double beta = 1.0;
    double zeta = 1.0;  // 1 + (zeta1 - zeta2)/2
    double eta = 1.0;   // 1 - (eta1 - eta2)/2
};

struct ParticleParams {
    double rho = 0.0, sigma = 0.0;  // dispersions, rho^2 + sigma^2 = 1
    double g = 0.0, h = 0.0;        // drifts
    double zeta1 = 1.0, zeta2 = 1.0, eta1 = 1.0, eta2 = 1.0;

    void validate() const;
    SkewCollisionParams derived() const;
    bool driftless() const { return g == 0.0 && h == 0.0; }
};

SkewCollisionParams derive_skew_params(double zeta1, double zeta2, double eta1,
                                       double eta2);

/// Rank-switched base diffusion started at (0, 0), with its drivers and gap.
struct BaseSystem {
    SamplePath x1, x2;
    SamplePath b1, b2;  // driving planar Brownian motion
    SamplePath gap;     // Y = X1 - X2
};

BaseSystem simulate_base(const ParticleParams& params, const TimeGrid& grid,
                         RngStream& stream);

/// The indicator-spliced Brownian motions of the driftless base system.
/// W reproduces the gap exactly on the grid.
struct AuxiliaryBrownians {
    SamplePath w, v;
    SamplePath w1, w2, v1, v2;
};

AuxiliaryBrownians auxiliary_brownians(const BaseSystem& base,
                                       const ParticleParams& params);

/// Full output of the skew-elastic-collision construction.
struct SkewSystemResult {
    AuxiliaryBrownians aux;
    UnfoldResult gap_unfold;          // Ytilde = unfolded gap
    SamplePath b1_tilde, b2_tilde;    // rewired drivers
    SamplePath v_tilde, w_tilde;
    SamplePath sym_local_time;        // estimated symmetric local time of Ytilde
    SamplePath xi_tilde;              // Vtilde + 2(1 - beta) Lhat
    SamplePath x1_tilde, x2_tilde;
    SkewCollisionParams params;
    std::map<std::string, double> diagnostics;
};

/// Unfold the gap into a skew Brownian motion, rewire the drivers by the
/// four sign cases of (Y, Ytilde), and assemble the skew system.  The base
/// system must be driftless.
SkewSystemResult build_skew_system(const BaseSystem& base,
                                   const ParticleParams& params,
                                   RngStream& stream);

}  // namespace skewfold
