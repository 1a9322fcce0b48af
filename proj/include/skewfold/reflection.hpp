#pragma once

#include "skewfold/types.hpp"

namespace skewfold {

/// Result of the Skorokhod map: S = U + C with C the running maximum of -U.
struct ReflectionResult {
    SamplePath reflected;  // S >= 0
    SamplePath pushing;    // C nondecreasing, C[0] = 0, flat off {S = 0}
};

/// Skorokhod reflection about the origin.  Requires U[0] = 0.
ReflectionResult skorokhod_reflect(const SamplePath& path);

/// Conventional reflection R = |U|.
SamplePath conventional_reflect(const SamplePath& path);

enum class SignConvention {
    symmetric,        // sgn(0) = 0
    left_continuous,  // sgn(0) = -1
};

double sign_of(double x, SignConvention convention);

/// Levy transform: integral of the chosen signum of U against dU.
/// With the symmetric convention the discrete transform loses mass at exact
/// zeros, so |U| equals the Skorokhod reflection of the transform only in the
/// grid-refinement limit.
SamplePath levy_transform(const SamplePath& path, SignConvention convention);

}  // namespace skewfold
