#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skewfold/rng.hpp"
#include "skewfold/types.hpp"

namespace skewfold {

/// Half-open index range [first, last) of grid points forming one excursion.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t length() const { return last - first; }
};

/// Zero set and maximal excursion intervals of a nonnegative path, with the
/// per-excursion signs once drawn.  Grid points in the zero set keep sign 0.
struct ExcursionDecomposition {
    std::vector<bool> zero_mask;        // true on the zero set
    std::vector<IndexRange> intervals;  // disjoint, in time order
    std::vector<int> signs;             // +1/-1 per interval; empty until drawn
    SamplePath sign_path;               // Z: +/-1 on excursions, 0 on the zero set
    double tol = 0.0;

    std::size_t excursion_count() const { return intervals.size(); }
};

/// Skew-unfolded path together with its building blocks and the residuals of
/// the identities it is supposed to satisfy.
struct UnfoldResult {
    SemimartingalePath input;      // U
    SamplePath folded;             // S (Skorokhod) or R (conventional)
    ExcursionDecomposition decomposition;
    SamplePath unfolded;           // X = Z * folded
    double alpha = 0.0;
    std::map<std::string, double> diagnostics;
};

/// Split a nonnegative path into maximal runs above `tol` (the excursions)
/// and their complement (the zero set).  Throws DomainError if the path dips
/// below -tol.
ExcursionDecomposition decompose_excursions(const SamplePath& folded, double tol);

/// Attach one independent Bernoulli(alpha) sign per excursion, consumed from
/// the stream in time order, and form X = Z * S.
UnfoldResult unfold_with_signs(const SamplePath& folded,
                               ExcursionDecomposition decomposition, double alpha,
                               RngStream& stream);

/// Same, with the signs forced (for deterministic tests).
UnfoldResult unfold_forced_signs(const SamplePath& folded,
                                 ExcursionDecomposition decomposition, double alpha,
                                 const std::vector<int>& signs);

/// Skorokhod-reflect U, then skew-unfold the reflection.  The skew-Tanaka
/// residual against an estimated local time is filled in by the caller-facing
/// scenario code; here the diagnostics carry the exact pathwise checks.
UnfoldResult unfold_skorokhod(const SemimartingalePath& input, double alpha,
                              RngStream& stream, double tol = 0.0);

/// Fold U conventionally (R = |U|), unfold the excursions of R, and record
/// the sup-norm distance between R and the Skorokhod reflection of the Levy
/// transform of U (diagnostic "levy_reflection_gap").
UnfoldResult unfold_conventional(const SemimartingalePath& input, double alpha,
                                 RngStream& stream, double tol);

/// Default zero-detection tolerance for paths whose zeros are only
/// approximate on a grid (conventional reflections, Bessel paths).
double default_fold_tolerance(const TimeGrid& grid);

}  // namespace skewfold
