#include "skewfold/excursion.hpp"

#include <cmath>

#include "skewfold/path_engine.hpp"
#include "skewfold/reflection.hpp"
#include "skewfold/statistics.hpp"

namespace skewfold {

double default_fold_tolerance(const TimeGrid& grid) {
    return std::sqrt(grid.dt()) / 4.0;
}

ExcursionDecomposition decompose_excursions(const SamplePath& folded, double tol) {
    if (tol < 0.0) {
        throw ConfigError("decompose_excursions: tolerance must be >= 0");
    }
    ExcursionDecomposition out;
    out.tol = tol;
    out.zero_mask.assign(folded.size(), true);
    out.sign_path = SamplePath(folded.grid);

    bool open = false;
    IndexRange current;
    for (std::size_t i = 0; i < folded.size(); ++i) {
        const double v = folded[i];
        if (v < -tol) {
            throw DomainError("decompose_excursions: path is significantly negative");
        }
        if (v > tol) {
            out.zero_mask[i] = false;
            if (!open) {
                open = true;
                current.first = i;
            }
            current.last = i + 1;
        } else if (open) {
            out.intervals.push_back(current);
            open = false;
        }
    }
    if (open) {
        out.intervals.push_back(current);
    }
    return out;
}

namespace {

UnfoldResult assemble(const SamplePath& folded, ExcursionDecomposition decomp,
                      double alpha) {
    for (std::size_t k = 0; k < decomp.intervals.size(); ++k) {
        const auto& iv = decomp.intervals[k];
        for (std::size_t i = iv.first; i < iv.last; ++i) {
            decomp.sign_path[i] = static_cast<double>(decomp.signs[k]);
        }
    }
    UnfoldResult out;
    out.folded = folded;
    out.alpha = alpha;
    out.unfolded = SamplePath(folded.grid);
    for (std::size_t i = 0; i < folded.size(); ++i) {
        out.unfolded[i] = decomp.sign_path[i] * folded[i];
    }
    out.decomposition = std::move(decomp);
    out.diagnostics["abs_matches_folded"] =
        identity_residual(conventional_reflect(out.unfolded), folded);
    return out;
}

}  // namespace

UnfoldResult unfold_with_signs(const SamplePath& folded,
                               ExcursionDecomposition decomposition, double alpha,
                               RngStream& stream) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("unfold_with_signs: alpha must be in (0, 1)");
    }
    decomposition.signs.resize(decomposition.intervals.size());
    for (auto& s : decomposition.signs) {
        s = stream.next_sign(alpha);
    }
    return assemble(folded, std::move(decomposition), alpha);
}

UnfoldResult unfold_forced_signs(const SamplePath& folded,
                                 ExcursionDecomposition decomposition, double alpha,
                                 const std::vector<int>& signs) {
    if (signs.size() != decomposition.intervals.size()) {
        throw DomainError("unfold_forced_signs: one sign per excursion required");
    }
    decomposition.signs = signs;
    return assemble(folded, std::move(decomposition), alpha);
}

UnfoldResult unfold_skorokhod(const SemimartingalePath& input, double alpha,
                              RngStream& stream, double tol) {
    if (input.total.values.empty() || input.total.values.front() != 0.0) {
        throw DomainError("unfold_skorokhod: driver must start at 0");
    }
    auto reflection = skorokhod_reflect(input.total);
    auto decomp = decompose_excursions(reflection.reflected, tol);
    auto out = unfold_with_signs(reflection.reflected, std::move(decomp), alpha, stream);
    out.input = input;

    // C grows only where S sits at (or within tol of) zero.
    double flatness = 0.0;
    for (std::size_t i = 0; i + 1 < reflection.reflected.size(); ++i) {
        const double dc = reflection.pushing[i + 1] - reflection.pushing[i];
        if (dc > 0.0 && reflection.reflected[i + 1] > tol) {
            flatness = std::max(flatness, dc);
        }
    }
    out.diagnostics["pushing_growth_off_zero_set"] = flatness;
    return out;
}

UnfoldResult unfold_conventional(const SemimartingalePath& input, double alpha,
                                 RngStream& stream, double tol) {
    auto folded = conventional_reflect(input.total);
    auto decomp = decompose_excursions(folded, tol);
    auto out = unfold_with_signs(folded, std::move(decomp), alpha, stream);
    out.input = input;

    // |U| coincides with the Skorokhod reflection of the Levy transform of U
    // in the refinement limit; record the gap at this resolution.
    auto levy = levy_transform(input.total, SignConvention::symmetric);
    auto levy_reflection = skorokhod_reflect(levy);
    out.diagnostics["levy_reflection_gap"] =
        identity_residual(folded, levy_reflection.reflected);
    return out;
}

}  // namespace skewfold
