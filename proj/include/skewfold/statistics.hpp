#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skewfold/types.hpp"

namespace skewfold {

struct McSummary {
    std::size_t n_samples = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double ci_halfwidth = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Normal-approximation summary; requires at least two samples.
McSummary mc_estimate(const std::vector<double>& samples, double confidence = 0.99);

/// Sup-norm of the pointwise difference between two paths on a shared grid.
double identity_residual(const SamplePath& lhs, const SamplePath& rhs);

/// Fraction of samples strictly positive, with a binomial standard error.
McSummary sign_occupation(const std::vector<double>& values_at_t);

double median(std::vector<double> samples);

/// Run `task(stream_id)` for stream ids 0..n_paths-1 across `n_workers`
/// threads.  Results land in a vector indexed by stream id, so aggregates
/// are identical for any worker count.
std::vector<double> run_batch(std::size_t n_paths, std::size_t n_workers,
                              const std::function<double(std::uint64_t)>& task);

std::vector<std::vector<double>> run_batch_vec(
    std::size_t n_paths, std::size_t n_workers,
    const std::function<std::vector<double>(std::uint64_t)>& task);

}  // namespace skewfold
