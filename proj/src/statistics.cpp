#include "skewfold/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "skewfold/rng.hpp"

namespace skewfold {

McSummary mc_estimate(const std::vector<double>& samples, double confidence) {
    if (samples.size() < 2) {
        throw ConfigError("mc_estimate: need at least two samples");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ConfigError("mc_estimate: confidence must be in (0, 1)");
    }
    McSummary out;
    out.n_samples = samples.size();
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    out.min = samples.front();
    out.max = samples.front();
    for (double s : samples) {
        sum += s;
        out.min = std::min(out.min, s);
        out.max = std::max(out.max, s);
    }
    out.mean = sum / n;
    double ss = 0.0;
    for (double s : samples) {
        const double d = s - out.mean;
        ss += d * d;
    }
    out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    const double z = normal_inv_cdf(0.5 + confidence / 2.0);
    out.ci_halfwidth = z * out.std_error;
    return out;
}

double identity_residual(const SamplePath& lhs, const SamplePath& rhs) {
    require_same_grid(lhs, rhs);
    double sup = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        sup = std::max(sup, std::abs(lhs[i] - rhs[i]));
    }
    return sup;
}

McSummary sign_occupation(const std::vector<double>& values_at_t) {
    if (values_at_t.size() < 2) {
        throw ConfigError("sign_occupation: need at least two samples");
    }
    McSummary out;
    out.n_samples = values_at_t.size();
    const double n = static_cast<double>(values_at_t.size());
    double positives = 0.0;
    for (double v : values_at_t) {
        if (v > 0.0) positives += 1.0;
    }
    const double p = positives / n;
    out.mean = p;
    out.min = 0.0;
    out.max = 1.0;
    out.std_error = std::sqrt(p * (1.0 - p) / n);
    out.ci_halfwidth = 3.0 * out.std_error;
    return out;
}

double median(std::vector<double> samples) {
    if (samples.empty()) {
        throw ConfigError("median: empty sample set");
    }
    const std::size_t mid = samples.size() / 2;
    std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
    double hi = samples[mid];
    if (samples.size() % 2 == 1) return hi;
    std::nth_element(samples.begin(), samples.begin() + mid - 1,
                     samples.begin() + mid);
    return 0.5 * (samples[mid - 1] + hi);
}

std::vector<std::vector<double>> run_batch_vec(
    std::size_t n_paths, std::size_t n_workers,
    const std::function<std::vector<double>(std::uint64_t)>& task) {
    if (n_workers == 0) {
        n_workers = std::max(1u, std::thread::hardware_concurrency());
    }
    n_workers = std::min(n_workers, n_paths);
    std::vector<std::vector<double>> results(n_paths);
    // Work stealing over stream ids; results are slotted by id, so the
    // aggregate is independent of which worker ran which path.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t id = next.fetch_add(1);
            if (id >= n_paths) break;
            results[id] = task(static_cast<std::uint64_t>(id));
        }
    };
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return results;
}

std::vector<double> run_batch(std::size_t n_paths, std::size_t n_workers,
                              const std::function<double(std::uint64_t)>& task) {
    auto nested = run_batch_vec(n_paths, n_workers, [&](std::uint64_t id) {
        return std::vector<double>{task(id)};
    });
    std::vector<double> out(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) out[i] = nested[i][0];
    return out;
}

}  // namespace skewfold
