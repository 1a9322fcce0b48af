#pragma once

#include <cstdint>

namespace skewfold {

/// Counter-based, splittable pseudorandom stream.
///
/// Each draw is a stateless mix of (master_seed, stream_id, counter), so a
/// stream is reproducible from its key alone and distinct stream ids give
/// statistically independent sequences regardless of scheduling.  The mixer
/// is the SplitMix64 finalizer applied to the keyed counter.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed), stream_id_(stream_id) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Next raw 64-bit word.
    std::uint64_t next_u64();

    /// Uniform draw in the open interval (0, 1).
    double next_uniform();

    /// Standard normal draw via the inverse-CDF (Wichura AS241) method.
    double next_normal();

    /// Bernoulli(p) draw as +1 / -1.
    int next_sign(double p_plus);

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
};

/// Double-precision inverse of the standard normal CDF (Wichura's AS241).
double normal_inv_cdf(double p);

}  // namespace skewfold
