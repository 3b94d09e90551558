#pragma once

#include <cstdint>
#include <vector>

#include "rmrun/bitseq.hpp"
#include "rmrun/rng.hpp"

namespace rmrun {

/// i.i.d. deletion channel parameters. q is the per-bit deletion
/// probability; (seed, stream_id) key the counter-based generator so a
/// given draw index always yields the same mask.
struct ChannelConfig {
    double q = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Extracts the trace: keeps x_j for every position j where mask_j = 0.
/// Throws InvalidParameter on length mismatch.
BitSeq apply_mask(const BitSeq& x, const BitSeq& mask);

struct TraceStats {
    std::uint32_t length = 0;
    std::uint32_t runs = 0;
    bool first_bit = false;
};

struct TraceBatch {
    std::vector<BitSeq> traces;
    std::uint64_t channel_uses = 0;
    std::uint64_t next_draw = 0;
};

class Channel {
  public:
    explicit Channel(const ChannelConfig& cfg);

    const ChannelConfig& config() const { return cfg_; }
    const CounterRng& rng() const { return rng_; }

    /// Deletion mask (1 = deleted) for the given draw index.
    BitSeq sample_mask(std::size_t n, std::uint64_t draw) const;

    BitSeq sample_trace(const BitSeq& x, std::uint64_t draw) const;

    /// Draws k traces starting at draw index start_draw. With nonempty_only
    /// set, empty traces are discarded and sampling continues until k
    /// non-empty traces are collected; channel_uses counts every channel
    /// invocation. Throws ChannelDegenerate once retry_budget extra draws
    /// have produced nothing.
    TraceBatch sample_batch(const BitSeq& x, std::uint64_t k, bool nonempty_only = true,
                            std::uint64_t start_draw = 0,
                            std::uint64_t retry_budget = 1u << 20) const;

  private:
    ChannelConfig cfg_;
    CounterRng rng_;
};

/// Streams per-trace run statistics of q = 1/2 traces of a fixed input
/// without materializing the traces. One 64-bit word of randomness per
/// 64 input bits; agrees bit-for-bit with Channel::sample_trace at the
/// same (rng, draw).
class RunSampler {
  public:
    RunSampler(const BitSeq& x, CounterRng rng);

    TraceStats sample(std::uint64_t draw) const;

  private:
    std::vector<std::uint64_t> blocks_;
    std::size_t n_;
    CounterRng rng_;
};

}  // namespace rmrun
