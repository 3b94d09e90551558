#include "rmrun/channel.hpp"

#include <bit>

#include "rmrun/errors.hpp"

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace rmrun {

namespace {

std::uint64_t pext64(std::uint64_t value, std::uint64_t mask) {
#if defined(__BMI2__)
    return _pext_u64(value, mask);
#else
    std::uint64_t out = 0;
    int k = 0;
    while (mask) {
        std::uint64_t low = mask & -mask;
        if (value & low) out |= std::uint64_t{1} << k;
        ++k;
        mask &= mask - 1;
    }
    return out;
#endif
}

bool is_half(double q) { return q == 0.5; }

}  // namespace

BitSeq apply_mask(const BitSeq& x, const BitSeq& mask) {
    if (x.length() != mask.length()) {
        throw InvalidParameter("apply_mask: mask length does not match sequence length");
    }
    auto xb = x.blocks();
    auto mb = mask.blocks();
    std::vector<std::uint64_t> out((x.length() + 63) / 64 + 1, 0);
    std::size_t pos = 0;  // bits emitted so far
    for (std::size_t b = 0; b < xb.size(); ++b) {
        std::size_t nb = std::min<std::size_t>(64, x.length() - b * 64);
        std::uint64_t tail = nb == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << nb) - 1);
        std::uint64_t keep = ~mb[b] & tail;
        std::uint64_t t = pext64(xb[b], keep);
        int L = std::popcount(keep);
        out[pos >> 6] |= t << (pos & 63);
        if ((pos & 63) && L > static_cast<int>(64 - (pos & 63))) {
            out[(pos >> 6) + 1] |= t >> (64 - (pos & 63));
        }
        pos += L;
    }
    out.resize((pos + 63) / 64);
    return BitSeq::from_blocks(std::move(out), pos);
}

Channel::Channel(const ChannelConfig& cfg) : cfg_(cfg), rng_(cfg.seed, cfg.stream_id) {
    if (!(cfg.q >= 0.0 && cfg.q <= 1.0)) {
        throw InvalidParameter("Channel: q must lie in [0, 1]");
    }
}

BitSeq Channel::sample_mask(std::size_t n, std::uint64_t draw) const {
    std::vector<std::uint64_t> blocks((n + 63) / 64, 0);
    if (cfg_.q >= 1.0) {
        for (auto& b : blocks) b = ~std::uint64_t{0};
    } else if (cfg_.q <= 0.0) {
        // all zeros
    } else if (is_half(cfg_.q)) {
        // One fair random word per block of 64 positions.
        for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] = rng_.word(draw, b);
    } else {
        auto threshold = static_cast<std::uint64_t>(
            static_cast<long double>(cfg_.q) * 18446744073709551616.0L);
        for (std::size_t i = 0; i < n; ++i) {
            if (rng_.word(draw, i + 1) < threshold) {
                blocks[i >> 6] |= std::uint64_t{1} << (i & 63);
            }
        }
    }
    return BitSeq::from_blocks(std::move(blocks), n);
}

BitSeq Channel::sample_trace(const BitSeq& x, std::uint64_t draw) const {
    return apply_mask(x, sample_mask(x.length(), draw));
}

TraceBatch Channel::sample_batch(const BitSeq& x, std::uint64_t k, bool nonempty_only,
                                 std::uint64_t start_draw, std::uint64_t retry_budget) const {
    TraceBatch batch;
    batch.traces.reserve(k);
    std::uint64_t draw = start_draw;
    std::uint64_t wasted = 0;
    while (batch.traces.size() < k) {
        BitSeq t = sample_trace(x, draw++);
        ++batch.channel_uses;
        if (nonempty_only && t.empty()) {
            if (++wasted > retry_budget) {
                throw ChannelDegenerate("sample_batch: retry budget exhausted collecting non-empty traces");
            }
            continue;
        }
        batch.traces.push_back(std::move(t));
    }
    batch.next_draw = draw;
    return batch;
}

RunSampler::RunSampler(const BitSeq& x, CounterRng rng)
    : blocks_(x.blocks().begin(), x.blocks().end()), n_(x.length()), rng_(rng) {}

TraceStats RunSampler::sample(std::uint64_t draw) const {
    TraceStats st;
    bool have_prev = false;
    bool prev_bit = false;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        std::size_t nb = std::min<std::size_t>(64, n_ - b * 64);
        std::uint64_t tail = nb == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << nb) - 1);
        std::uint64_t keep = ~rng_.word(draw, b) & tail;
        int L = std::popcount(keep);
        if (L == 0) continue;
        std::uint64_t t = pext64(blocks_[b], keep);
        std::uint64_t tmask =
            L == 64 ? 0x7fffffffffffffffULL : (std::uint64_t{1} << (L - 1)) - 1;
        std::uint64_t transitions = (t ^ (t >> 1)) & tmask;
        std::uint32_t r = static_cast<std::uint32_t>(std::popcount(transitions)) + 1;
        bool first = t & 1;
        bool last = (t >> (L - 1)) & 1;
        if (!have_prev) {
            st.first_bit = first;
            st.runs = r;
            have_prev = true;
        } else {
            st.runs += r - (first == prev_bit ? 1 : 0);
        }
        prev_bit = last;
        st.length += static_cast<std::uint32_t>(L);
    }
    return st;
}

}  // namespace rmrun
