#pragma once

#include <cstdint>

namespace rmrun {

/// SplitMix64 finalizer (Steele/Lea/Flood; constants due to Vigna).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator keyed by (seed, stream). Every output word is a
/// pure function of (key, draw, idx), so draws can be evaluated in any
/// order and on any number of workers with identical results.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(splitmix64_mix(splitmix64_mix(seed) ^
                              splitmix64_mix(stream ^ 0x6a09e667f3bcc909ULL))) {}

    /// Derives a sub-stream (e.g. per trial) from this one.
    CounterRng split(std::uint64_t substream) const {
        CounterRng r = *this;
        r.key_ = splitmix64_mix(key_ ^ splitmix64_mix(substream + 0x3c6ef372fe94f82bULL));
        return r;
    }

    std::uint64_t word(std::uint64_t draw, std::uint64_t idx) const {
        return splitmix64_mix(key_ + draw * 0x9e3779b97f4a7c15ULL + idx * 0xd1b54a32d192ed03ULL);
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t draw, std::uint64_t idx, std::uint64_t bound) const {
        // 128-bit multiply rejection-free reduction (Lemire); bias < 2^-64.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(word(draw, idx)) * bound) >> 64);
    }

  private:
    std::uint64_t key_;
};

}  // namespace rmrun
