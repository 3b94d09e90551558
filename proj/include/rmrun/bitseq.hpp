#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmrun {

/// Counts of maximal blocks of equal symbols in a sequence.
struct RunCounts {
    std::size_t zeros = 0;
    std::size_t ones = 0;
    std::size_t total = 0;

    friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

/// An immutable finite binary sequence, stored packed (64 positions per
/// word, position i at word i/64, bit i%64). Positions are 1-based in the
/// public interface; the empty sequence is a valid value.
class BitSeq {
  public:
    BitSeq() = default;

    explicit BitSeq(std::vector<bool> bits);

    /// Parses an ASCII string over {0,1}; leftmost character is position 1.
    /// Throws InvalidFormat on any other character.
    static BitSeq from_string(std::string_view s);

    /// Builds a sequence of length n from pre-packed words.
    static BitSeq from_blocks(std::vector<std::uint64_t> blocks, std::size_t n);

    std::size_t length() const { return n_; }
    bool empty() const { return n_ == 0; }

    /// Symbol at 1-based position i (1 <= i <= length()).
    bool bit(std::size_t i) const {
        return (blocks_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u;
    }

    /// Hamming weight.
    std::size_t weight() const;

    /// 1-based positions of 1s, ascending.
    std::vector<std::uint32_t> support() const;
    /// 1-based positions of 0s, ascending.
    std::vector<std::uint32_t> cosupport() const;

    RunCounts count_runs() const;

    BitSeq complement() const;
    BitSeq concat(const BitSeq& other) const;
    /// x followed by x.
    BitSeq hat() const { return concat(*this); }
    /// x followed by its complement.
    BitSeq check() const { return concat(complement()); }

    std::string to_string() const;

    std::span<const std::uint64_t> blocks() const { return blocks_; }

    friend bool operator==(const BitSeq& a, const BitSeq& b) {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }
    /// Lexicographic by position; shorter prefix first.
    friend bool operator<(const BitSeq& a, const BitSeq& b);

  private:
    std::vector<std::uint64_t> blocks_;
    std::size_t n_ = 0;

    void mask_tail();
};

/// True iff t is a (not necessarily contiguous) subsequence of x.
bool is_subsequence(const BitSeq& t, const BitSeq& x);

}  // namespace rmrun
