#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmrun/bitseq.hpp"

namespace rmrun {

/// All 2^(m+1) codewords of RM(m,1), in canonical order: lexicographic by
/// the coefficient tuple (u0, u1, ..., um). Since the first bit of a
/// codeword equals u0, the first half of the list is exactly the
/// first-bit-0 codewords.
class RMCodebook {
  public:
    /// Builds the codebook both by polynomial evaluation and by the
    /// doubling recursion, and verifies the two agree as sets.
    /// Throws InvalidParameter for m < 1, ResourceLimit for m > max_m.
    static RMCodebook build(int m, int max_m = 20);

    int m() const { return m_; }
    std::size_t blocklength() const { return std::size_t{1} << m_; }

    const std::vector<BitSeq>& codewords() const { return codewords_; }

    /// Codewords whose first bit equals b, in canonical order.
    std::span<const BitSeq> first_bit_half(bool b) const {
        std::size_t half = codewords_.size() / 2;
        return {codewords_.data() + (b ? half : 0), half};
    }

  private:
    int m_ = 0;
    std::vector<BitSeq> codewords_;
};

/// Evaluation vector of u0 + u1*x1 + ... + um*xm over all z in F_2^m in
/// standard lexicographic order (z1 most significant). u has length m.
/// Throws InvalidParameter for m < 1 or |u| != m.
BitSeq rm_encode(int m, bool u0, const std::vector<bool>& u);

}  // namespace rmrun
