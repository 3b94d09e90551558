#include "rmrun/bitseq.hpp"

#include <bit>

#include "rmrun/errors.hpp"

namespace rmrun {

namespace {
std::size_t block_count(std::size_t n) { return (n + 63) / 64; }
}  // namespace

void BitSeq::mask_tail() {
    if (n_ & 63) {
        blocks_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }
}

BitSeq::BitSeq(std::vector<bool> bits) : n_(bits.size()) {
    blocks_.assign(block_count(n_), 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (bits[i]) blocks_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
}

BitSeq BitSeq::from_string(std::string_view s) {
    BitSeq x;
    x.n_ = s.size();
    x.blocks_.assign(block_count(x.n_), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            x.blocks_[i >> 6] |= std::uint64_t{1} << (i & 63);
        } else if (s[i] != '0') {
            throw InvalidFormat("BitSeq::from_string: character other than 0/1");
        }
    }
    return x;
}

BitSeq BitSeq::from_blocks(std::vector<std::uint64_t> blocks, std::size_t n) {
    if (blocks.size() != block_count(n)) {
        throw InvalidParameter("BitSeq::from_blocks: block count does not match length");
    }
    BitSeq x;
    x.blocks_ = std::move(blocks);
    x.n_ = n;
    x.mask_tail();
    return x;
}

std::size_t BitSeq::weight() const {
    std::size_t w = 0;
    for (auto b : blocks_) w += std::popcount(b);
    return w;
}

std::vector<std::uint32_t> BitSeq::support() const {
    std::vector<std::uint32_t> s;
    s.reserve(weight());
    for (std::size_t i = 1; i <= n_; ++i) {
        if (bit(i)) s.push_back(static_cast<std::uint32_t>(i));
    }
    return s;
}

std::vector<std::uint32_t> BitSeq::cosupport() const {
    std::vector<std::uint32_t> s;
    s.reserve(n_ - weight());
    for (std::size_t i = 1; i <= n_; ++i) {
        if (!bit(i)) s.push_back(static_cast<std::uint32_t>(i));
    }
    return s;
}

RunCounts BitSeq::count_runs() const {
    RunCounts rc;
    if (n_ == 0) return rc;
    bool prev = bit(1);
    (prev ? rc.ones : rc.zeros) += 1;
    for (std::size_t i = 2; i <= n_; ++i) {
        bool cur = bit(i);
        if (cur != prev) {
            (cur ? rc.ones : rc.zeros) += 1;
            prev = cur;
        }
    }
    rc.total = rc.zeros + rc.ones;
    return rc;
}

BitSeq BitSeq::complement() const {
    BitSeq x;
    x.n_ = n_;
    x.blocks_.reserve(blocks_.size());
    for (auto b : blocks_) x.blocks_.push_back(~b);
    x.mask_tail();
    return x;
}

BitSeq BitSeq::concat(const BitSeq& other) const {
    BitSeq x;
    x.n_ = n_ + other.n_;
    x.blocks_.assign(block_count(x.n_), 0);
    for (std::size_t i = 0; i < blocks_.size(); ++i) x.blocks_[i] = blocks_[i];
    std::size_t shift = n_ & 63;
    std::size_t base = n_ >> 6;
    for (std::size_t i = 0; i < other.blocks_.size(); ++i) {
        std::uint64_t b = other.blocks_[i];
        x.blocks_[base + i] |= b << shift;
        if (shift && base + i + 1 < x.blocks_.size()) {
            x.blocks_[base + i + 1] |= b >> (64 - shift);
        }
    }
    return x;
}

std::string BitSeq::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 1; i <= n_; ++i) {
        if (bit(i)) s[i - 1] = '1';
    }
    return s;
}

bool operator<(const BitSeq& a, const BitSeq& b) {
    std::size_t m = std::min(a.n_, b.n_);
    for (std::size_t i = 1; i <= m; ++i) {
        bool ai = a.bit(i), bi = b.bit(i);
        if (ai != bi) return bi;
    }
    return a.n_ < b.n_;
}

bool is_subsequence(const BitSeq& t, const BitSeq& x) {
    std::size_t j = 1;
    for (std::size_t i = 1; i <= t.length(); ++i) {
        while (j <= x.length() && x.bit(j) != t.bit(i)) ++j;
        if (j > x.length()) return false;
        ++j;
    }
    return true;
}

}  // namespace rmrun
