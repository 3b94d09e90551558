#include "rmrun/rmcode.hpp"

#include <algorithm>
#include <bit>

#include "rmrun/errors.hpp"

namespace rmrun {

BitSeq rm_encode(int m, bool u0, const std::vector<bool>& u) {
    if (m < 1) throw InvalidParameter("rm_encode: m must be >= 1");
    if (u.size() != static_cast<std::size_t>(m)) {
        throw InvalidParameter("rm_encode: coefficient vector must have length m");
    }
    std::size_t n = std::size_t{1} << m;
    std::uint64_t umask = 0;  // bit m-1 of z is z1 (most significant evaluation point bit)
    for (int i = 0; i < m; ++i) {
        if (u[i]) umask |= std::uint64_t{1} << (m - 1 - i);
    }
    std::vector<bool> bits(n);
    for (std::size_t z = 0; z < n; ++z) {
        bits[z] = u0 ^ (std::popcount(z & umask) & 1);
    }
    return BitSeq(bits);
}

RMCodebook RMCodebook::build(int m, int max_m) {
    if (m < 1) throw InvalidParameter("RMCodebook: m must be >= 1");
    if (m > max_m) throw ResourceLimit("RMCodebook: m exceeds configured maximum");

    RMCodebook book;
    book.m_ = m;
    std::size_t count = std::size_t{2} << m;
    book.codewords_.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        // idx = (u0, u1, ..., um) read as a binary number, u0 most significant.
        bool u0 = (idx >> m) & 1;
        std::vector<bool> u(m);
        for (int i = 0; i < m; ++i) u[i] = (idx >> (m - 1 - i)) & 1;
        book.codewords_.push_back(rm_encode(m, u0, u));
    }

    // Independent route: RM(1,1) = F_2^2, then RM(j,1) = {x||x} u {x||x~}.
    std::vector<BitSeq> rec = {BitSeq::from_string("00"), BitSeq::from_string("01"),
                               BitSeq::from_string("10"), BitSeq::from_string("11")};
    for (int j = 2; j <= m; ++j) {
        std::vector<BitSeq> next;
        next.reserve(rec.size() * 2);
        for (const auto& x : rec) next.push_back(x.hat());
        for (const auto& x : rec) next.push_back(x.check());
        rec = std::move(next);
    }
    std::vector<BitSeq> a = book.codewords_;
    std::sort(a.begin(), a.end());
    std::sort(rec.begin(), rec.end());
    if (a != rec) {
        throw std::logic_error("RMCodebook: evaluation and recursive constructions disagree");
    }
    return book;
}

}  // namespace rmrun
