#include "rmrun/runstats.hpp"

#include "rmrun/errors.hpp"

namespace rmrun {

namespace {
std::vector<bool> indicator(const std::vector<std::uint32_t>& S, std::size_t n) {
    std::vector<bool> ind(n + 1, false);
    for (auto i : S) {
        if (i < 1 || i > n) throw InvalidParameter("pair_sum: index outside [1, n]");
        ind[i] = true;
    }
    return ind;
}
}  // namespace

Rational pair_sum(const std::vector<std::uint32_t>& S, const Rational& q, std::size_t n) {
    auto ind = indicator(S, n);
    Rational t = 0, total = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        t = q * (t + (j >= 2 && ind[j - 1] ? 1 : 0));
        if (ind[j]) total += t;
    }
    return total;
}

Dyadic pair_sum_half(const std::vector<std::uint32_t>& S, std::size_t n) {
    auto ind = indicator(S, n);
    Dyadic t, total;
    for (std::size_t j = 1; j <= n; ++j) {
        if (j >= 2 && ind[j - 1]) t += Dyadic(1);
        t = t.mul_pow2(-1);
        if (ind[j]) total += t;
    }
    return total;
}

ExpectedRuns<Rational> expected_runs(const BitSeq& x, const Rational& q) {
    if (!(q > 0 && q < 1)) {
        throw InvalidParameter("expected_runs: q must lie in (0, 1)");
    }
    std::size_t n = x.length();
    Rational w = x.weight();
    Rational p = 1 - q;
    Rational ratio = p / q;
    ExpectedRuns<Rational> r;
    r.zeros = p * (Rational(n) - w - ratio * pair_sum(x.cosupport(), q, n));
    r.ones = p * (w - ratio * pair_sum(x.support(), q, n));
    r.total = r.zeros + r.ones;
    return r;
}

ExpectedRuns<Dyadic> expected_runs_half(const BitSeq& x) {
    std::size_t n = x.length();
    long w = static_cast<long>(x.weight());
    ExpectedRuns<Dyadic> r;
    r.zeros = (Dyadic(static_cast<long>(n) - w) - pair_sum_half(x.cosupport(), n)).mul_pow2(-1);
    r.ones = (Dyadic(w) - pair_sum_half(x.support(), n)).mul_pow2(-1);
    r.total = r.zeros + r.ones;
    return r;
}

CoefficientSet coefficients(const BitSeq& x) {
    std::size_t n = x.length();
    CoefficientSet c;
    c.n = n;
    // Prefix sums over i < j: t_s = sum (1/2)^(j-i), v_s = sum 2^(j-i),
    // split by the symbol at position i.
    Dyadic t0, t1;
    BigInt v0 = 0, v1 = 0;
    BigInt beta_num = 0, gamma_num = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        if (j >= 2) {
            if (x.bit(j - 1)) {
                t1 += Dyadic(1);
                v1 += 1;
            } else {
                t0 += Dyadic(1);
                v0 += 1;
            }
        }
        t0 = t0.mul_pow2(-1);
        t1 = t1.mul_pow2(-1);
        v0 <<= 1;
        v1 <<= 1;
        if (x.bit(j)) {
            c.alpha += t1;
            c.delta += t0;
            beta_num += v1;
            gamma_num += v0;
        } else {
            c.alpha += t0;
            c.delta += t1;
            beta_num += v0;
            gamma_num += v1;
        }
    }
    c.beta = Dyadic(beta_num, n);
    c.gamma = Dyadic(gamma_num, n);
    return c;
}

std::pair<Dyadic, Dyadic> an_bn(std::size_t n) {
    if (n < 1) throw InvalidParameter("an_bn: n must be >= 1");
    Dyadic tail = Dyadic::pow2_inv(n - 1);
    Dyadic a = Dyadic(static_cast<long>(n) - 2) + tail;
    Dyadic b = Dyadic(2) - Dyadic(static_cast<long>(n) + 1) * tail;
    return {a, b};
}

std::pair<CoefficientSet, CoefficientSet> coefficient_recursion(const CoefficientSet& c) {
    if (c.n < 1) throw InvalidParameter("coefficient_recursion: length must be >= 1");
    std::size_t n = c.n;
    Dyadic p = Dyadic::pow2_inv(n);
    Dyadic p1 = Dyadic::pow2_inv(n - 1);
    Dyadic np = Dyadic(static_cast<long>(n)) * p;
    Dyadic a2n = an_bn(2 * n).first;

    CoefficientSet hat, chk;
    hat.n = chk.n = 2 * n;
    hat.alpha = c.alpha.mul_pow2(1) + c.beta + p * c.alpha + np;
    chk.alpha = c.alpha.mul_pow2(1) + c.gamma + p * c.delta;
    hat.beta = c.beta + p1 * c.beta + p * c.alpha + np;
    chk.beta = c.gamma + p1 * c.beta + p * c.delta;
    hat.gamma = c.gamma + p1 * c.gamma + p * c.delta;
    chk.gamma = c.beta + p1 * c.gamma + p * c.alpha + np;
    hat.delta = a2n - hat.alpha;
    chk.delta = a2n - chk.alpha;
    return {hat, chk};
}

}  // namespace rmrun
