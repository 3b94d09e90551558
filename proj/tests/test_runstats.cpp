#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmrun/errors.hpp"
#include "rmrun/rng.hpp"
#include "rmrun/runstats.hpp"

using namespace rmrun;

namespace {
BitSeq random_seq(const CounterRng& rng, std::uint64_t draw, std::size_t n) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = rng.word(draw, i) & 1;
    return BitSeq(bits);
}
}  // namespace

TEST_CASE("pair_sum examples") {
    Rational half(1, 2);
    CHECK(pair_sum({1, 2}, half, 2) == half);
    CHECK(pair_sum({}, half, 4) == 0);
    CHECK(pair_sum({3}, half, 4) == 0);
    CHECK(pair_sum({1, 2, 3}, half, 3) == Rational(5, 4));
    CHECK(pair_sum_half({1, 2, 3}, 3) == Dyadic::parse("5/4"));
    CHECK(pair_sum_half({1, 2}, 2) == Dyadic::parse("1/2"));
}

TEST_CASE("pair_sum matches direct double sum") {
    CounterRng rng(21, 0);
    for (std::uint64_t d = 0; d < 50; ++d) {
        std::size_t n = 1 + rng.below(d, 0, 60);
        BitSeq x = random_seq(rng, d, n);
        auto S = x.support();
        Rational q(1 + rng.below(d, 1, 9), 10);
        Rational direct = 0;
        for (std::size_t a = 0; a < S.size(); ++a) {
            for (std::size_t b = a + 1; b < S.size(); ++b) {
                Rational term = 1;
                for (std::uint32_t e = 0; e < S[b] - S[a]; ++e) term *= q;
                direct += term;
            }
        }
        CHECK(pair_sum(S, q, n) == direct);
    }
}

TEST_CASE("expected_runs examples") {
    auto e1 = expected_runs_half(BitSeq::from_string("0"));
    CHECK(e1.zeros == Dyadic::parse("1/2"));
    CHECK(e1.ones.is_zero());

    CHECK(expected_runs_half(BitSeq::from_string("00")).zeros == Dyadic::parse("3/4"));

    auto e2 = expected_runs_half(BitSeq::from_string("01"));
    CHECK(e2.zeros == Dyadic::parse("1/2"));
    CHECK(e2.ones == Dyadic::parse("1/2"));
    CHECK(e2.total == Dyadic(1));

    BitSeq zeros16 = BitSeq::from_string("0000000000000000");
    CHECK(expected_runs_half(zeros16).total == Dyadic::parse("65535/65536"));

    CHECK_THROWS_AS(expected_runs(zeros16, Rational(1)), InvalidParameter);
    CHECK_THROWS_AS(expected_runs(zeros16, Rational(0)), InvalidParameter);
}

TEST_CASE("coefficients examples") {
    CoefficientSet c = coefficients(BitSeq::from_string("01"));
    CHECK(c.alpha.is_zero());
    CHECK(c.beta.is_zero());
    CHECK(c.gamma == Dyadic::parse("1/2"));
    CHECK(c.delta == Dyadic::parse("1/2"));

    CoefficientSet r2 = coefficients(BitSeq::from_string("0000000011111111"));
    CHECK(r2.alpha == Dyadic::parse("769/64"));
    CHECK(r2.beta == Dyadic::parse("247/16384"));
    CHECK(r2.gamma == Dyadic::parse("65025/32768"));

    CoefficientSet last = coefficients(BitSeq::from_string("0110100110010110"));
    CHECK(last.alpha == Dyadic::parse("170741/32768"));
    CHECK(last.beta == Dyadic::parse("33761/32768"));
    CHECK(last.gamma == Dyadic::parse("15879/16384"));
}

TEST_CASE("a(n) and b(n) closed forms") {
    CHECK(an_bn(1) == std::pair{Dyadic(), Dyadic()});
    CHECK(an_bn(2) == std::pair{Dyadic::parse("1/2"), Dyadic::parse("1/2")});
    CHECK(an_bn(16) == std::pair{Dyadic::parse("458753/32768"), Dyadic::parse("65519/32768")});
    CHECK_THROWS_AS(an_bn(0), InvalidParameter);

    // closed form vs defining sum
    for (std::size_t n : {2u, 3u, 7u, 33u}) {
        Dyadic a_sum, b_sum;
        for (std::size_t k = 1; k <= n - 1; ++k) {
            a_sum += Dyadic(static_cast<long>(n - k)) * Dyadic::pow2_inv(k);
            b_sum += Dyadic(static_cast<long>(k)) * Dyadic::pow2_inv(k);
        }
        auto [a, b] = an_bn(n);
        CHECK(a == a_sum);
        CHECK(b == b_sum);
    }
}

TEST_CASE("coefficient_recursion examples") {
    CoefficientSet c = coefficients(BitSeq::from_string("01"));
    auto [hat, chk] = coefficient_recursion(c);
    CHECK(hat.alpha == Dyadic::parse("1/2"));
    CHECK(chk.alpha == Dyadic::parse("5/8"));
    CHECK(hat == coefficients(BitSeq::from_string("0101")));
    CHECK(chk == coefficients(BitSeq::from_string("0110")));

    // all-zeros: hat is all-zeros of double the length, so alpha must hit a(2n)
    for (std::size_t n : {4u, 9u, 16u}) {
        BitSeq z(std::vector<bool>(n, false));
        auto [h, k2] = coefficient_recursion(coefficients(z));
        CHECK(h.alpha == an_bn(2 * n).first);
        (void)k2;
    }
}

TEST_CASE("recursion agrees with direct coefficients on random input") {
    CounterRng rng(31, 0);
    for (std::uint64_t d = 0; d < 60; ++d) {
        std::size_t n = 1 + rng.below(d, 0, 128);
        BitSeq x = random_seq(rng, d, n);
        auto [hat, chk] = coefficient_recursion(coefficients(x));
        CHECK(hat == coefficients(x.hat()));
        CHECK(chk == coefficients(x.check()));
    }
}

TEST_CASE("coefficient invariants") {
    CounterRng rng(32, 0);
    for (std::uint64_t d = 0; d < 80; ++d) {
        std::size_t n = 1 + rng.below(d, 0, 200);
        BitSeq x = random_seq(rng, d, n);
        CoefficientSet c = coefficients(x);
        auto [a, b] = an_bn(n);
        CHECK(c.alpha + c.delta == a);
        CHECK(c.beta + c.gamma == b);
        CHECK(c.alpha.sign() >= 0);
        CHECK(c.beta.sign() >= 0);
        CHECK(c.gamma.sign() >= 0);
        CHECK(c.delta.sign() >= 0);
        CHECK(c.alpha <= Dyadic(static_cast<long>(n)));
        CHECK(c.beta <= Dyadic(2));
        CHECK(c.gamma <= Dyadic(2));

        // complement invariance
        CHECK(coefficients(x.complement()) == c);

        // at q = 1/2: E[R_x] = (n - alpha) / 2
        CHECK(expected_runs_half(x).total ==
              (Dyadic(static_cast<long>(n)) - c.alpha).mul_pow2(-1));
    }
}

TEST_CASE("general-q expectations stay within [0, (1-q)n]") {
    CounterRng rng(33, 0);
    for (std::uint64_t d = 0; d < 40; ++d) {
        std::size_t n = 1 + rng.below(d, 0, 40);
        BitSeq x = random_seq(rng, d, n);
        Rational q(1 + rng.below(d, 1, 9), 10);
        auto er = expected_runs(x, q);
        Rational cap = (1 - q) * Rational(n);
        CHECK(er.zeros >= 0);
        CHECK(er.ones >= 0);
        CHECK(er.total <= cap);
        CHECK(er.total == er.zeros + er.ones);
    }
}
