#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rmrun/bitseq.hpp"
#include "rmrun/dyadic.hpp"

namespace rmrun {

/// The q = 1/2 coefficient quadruple of a sequence of length n:
/// alpha/delta weight index pairs by (1/2)^(j-i) over same-set and
/// cross-set pairs respectively; beta/gamma use exponent n-(j-i).
struct CoefficientSet {
    std::size_t n = 0;
    Dyadic alpha;
    Dyadic beta;
    Dyadic gamma;
    Dyadic delta;

    friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

template <typename Num>
struct ExpectedRuns {
    Num zeros{};
    Num ones{};
    Num total{};
};

/// sum over i < j, both in S, of q^(j-i); S holds 1-based indices <= n.
/// Computed by the prefix recurrence t_j = q * (t_{j-1} + [j-1 in S]).
Rational pair_sum(const std::vector<std::uint32_t>& S, const Rational& q, std::size_t n);
Dyadic pair_sum_half(const std::vector<std::uint32_t>& S, std::size_t n);

/// Exact expected run counts of a trace for rational q in (0,1).
/// Throws InvalidParameter for q outside (0,1).
ExpectedRuns<Rational> expected_runs(const BitSeq& x, const Rational& q);

/// q = 1/2 specialization; exact dyadic values.
ExpectedRuns<Dyadic> expected_runs_half(const BitSeq& x);

/// Exact q = 1/2 coefficients, computed in one O(n) pass.
CoefficientSet coefficients(const BitSeq& x);

/// Closed forms a(n) = n - 2 + (1/2)^(n-1) and b(n) = 2 - (n+1)(1/2)^(n-1),
/// the length-only totals alpha + delta and beta + gamma.
std::pair<Dyadic, Dyadic> an_bn(std::size_t n);

/// Doubling step: coefficients of x||x and x||x~ from those of x. The
/// delta of each doubled sequence is recovered from delta = a(2n) - alpha.
std::pair<CoefficientSet, CoefficientSet> coefficient_recursion(const CoefficientSet& c);

}  // namespace rmrun
