#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmrun/bitseq.hpp"
#include "rmrun/dyadic.hpp"
#include "rmrun/runstats.hpp"

namespace rmrun {

/// Expectation oracle that sums count_runs over all 2^n deletion masks,
/// weighted by q^w(1-q)^(n-w); independent of the closed-form path.
/// Throws ResourceLimit for |x| > 20, InvalidParameter for q outside (0,1).
ExpectedRuns<Rational> brute_force_expected_runs(const BitSeq& x, const Rational& q);

struct Table1Row {
    std::string codeword;
    std::string alpha;
    std::string beta;
    std::string gamma;
};

struct Table1Mismatch {
    std::string codeword;
    std::string field;
    std::string expected;
    std::string actual;
};

struct Table1Report {
    bool pass = false;
    std::size_t values_checked = 0;
    std::vector<Table1Mismatch> mismatches;
};

/// The 16 first-bit-0 codewords of RM(4,1) with their published
/// alpha/beta/gamma values (embedded as literal text, not recomputed).
const std::vector<Table1Row>& table1_rows();

/// Recomputes every alpha/beta/gamma of the embedded table and compares
/// exactly.
Table1Report check_table1();

/// Finite tail sum over k in [16, n/2] of k * (1/2)^k; zero when n < 32.
Dyadic tail_sum(std::size_t n);

struct PairWitness {
    std::string x;
    std::string y;  // empty for per-codeword conditions
};

struct ConditionMargin {
    std::string name;
    Dyadic margin;         // exact minimum over the scan
    std::string required;  // exact rational bound, as text
    bool pass = false;
    PairWitness witness;
};

struct ConditionReport {
    int m = 0;
    bool sampled = false;
    std::uint64_t pairs_checked = 0;
    bool outside_paper_guarantee = false;  // m in {2, 3}
    std::vector<ConditionMargin> margins;  // C1..C4, ER gap, alpha gap
    bool all_pass = false;

    const ConditionMargin& margin(const std::string& name) const;
};

struct ConditionScanOptions {
    /// Scan pairs within this first-bit half only; nullopt scans both.
    std::optional<bool> half;
    /// Number of random pairs per half instead of a full scan.
    std::optional<std::uint64_t> sample_pairs;
    std::uint64_t seed = 0;
    int max_m = 8;
};

/// Scans same-first-bit codeword pairs of RM(m,1) and reports exact
/// minima for conditions (C1)-(C4), the expected-run-count gap against
/// 0.028 (and 0.0285), and the 0.057 alpha-gap bound.
ConditionReport check_conditions(int m, const ConditionScanOptions& opts = {});

struct IdentityCheck {
    std::string name;
    bool pass = false;
};

/// Exact coefficient identities and bounds for a pair of equal-length
/// sequences. Throws InvalidParameter on length mismatch.
std::vector<IdentityCheck> identity_suite(const BitSeq& x, const BitSeq& y);

}  // namespace rmrun
