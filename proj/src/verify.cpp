#include "rmrun/verify.hpp"

#include <algorithm>
#include <bit>

#include "rmrun/errors.hpp"
#include "rmrun/rmcode.hpp"
#include "rmrun/rng.hpp"

namespace rmrun {

ExpectedRuns<Rational> brute_force_expected_runs(const BitSeq& x, const Rational& q) {
    std::size_t n = x.length();
    if (n > 20) throw ResourceLimit("brute_force_expected_runs: length over the 2^20 mask guard");
    if (!(q > 0 && q < 1)) throw InvalidParameter("brute_force_expected_runs: q must lie in (0, 1)");

    std::uint32_t bits = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (x.bit(i)) bits |= std::uint32_t{1} << (i - 1);
    }
    // Per-weight integer totals of run counts over all masks.
    std::vector<BigInt> zero_runs(n + 1, 0), one_runs(n + 1, 0);
    std::uint64_t masks = std::uint64_t{1} << n;
    for (std::uint64_t omega = 0; omega < masks; ++omega) {
        std::uint32_t keep = static_cast<std::uint32_t>(~omega) & ((masks - 1) & 0xffffffffu);
        if (n == 0) keep = 0;
        std::uint32_t t = 0;
        int L = std::popcount(keep);
        // compress kept bits of x
        std::uint32_t src = bits, m = keep;
        int k = 0;
        while (m) {
            std::uint32_t low = m & -m;
            if (src & low) t |= std::uint32_t{1} << k;
            ++k;
            m &= m - 1;
        }
        if (L > 0) {
            std::uint32_t lmask = (L == 32) ? 0xffffffffu : ((std::uint32_t{1} << L) - 1);
            std::uint32_t ones_starts = t & ~(t << 1) & lmask;
            std::uint32_t zero_starts = ~t & ((t << 1) | 1u) & lmask;
            int w = std::popcount(static_cast<std::uint32_t>(omega));
            one_runs[w] += std::popcount(ones_starts);
            zero_runs[w] += std::popcount(zero_starts);
        }
    }
    ExpectedRuns<Rational> r;
    Rational qw = 1;  // q^w
    for (std::size_t w = 0; w <= n; ++w) {
        Rational pw = qw;
        for (std::size_t i = 0; i < n - w; ++i) pw *= (1 - q);
        r.zeros += pw * Rational(zero_runs[w]);
        r.ones += pw * Rational(one_runs[w]);
        qw *= q;
    }
    r.total = r.zeros + r.ones;
    return r;
}

const std::vector<Table1Row>& table1_rows() {
    static const std::vector<Table1Row> rows = {
        {"0000000000000000", "458753/32768", "65519/32768", "0"},
        {"0000000011111111", "769/64", "247/16384", "65025/32768"},
        {"0000111100001111", "8929/1024", "1811/8192", "58275/32768"},
        {"0000111111110000", "336353/32768", "57869/32768", "3825/16384"},
        {"0011001100110011", "23593/4096", "655/1024", "44559/32768"},
        {"0011001111001100", "212153/32768", "44369/32768", "10575/16384"},
        {"0011110000111100", "251033/32768", "41939/32768", "5895/8192"},
        {"0011110011000011", "29101/4096", "11857/16384", "41805/32768"},
        {"0101010101010101", "36409/8192", "7279/8192", "36403/32768"},
        {"0101010110101010", "152861/32768", "36341/32768", "14589/16384"},
        {"0101101001011010", "164861/32768", "35591/32768", "3741/4096"},
        {"0101101010100101", "39809/8192", "14983/16384", "35553/32768"},
        {"0110011001100110", "175637/32768", "34067/32768", "7863/8192"},
        {"0110011010011001", "43259/8192", "15733/16384", "34053/32768"},
        {"0110100101101001", "42179/8192", "3967/4096", "33783/32768"},
        {"0110100110010110", "170741/32768", "33761/32768", "15879/16384"},
    };
    return rows;
}

Table1Report check_table1() {
    Table1Report report;
    for (const auto& row : table1_rows()) {
        CoefficientSet c = coefficients(BitSeq::from_string(row.codeword));
        auto check = [&](const std::string& field, const std::string& expected, const Dyadic& actual) {
            ++report.values_checked;
            if (actual != Dyadic::parse(expected)) {
                report.mismatches.push_back({row.codeword, field, expected, actual.to_string()});
            }
        };
        check("alpha", row.alpha, c.alpha);
        check("beta", row.beta, c.beta);
        check("gamma", row.gamma, c.gamma);
    }
    report.pass = report.mismatches.empty();
    return report;
}

Dyadic tail_sum(std::size_t n) {
    Dyadic s;
    for (std::size_t k = 16; k <= n / 2; ++k) {
        s += Dyadic(static_cast<long>(k)) * Dyadic::pow2_inv(k);
    }
    return s;
}

const ConditionMargin& ConditionReport::margin(const std::string& name) const {
    for (const auto& m : margins) {
        if (m.name == name) return m;
    }
    throw InvalidParameter("ConditionReport: no margin named " + name);
}

namespace {

struct MinTracker {
    bool seen = false;
    Dyadic value;
    PairWitness witness;

    void offer(const Dyadic& v, const BitSeq& x, const BitSeq& y) {
        if (!seen || v < value) {
            seen = true;
            value = v;
            witness = {x.to_string(), y.to_string()};
        }
    }
    void offer(const Dyadic& v, const BitSeq& x) {
        if (!seen || v < value) {
            seen = true;
            value = v;
            witness = {x.to_string(), {}};
        }
    }
};

}  // namespace

ConditionReport check_conditions(int m, const ConditionScanOptions& opts) {
    if (m < 2 || m > opts.max_m) {
        throw InvalidParameter("check_conditions: m out of configured range");
    }
    ConditionReport report;
    report.m = m;
    report.outside_paper_guarantee = m < 4;

    RMCodebook book = RMCodebook::build(m);
    std::size_t n = book.blocklength();

    std::vector<bool> halves;
    if (opts.half.has_value()) {
        halves = {*opts.half};
    } else {
        halves = {false, true};
    }

    MinTracker c1, c2, c3, c4;
    for (bool half_bit : halves) {
        auto half = book.first_bit_half(half_bit);
        std::vector<CoefficientSet> cs(half.size());
        for (std::size_t i = 0; i < half.size(); ++i) cs[i] = coefficients(half[i]);

        for (std::size_t i = 0; i < half.size(); ++i) {
            c4.offer((cs[i].beta - cs[i].gamma).abs(), half[i]);
        }

        auto offer_pair = [&](std::size_t i, std::size_t j) {
            Dyadic da = (cs[i].alpha - cs[j].alpha).abs();
            c1.offer(da, half[i], half[j]);
            c2.offer(da - (cs[i].beta - cs[j].beta).abs(), half[i], half[j]);
            // |beta_x - gamma_y| = |beta_y - gamma_x|, so one orientation suffices.
            c3.offer(da - (cs[i].beta - cs[j].gamma).abs(), half[i], half[j]);
        };

        if (opts.sample_pairs.has_value()) {
            report.sampled = true;
            CounterRng rng(opts.seed, half_bit ? 1 : 0);
            std::uint64_t count = *opts.sample_pairs;
            for (std::uint64_t s = 0; s < count; ++s) {
                std::size_t i = rng.below(s, 0, half.size());
                std::size_t j = rng.below(s, 1, half.size() - 1);
                if (j >= i) ++j;
                offer_pair(i, j);
                ++report.pairs_checked;
            }
        } else {
            for (std::size_t i = 0; i < half.size(); ++i) {
                for (std::size_t j = i + 1; j < half.size(); ++j) {
                    offer_pair(i, j);
                    ++report.pairs_checked;
                }
            }
        }
    }

    Rational six_hundredths(6, 100);
    Rational tail = tail_sum(n).to_rational();
    Rational c1_rhs = six_hundredths - 3 * tail;
    Rational c3_rhs = six_hundredths - 4 * tail;
    Rational c4_rhs = c1_rhs;

    auto add = [&](const std::string& name, const MinTracker& t, const Rational& rhs) {
        ConditionMargin cm;
        cm.name = name;
        cm.margin = t.value;
        cm.required = rhs.str();
        cm.pass = t.seen && t.value.to_rational() >= rhs;
        cm.witness = t.witness;
        report.margins.push_back(cm);
    };
    add("C1", c1, c1_rhs);
    add("C2", c2, Rational(0));
    add("C3", c3, c3_rhs);
    add("C4", c4, c4_rhs);

    // Expected-run-count gap: E[R] = (n - alpha)/2, so the gap is half the
    // alpha gap. Checked against the stated 0.028 and the derived 0.0285.
    MinTracker er;
    er.seen = c1.seen;
    er.value = c1.value.mul_pow2(-1);
    er.witness = c1.witness;
    add("ER_gap_0.028", er, Rational(28, 1000));
    add("ER_gap_0.0285", er, Rational(285, 10000));
    add("alpha_gap_0.057", c1, Rational(57, 1000));

    report.all_pass = true;
    for (const auto& cm : report.margins) {
        // The 0.0285 gap is recorded alongside the stated 0.028 but does
        // not gate the verdict.
        if (cm.name == "ER_gap_0.0285") continue;
        report.all_pass = report.all_pass && cm.pass;
    }
    return report;
}

std::vector<IdentityCheck> identity_suite(const BitSeq& x, const BitSeq& y) {
    if (x.length() != y.length()) {
        throw InvalidParameter("identity_suite: sequences must have equal length");
    }
    std::size_t n = x.length();
    CoefficientSet cx = coefficients(x);
    CoefficientSet cy = coefficients(y);
    auto [a, b] = n >= 1 ? an_bn(n) : std::pair<Dyadic, Dyadic>{Dyadic(), Dyadic()};

    Dyadic nn(static_cast<long>(n));
    std::vector<IdentityCheck> checks;
    auto add = [&](const std::string& name, bool pass) { checks.push_back({name, pass}); };
    add("alpha_plus_delta_is_a(n)", cx.alpha + cx.delta == a && cy.alpha + cy.delta == a);
    add("beta_plus_gamma_is_b(n)", cx.beta + cx.gamma == b && cy.beta + cy.gamma == b);
    add("abs_alpha_diff_le_n", (cx.alpha - cy.alpha).abs() <= nn);
    add("abs_alpha_minus_delta_le_n", (cx.alpha - cy.delta).abs() <= nn);
    add("abs_beta_diff_le_2", (cx.beta - cy.beta).abs() <= Dyadic(2));
    add("abs_beta_minus_gamma_le_2", (cx.beta - cy.gamma).abs() <= Dyadic(2));
    add("beta_diff_negates_gamma_diff", cx.beta - cy.beta == -(cx.gamma - cy.gamma));
    add("alpha_diff_negates_delta_diff", cx.alpha - cy.alpha == -(cx.delta - cy.delta));
    add("beta_gamma_cross_symmetry",
        (cx.beta - cy.gamma).abs() == (cy.beta - cx.gamma).abs());
    return checks;
}

}  // namespace rmrun
