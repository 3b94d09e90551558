#include "rmrun/reconstruct.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "rmrun/errors.hpp"
#include "rmrun/runstats.hpp"

namespace rmrun {

SamplePlan plan_sample_sizes(std::size_t n, double c, double delta) {
    if (n < 16) throw InvalidParameter("plan_sample_sizes: n must be >= 16");
    if (!(c > 0)) throw InvalidParameter("plan_sample_sizes: c must be positive");
    if (!(delta > 0)) throw InvalidParameter("plan_sample_sizes: delta must be positive");
    double ln_n = std::log(static_cast<double>(n));
    SamplePlan plan;
    plan.ell = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(288.0 * c * ln_n)));
    double k = (2.0 * c / (delta * delta)) * static_cast<double>(n) * static_cast<double>(n) * ln_n;
    plan.k = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(k)));
    return plan;
}

CodebookRunStats CodebookRunStats::build(int m, int max_m) {
    CodebookRunStats stats;
    stats.book_ = RMCodebook::build(m, max_m);
    const auto& cws = stats.book_.codewords();
    std::vector<Dyadic> exact(cws.size());
    for (std::size_t i = 0; i < cws.size(); ++i) {
        exact[i] = expected_runs_half(cws[i]).total;
        stats.expected_.push_back(exact[i].to_float().first);
    }
    // Separation precondition for Step 2, re-checked exactly in the
    // range where it is known to hold.
    if (m >= 4 && m <= 6) {
        Rational gap(28, 1000);
        std::size_t half = cws.size() / 2;
        for (std::size_t h = 0; h < 2; ++h) {
            for (std::size_t i = h * half; i < (h + 1) * half; ++i) {
                for (std::size_t j = i + 1; j < (h + 1) * half; ++j) {
                    if ((exact[i] - exact[j]).abs().to_rational() < gap) {
                        throw std::logic_error(
                            "CodebookRunStats: expected-run separation below 0.028");
                    }
                }
            }
        }
    }
    return stats;
}

bool step1_first_bit(std::span<const BitSeq> traces, std::uint64_t ell) {
    if (ell < 1 || traces.size() < ell) {
        throw InvalidParameter("step1_first_bit: fewer traces than ell");
    }
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < ell; ++i) {
        if (traces[i].empty()) {
            throw InvalidParameter("step1_first_bit: empty trace in the voting set");
        }
        if (traces[i].bit(1)) ++ones;
    }
    return 2 * ones > ell;  // strict majority; ties give 0
}

namespace {

std::size_t nearest_in_half(const CodebookRunStats& stats, bool b, double rbar) {
    const auto& exp = stats.expected_total_runs();
    std::size_t half = exp.size() / 2;
    std::size_t base = b ? half : 0;
    std::size_t best = base;
    double best_d = std::abs(exp[base] - rbar);
    for (std::size_t i = 1; i < half; ++i) {
        double d = std::abs(exp[base + i] - rbar);
        if (d < best_d) {  // strict: earlier canonical codeword wins ties
            best_d = d;
            best = base + i;
        }
    }
    return best;
}

}  // namespace

BitSeq step2_nearest(std::span<const BitSeq> traces, const CodebookRunStats& stats, bool b) {
    if (traces.empty()) throw InvalidParameter("step2_nearest: empty trace list");
    std::uint64_t total = 0;
    for (const auto& t : traces) total += t.count_runs().total;
    double rbar = static_cast<double>(total) / static_cast<double>(traces.size());
    return stats.codebook().codewords()[nearest_in_half(stats, b, rbar)];
}

BitSeq reconstruct_codeword(std::span<const BitSeq> traces, int m, std::uint64_t ell) {
    if (m < 4) throw UnsupportedParameter("reconstruct_codeword: m must be >= 4");
    if (traces.empty()) throw InvalidParameter("reconstruct_codeword: no traces given");
    CodebookRunStats stats = CodebookRunStats::build(m);
    bool b = step1_first_bit(traces, std::min<std::uint64_t>(ell, traces.size()));
    return step2_nearest(traces, stats, b);
}

namespace {

struct TrialResult {
    std::uint8_t outcome = 0;  // 0 success, 1 step-1 error, 2 step-2 error
    std::uint64_t channel_uses = 0;
    double abs_dev = 0.0;
};

TrialResult run_trial(const ExperimentConfig& cfg, const CodebookRunStats& stats,
                      std::uint64_t trial) {
    const auto& cws = stats.codebook().codewords();
    CounterRng rng(cfg.seed, trial);

    std::size_t xi;
    switch (cfg.selection) {
        case CodewordSelection::All:
            xi = trial % cws.size();
            break;
        case CodewordSelection::RandomPerTrial:
            xi = rng.below(~std::uint64_t{0}, 0, cws.size());
            break;
        case CodewordSelection::Fixed:
        default:
            xi = 0;
            break;
    }
    const BitSeq& x = (cfg.selection == CodewordSelection::Fixed) ? *cfg.fixed_x : cws[xi];

    RunSampler sampler(x, rng);
    TrialResult res;
    std::uint64_t collected = 0, ones_in_vote = 0, run_total = 0, draw = 0;
    const std::uint64_t retry_budget = std::uint64_t{1} << 24;
    std::uint64_t wasted = 0;
    while (collected < cfg.k) {
        TraceStats st = sampler.sample(draw++);
        ++res.channel_uses;
        if (st.length == 0) {
            if (++wasted > retry_budget) {
                throw ChannelDegenerate("run_experiment: retry budget exhausted");
            }
            continue;
        }
        if (collected < cfg.ell && st.first_bit) ++ones_in_vote;
        run_total += st.runs;
        ++collected;
    }

    bool b = 2 * ones_in_vote > cfg.ell;
    double rbar = static_cast<double>(run_total) / static_cast<double>(cfg.k);
    std::size_t zi = nearest_in_half(stats, b, rbar);

    const BitSeq& z = cws[zi];
    if (z != x) {
        res.outcome = (b != x.bit(1)) ? 1 : 2;
    }

    // deviation from the true codeword's expectation
    double ex = 0.0;
    if (cfg.selection == CodewordSelection::Fixed) {
        ex = expected_runs_half(x).total.to_float().first;
    } else {
        ex = stats.expected_total_runs()[xi];
    }
    res.abs_dev = std::abs(rbar - ex);
    return res;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::uint64_t trials) {
    if (cfg.m < 4) throw UnsupportedParameter("run_experiment: m must be >= 4");
    if (cfg.ell < 1 || cfg.k < cfg.ell) {
        throw InvalidParameter("run_experiment: need 1 <= ell <= k");
    }
    if (cfg.selection == CodewordSelection::Fixed && !cfg.fixed_x.has_value()) {
        throw InvalidParameter("run_experiment: Fixed selection requires fixed_x");
    }
    auto t0 = std::chrono::steady_clock::now();
    CodebookRunStats stats = CodebookRunStats::build(cfg.m);

    std::vector<TrialResult> results(trials);
    unsigned threads = std::max(1u, cfg.threads);
    if (threads <= 1 || trials < 2) {
        for (std::uint64_t t = 0; t < trials; ++t) results[t] = run_trial(cfg, stats, t);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t t = w; t < trials; t += threads) {
                    results[t] = run_trial(cfg, stats, t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    ExperimentReport rep;
    rep.m = cfg.m;
    rep.ell = cfg.ell;
    rep.k = cfg.k;
    rep.seed = cfg.seed;
    switch (cfg.selection) {
        case CodewordSelection::All: rep.selection = "all"; break;
        case CodewordSelection::RandomPerTrial: rep.selection = "random-per-trial"; break;
        case CodewordSelection::Fixed: rep.selection = "fixed"; break;
    }
    rep.trials = trials;
    rep.trial_outcomes.reserve(trials);
    double dev_sum = 0.0;
    for (const auto& r : results) {  // fixed order: independent of thread count
        rep.trial_outcomes.push_back(r.outcome);
        rep.channel_uses += r.channel_uses;
        dev_sum += r.abs_dev;
        if (r.outcome == 0) ++rep.successes;
        else if (r.outcome == 1) ++rep.step1_errors;
        else ++rep.step2_errors;
    }
    rep.mean_abs_dev = trials ? dev_sum / static_cast<double>(trials) : 0.0;
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace rmrun
