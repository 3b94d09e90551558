#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmrun/bitseq.hpp"
#include "rmrun/channel.hpp"
#include "rmrun/rmcode.hpp"

namespace rmrun {

struct SamplePlan {
    std::uint64_t ell = 1;  // Step-1 trace count
    std::uint64_t k = 1;    // total trace count
};

/// Smallest integers with e^(-ell/288) <= n^(-c) and
/// 2 e^(-k delta^2 / (2 n^2)) <= 2 n^(-c), clamped to >= 1:
/// ell = ceil(288 c ln n), k = ceil((2c/delta^2) n^2 ln n).
SamplePlan plan_sample_sizes(std::size_t n, double c, double delta = 0.028);

/// RM(m,1) codebook with each codeword's exact expected total run count
/// at q = 1/2, converted to double once for the Step-2 scan.
class CodebookRunStats {
  public:
    static CodebookRunStats build(int m, int max_m = 20);

    const RMCodebook& codebook() const { return book_; }
    /// Expected total runs, aligned with codebook canonical order.
    const std::vector<double>& expected_total_runs() const { return expected_; }

  private:
    RMCodebook book_;
    std::vector<double> expected_;
};

/// Step 1: majority vote on the first symbols of the first ell traces;
/// an exact half (or any non-strict majority of 1s) yields 0.
/// Throws InvalidParameter when fewer than ell traces are given or a
/// voting trace is empty.
bool step1_first_bit(std::span<const BitSeq> traces, std::uint64_t ell);

/// Step 2: the codeword with first bit b whose expected run count is
/// nearest the empirical mean total run count; ties break to the earlier
/// canonical codeword. Throws InvalidParameter on an empty trace list.
BitSeq step2_nearest(std::span<const BitSeq> traces, const CodebookRunStats& stats, bool b);

/// Step 1 on the first ell traces, then Step 2 over all of them.
/// Throws UnsupportedParameter for m < 4 and InvalidParameter for an
/// empty or too-short trace list.
BitSeq reconstruct_codeword(std::span<const BitSeq> traces, int m, std::uint64_t ell);

enum class CodewordSelection { All, RandomPerTrial, Fixed };

struct ExperimentConfig {
    int m = 4;
    std::uint64_t ell = 1;
    std::uint64_t k = 1;
    std::uint64_t seed = 0;
    CodewordSelection selection = CodewordSelection::RandomPerTrial;
    std::optional<BitSeq> fixed_x;  // required for Fixed
    unsigned threads = 1;           // trial partitioning only; results identical
};

struct ExperimentReport {
    int m = 0;
    std::uint64_t ell = 0;
    std::uint64_t k = 0;
    std::uint64_t seed = 0;
    std::string selection;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t step1_errors = 0;
    std::uint64_t step2_errors = 0;
    std::uint64_t channel_uses = 0;
    double mean_abs_dev = 0.0;  // average |Rbar - E[R_x]| over trials
    double wall_ms = 0.0;
    std::vector<std::uint8_t> trial_outcomes;  // 0 success, 1 step-1, 2 step-2
};

/// Monte Carlo harness for the two-step algorithm at q = 1/2. Per-trial
/// randomness is keyed by (seed, trial index); the report is identical
/// for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, std::uint64_t trials);

}  // namespace rmrun
