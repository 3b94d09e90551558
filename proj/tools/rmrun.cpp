#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmrun/channel.hpp"
#include "rmrun/dyadic.hpp"
#include "rmrun/errors.hpp"
#include "rmrun/reconstruct.hpp"
#include "rmrun/report.hpp"
#include "rmrun/rmcode.hpp"
#include "rmrun/runstats.hpp"
#include "rmrun/verify.hpp"

namespace {

using namespace rmrun;
using nlohmann::json;

/// Accepts "p/q" or a decimal string; both convert exactly.
Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q <= 0) throw InvalidFormat("rational: denominator must be positive");
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(BigInt(digits), den);
}

std::uint64_t ensure_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    std::cerr << "seed not given; using generated seed " << s << "\n";
    return s;
}

unsigned default_threads() {
    if (const char* env = std::getenv("RMRUN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Run-statistics trace reconstruction for first-order Reed-Muller codes"};
    app.require_subcommand(1);

    int rc = 0;

    // codewords
    {
        auto* cmd = app.add_subcommand("codewords", "List RM(m,1) codewords in canonical order");
        auto m = std::make_shared<int>(4);
        auto first_bit = std::make_shared<int>(-1);
        cmd->add_option("--m", *m, "RM(m,1) parameter m")->required();
        cmd->add_option("--first-bit", *first_bit, "restrict to codewords with this first bit")
            ->check(CLI::Range(0, 1));
        cmd->callback([=] {
            RMCodebook book = RMCodebook::build(*m);
            if (*first_bit >= 0) {
                for (const auto& c : book.first_bit_half(*first_bit == 1))
                    std::cout << c.to_string() << "\n";
            } else {
                for (const auto& c : book.codewords()) std::cout << c.to_string() << "\n";
            }
        });
    }

    // encode
    {
        auto* cmd = app.add_subcommand("encode", "Evaluate u0 + u1 x1 + ... + um xm");
        auto m = std::make_shared<int>(0);
        auto u0 = std::make_shared<int>(0);
        auto u = std::make_shared<std::string>();
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--u0", *u0, "constant coefficient")->required()->check(CLI::Range(0, 1));
        cmd->add_option("--u", *u, "coefficients u1..um as a bit string")->required();
        cmd->callback([=] {
            BitSeq ub = BitSeq::from_string(*u);
            std::vector<bool> uv;
            for (std::size_t i = 1; i <= ub.length(); ++i) uv.push_back(ub.bit(i));
            std::cout << rm_encode(*m, *u0 == 1, uv).to_string() << "\n";
        });
    }

    // trace
    {
        auto* cmd = app.add_subcommand("trace", "Sample deletion-channel traces");
        auto x = std::make_shared<std::string>();
        auto q = std::make_shared<std::string>("1/2");
        auto k = std::make_shared<std::uint64_t>(1);
        auto seed = std::make_shared<std::optional<std::uint64_t>>();
        auto with_mask = std::make_shared<bool>(false);
        auto allow_empty = std::make_shared<bool>(false);
        cmd->add_option("--x", *x, "input bit string")->required();
        cmd->add_option("--q", *q, "deletion probability (rational or decimal)");
        cmd->add_option("--k", *k, "number of traces");
        cmd->add_option("--seed", *seed, "RNG seed");
        cmd->add_flag("--mask", *with_mask, "also print the deletion masks");
        cmd->add_flag("--allow-empty", *allow_empty, "keep empty traces instead of rejecting");
        cmd->callback([=] {
            ChannelConfig cfg;
            cfg.q = parse_rational(*q).convert_to<double>();
            cfg.seed = ensure_seed(*seed);
            Channel chan(cfg);
            BitSeq input = BitSeq::from_string(*x);
            auto batch = chan.sample_batch(input, *k, !*allow_empty);
            std::uint64_t draw = 0;
            for (const auto& t : batch.traces) {
                if (*with_mask) {
                    // re-derive the mask that produced each kept trace
                    BitSeq mask;
                    do {
                        mask = chan.sample_mask(input.length(), draw++);
                    } while (!*allow_empty && apply_mask(input, mask).empty());
                    std::cout << t.to_string() << " " << mask.to_string() << "\n";
                } else {
                    std::cout << t.to_string() << "\n";
                }
            }
        });
    }

    // runs
    {
        auto* cmd = app.add_subcommand("runs", "Count runs in a sequence");
        auto x = std::make_shared<std::string>();
        cmd->add_option("--x", *x)->required();
        cmd->callback([=] {
            RunCounts rc = BitSeq::from_string(*x).count_runs();
            std::cout << "zeros=" << rc.zeros << " ones=" << rc.ones << " total=" << rc.total
                      << "\n";
        });
    }

    // expected-runs
    {
        auto* cmd = app.add_subcommand("expected-runs", "Exact expected run counts under deletion");
        auto x = std::make_shared<std::string>();
        auto q = std::make_shared<std::string>("1/2");
        cmd->add_option("--x", *x)->required();
        cmd->add_option("--q", *q, "deletion probability in (0,1), rational or decimal");
        cmd->callback([=] {
            BitSeq input = BitSeq::from_string(*x);
            Rational qr = parse_rational(*q);
            if (qr == Rational(1, 2)) {
                auto er = expected_runs_half(input);
                std::cout << "zeros=" << er.zeros.to_string() << " ones=" << er.ones.to_string()
                          << " total=" << er.total.to_string() << "\n";
            } else {
                auto er = expected_runs(input, qr);
                std::cout << "zeros=" << er.zeros.str() << " ones=" << er.ones.str()
                          << " total=" << er.total.str() << "\n";
            }
        });
    }

    // coeffs
    {
        auto* cmd = app.add_subcommand("coeffs", "Exact q=1/2 coefficients alpha/beta/gamma/delta");
        auto x = std::make_shared<std::string>();
        cmd->add_option("--x", *x)->required();
        cmd->callback([=] {
            CoefficientSet c = coefficients(BitSeq::from_string(*x));
            std::cout << "alpha=" << c.alpha.to_string() << " beta=" << c.beta.to_string()
                      << " gamma=" << c.gamma.to_string() << " delta=" << c.delta.to_string()
                      << "\n";
        });
    }

    // verify-lemma
    {
        auto* cmd = app.add_subcommand("verify-lemma", "Scan coefficient-condition margins for RM(m,1)");
        auto m = std::make_shared<int>(4);
        auto full = std::make_shared<bool>(false);
        auto sample = std::make_shared<std::optional<std::uint64_t>>();
        auto seed = std::make_shared<std::uint64_t>(0);
        auto max_m = std::make_shared<int>(8);
        auto csv = std::make_shared<bool>(false);
        cmd->add_option("--m", *m)->required();
        cmd->add_flag("--full", *full, "force a full pair scan");
        cmd->add_option("--sample", *sample, "sample this many random pairs per half");
        cmd->add_option("--seed", *seed, "seed for pair sampling");
        cmd->add_option("--max-m", *max_m, "resource guard");
        cmd->add_flag("--csv", *csv, "emit margins as CSV instead of JSON");
        cmd->callback([=, &rc] {
            ConditionScanOptions opts;
            opts.seed = *seed;
            opts.max_m = *max_m;
            if (sample->has_value() && !*full) {
                opts.sample_pairs = **sample;
            } else if (!*full && *m >= 7) {
                opts.sample_pairs = 100000;  // default above the full-scan cutoff
            }
            ConditionReport rep = check_conditions(*m, opts);
            if (*csv) {
                std::cout << condition_csv(rep);
            } else {
                std::cout << make_envelope("verify-lemma", *seed, to_json(rep)).dump(2) << "\n";
            }
            if (!rep.all_pass) rc = 1;
        });
    }

    // check-table1
    {
        auto* cmd = app.add_subcommand("check-table1", "Compare computed coefficients with the embedded RM(4,1) table");
        cmd->callback([&rc] {
            Table1Report rep = check_table1();
            std::cout << make_envelope("check-table1", std::nullopt, to_json(rep)).dump(2) << "\n";
            if (!rep.pass) rc = 1;
        });
    }

    // reconstruct
    {
        auto* cmd = app.add_subcommand("reconstruct", "Run the two-step reconstruction");
        auto m = std::make_shared<int>(4);
        auto traces_file = std::make_shared<std::string>();
        auto x = std::make_shared<std::string>();
        auto k = std::make_shared<std::uint64_t>(0);
        auto ell = std::make_shared<std::uint64_t>(0);
        auto seed = std::make_shared<std::optional<std::uint64_t>>();
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--traces", *traces_file, "file with one trace per line");
        cmd->add_option("--x", *x, "sample traces of this codeword instead");
        cmd->add_option("--k", *k, "trace count when sampling (0 = planner at c=2)");
        cmd->add_option("--ell", *ell, "Step-1 vote size (0 = planner at c=2)");
        cmd->add_option("--seed", *seed);
        cmd->callback([=] {
            std::vector<BitSeq> traces;
            if (!traces_file->empty()) {
                std::ifstream f(*traces_file);
                if (!f) throw std::runtime_error("cannot open " + *traces_file);
                std::string line;
                while (std::getline(f, line)) {
                    if (!line.empty()) traces.push_back(BitSeq::from_string(line));
                }
            } else if (!x->empty()) {
                BitSeq input = BitSeq::from_string(*x);
                SamplePlan plan = plan_sample_sizes(input.length(), 2.0);
                std::uint64_t kk = *k ? *k : plan.k;
                ChannelConfig cfg;
                cfg.seed = ensure_seed(*seed);
                traces = Channel(cfg).sample_batch(input, kk, true).traces;
            } else {
                throw CLI::ValidationError("reconstruct", "need --traces or --x");
            }
            std::uint64_t l = *ell ? *ell : plan_sample_sizes(std::size_t{1} << *m, 2.0).ell;
            l = std::min<std::uint64_t>(l, traces.size());
            std::cout << reconstruct_codeword(traces, *m, l).to_string() << "\n";
        });
    }

    // experiment
    {
        auto* cmd = app.add_subcommand("experiment", "Monte Carlo success-rate experiment");
        auto m = std::make_shared<int>(4);
        auto trials = std::make_shared<std::uint64_t>(100);
        auto k = std::make_shared<std::uint64_t>(0);
        auto ell = std::make_shared<std::uint64_t>(0);
        auto plan_c = std::make_shared<double>(2.0);
        auto seed = std::make_shared<std::optional<std::uint64_t>>();
        auto out = std::make_shared<std::string>();
        auto csv = std::make_shared<std::string>();
        auto selection = std::make_shared<std::string>("random-per-trial");
        auto x = std::make_shared<std::string>();
        auto threads = std::make_shared<unsigned>(default_threads());
        cmd->add_option("--m", *m)->required();
        cmd->add_option("--trials", *trials);
        cmd->add_option("--k", *k, "override total trace count");
        cmd->add_option("--ell", *ell, "override Step-1 vote size");
        cmd->add_option("--plan-c", *plan_c, "planner exponent target c");
        cmd->add_option("--seed", *seed);
        cmd->add_option("--out", *out, "write the JSON report here ('-' = stdout)");
        cmd->add_option("--csv", *csv, "write per-trial CSV rows here");
        cmd->add_option("--selection", *selection)
            ->check(CLI::IsMember({"all", "random-per-trial", "fixed"}));
        cmd->add_option("--x", *x, "fixed codeword for --selection fixed");
        cmd->add_option("--threads", *threads);
        cmd->callback([=] {
            ExperimentConfig cfg;
            cfg.m = *m;
            SamplePlan plan = plan_sample_sizes(std::size_t{1} << *m, *plan_c);
            cfg.ell = *ell ? *ell : plan.ell;
            cfg.k = *k ? *k : plan.k;
            cfg.seed = ensure_seed(*seed);
            cfg.threads = *threads;
            if (*selection == "all") cfg.selection = CodewordSelection::All;
            else if (*selection == "fixed") {
                cfg.selection = CodewordSelection::Fixed;
                if (x->empty()) throw CLI::ValidationError("experiment", "--selection fixed needs --x");
                cfg.fixed_x = BitSeq::from_string(*x);
            }
            ExperimentReport rep = run_experiment(cfg, *trials);
            write_out(*out, make_envelope("experiment", cfg.seed, to_json(rep)).dump(2) + "\n");
            if (!csv->empty()) write_out(*csv, experiment_csv(rep));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidFormat& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
