// fermat-lab: reduction types of Y^p = X^s (1 - X) from the command line.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermat_lab/counting.hpp"
#include "fermat_lab/orbits.hpp"
#include "fermat_lab/sampler.hpp"
#include "fermat_lab/stats.hpp"
#include "fermat_lab/sweep.hpp"
#include "fermat_lab/theta.hpp"
#include "fermat_lab/verify.hpp"

namespace {

using namespace fermat_lab;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
T parse_decimal(const std::string& text, const char* flag) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw UsageError(std::string(flag) + ": expected a decimal integer, got '" + text + "'");
    }
    return value;
}

unsigned worker_count(const std::string& flag_value) {
    if (const char* env = std::getenv("FERMAT_LAB_THREADS"); env && *env) {
        return parse_decimal<unsigned>(env, "FERMAT_LAB_THREADS");
    }
    return flag_value.empty() ? 1u : parse_decimal<unsigned>(flag_value, "--workers");
}

QuotientBacking parse_backing(const std::string& text) {
    if (text == "direct") return QuotientBacking::Direct;
    if (text == "table") return QuotientBacking::Table;
    throw UsageError("--backing: expected direct or table, got '" + text + "'");
}

nlohmann::json params_json(const SamplerParams& params) {
    return {{"p", params.p.value()},
            {"U", params.U},
            {"delta", params.delta},
            {"theoretical_delta", params.theoretical_delta},
            {"seed", params.seed},
            {"ell_count", params.ell_primes.size()},
            {"r_range", {params.r_lo(), params.r_hi()}}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermat-quotient classifier for the reduction types of Y^p = X^s(1-X)"};
    app.require_subcommand(1);

    std::string p_text, s_text, mode_text, backing_text = "direct";
    auto* theta_cmd = app.add_subcommand("theta", "Print theta_{p,s} and the reduction type");
    theta_cmd->add_option("--p", p_text, "prime")->required();
    theta_cmd->add_option("--s", s_text, "parameter s (any integer with s, s+1 prime to p)")->required();

    auto* count_cmd = app.add_subcommand("count", "Exact census N_0, N_1, N_-1 for one prime");
    count_cmd->add_option("--p", p_text, "prime")->required();
    count_cmd->add_option("--mode", mode_text, "streaming | table | orbitwise");
    count_cmd->add_option("--backing", backing_text, "orbitwise quotient source: direct | table");

    auto* orbits_cmd = app.add_subcommand("orbits", "Dump the orbit decomposition of {1..p-2}");
    orbits_cmd->add_option("--p", p_text, "prime")->required();

    std::string from_text, to_text, out_path, workers_text, checkpoint_path, format_text = "csv";
    std::string sweep_backing = "table";
    bool no_timing = false, exclude_wieferich = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Census of every prime in [from, to)");
    sweep_cmd->add_option("--from", from_text)->required();
    sweep_cmd->add_option("--to", to_text)->required();
    sweep_cmd->add_option("--out", out_path)->required();
    sweep_cmd->add_option("--workers", workers_text);
    sweep_cmd->add_option("--checkpoint", checkpoint_path);
    sweep_cmd->add_option("--mode", mode_text, "force one mode (default: per-prime choice)");
    sweep_cmd->add_option("--backing", sweep_backing, "orbitwise quotient source: direct | table");
    sweep_cmd->add_option("--format", format_text, "csv | jsonl");
    sweep_cmd->add_flag("--no-timing", no_timing, "write elapsed as 0 for byte-reproducible output");
    sweep_cmd->add_flag("--exclude-wieferich", exclude_wieferich, "skip 1093 and 3511");

    std::string count_text, seed_text = "1", delta_text, samples_csv;
    bool dedupe = false;
    auto* sample_cmd = app.add_subcommand("sample", "Quasi-Monte Carlo estimate of the theta frequencies");
    sample_cmd->add_option("--p", p_text, "prime >= 10^4")->required();
    sample_cmd->add_option("--count", count_text, "number of samples M")->required();
    sample_cmd->add_option("--seed", seed_text);
    sample_cmd->add_option("--delta", delta_text, "override the interval width");
    sample_cmd->add_option("--samples-csv", samples_csv, "write ell,r,u,v,s_raw,s,theta per sample");
    sample_cmd->add_option("--workers", workers_text);
    sample_cmd->add_flag("--dedupe", dedupe, "measure discrepancy on distinct s only");

    std::string in_path, table_text = "both", kmax_text, json_path;
    auto* stats_cmd = app.add_subcommand("stats", "Moments and Poisson tables from a sweep CSV");
    stats_cmd->add_option("--in", in_path)->required();
    stats_cmd->add_option("--table", table_text, "moments | poisson | both");
    stats_cmd->add_option("--kmax", kmax_text);
    stats_cmd->add_option("--json", json_path, "also write the tables as JSON");

    std::string max_p_text = "300";
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    verify_cmd->add_option("--max-p", max_p_text);

    std::string limit_text;
    auto* wief_cmd = app.add_subcommand("wieferich", "List Wieferich primes up to a limit");
    wief_cmd->add_option("--limit", limit_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*theta_cmd) {
            const Prime p(parse_decimal<u64>(p_text, "--p"));
            const i64 s = parse_decimal<i64>(s_text, "--s");
            const ThetaValue t = (s >= 1 && static_cast<u64>(s) <= p - 2) ? theta_direct(p, static_cast<u64>(s))
                                                                            : theta_extended(p, s);
            std::cout << t.value() << ' ' << to_string(to_reduction_type(t)) << '\n';
        } else if (*count_cmd) {
            const Prime p(parse_decimal<u64>(p_text, "--p"));
            const CountMode mode = mode_text.empty() ? default_mode(p) : parse_count_mode(mode_text);
            std::cout << csv_header() << '\n' << to_csv(count(p, mode, parse_backing(backing_text))) << '\n';
        } else if (*orbits_cmd) {
            std::cout << format_decomposition(decompose(Prime(parse_decimal<u64>(p_text, "--p"))));
        } else if (*sweep_cmd) {
            SweepConfig cfg;
            cfg.lo = parse_decimal<u64>(from_text, "--from");
            cfg.hi = parse_decimal<u64>(to_text, "--to");
            cfg.output_path = out_path;
            cfg.workers = worker_count(workers_text);
            if (!checkpoint_path.empty()) cfg.checkpoint_path = checkpoint_path;
            if (!mode_text.empty()) cfg.mode = parse_count_mode(mode_text);
            cfg.backing = parse_backing(sweep_backing);
            if (format_text == "jsonl") {
                cfg.format = OutputFormat::Jsonl;
            } else if (format_text != "csv") {
                throw UsageError("--format: expected csv or jsonl");
            }
            cfg.record_timing = !no_timing;
            cfg.include_wieferich = !exclude_wieferich;
            const SweepSummary sum = sweep(cfg);
            std::fprintf(stderr, "%s: %llu records (%llu this run) in %.2f s\n", sum.resumed ? "resumed" : "sweep",
                         static_cast<unsigned long long>(sum.records_written),
                         static_cast<unsigned long long>(sum.records_this_run), sum.elapsed);
        } else if (*sample_cmd) {
            const Prime p(parse_decimal<u64>(p_text, "--p"));
            BatchOptions opt;
            if (!delta_text.empty()) opt.delta = parse_decimal<u64>(delta_text, "--delta");
            opt.deduplicate = dedupe;
            opt.workers = worker_count(workers_text);
            const SampleBatch batch =
                run_batch(p, parse_decimal<u64>(count_text, "--count"), parse_decimal<u64>(seed_text, "--seed"), opt);
            const nlohmann::json j = {{"params", params_json(batch.params)},
                                      {"M", batch.samples.size()},
                                      {"discrepancy", batch.discrepancy},
                                      {"pair_discrepancy", batch.pair_discrepancy},
                                      {"theorem_bound", batch.theorem_bound},
                                      {"f0", batch.f0},
                                      {"f1", batch.f1},
                                      {"fm1", batch.fm1}};
            std::cout << j.dump(2) << '\n';
            if (!samples_csv.empty()) {
                std::ofstream out(samples_csv);
                out << "ell,r,u,v,s_raw,s,theta\n";
                for (const Sample& x : batch.samples) {
                    out << x.ell << ',' << x.r << ',' << x.u << ',' << x.v << ',' << x.s_raw << ',' << x.s << ','
                        << x.theta.value() << '\n';
                }
                if (!out) throw Error(ErrorCode::Io, "cannot write " + samples_csv);
            }
        } else if (*stats_cmd) {
            std::ifstream in(in_path);
            if (!in) throw Error(ErrorCode::Io, "cannot open " + in_path);
            const auto records = read_csv(in);
            const bool want_moments = table_text == "moments" || table_text == "both";
            const bool want_poisson = table_text == "poisson" || table_text == "both";
            if (!want_moments && !want_poisson) throw UsageError("--table: expected moments, poisson or both");
            nlohmann::json j;
            if (want_moments) {
                const MomentsReport m = moments(records, kmax_text.empty() ? 8 : parse_decimal<int>(kmax_text, "--kmax"));
                std::cout << format_moments(m) << '\n';
                j["moments"] = nlohmann::json::parse(moments_json(m));
            }
            if (want_poisson) {
                PoissonOptions opt;
                if (!kmax_text.empty() && !want_moments) opt.kmax = parse_decimal<int>(kmax_text, "--kmax");
                const PoissonReport r = poisson_table(records, opt);
                std::cout << format_poisson(r);
                j["poisson"] = nlohmann::json::parse(poisson_json(r));
            }
            if (!json_path.empty()) {
                std::ofstream out(json_path);
                out << j.dump(2) << '\n';
                if (!out) throw Error(ErrorCode::Io, "cannot write " + json_path);
            }
        } else if (*verify_cmd) {
            bool ok = true;
            for (const FamilyResult& f : verify_all(parse_decimal<u64>(max_p_text, "--max-p"))) {
                std::printf("[%s] %s (%llu checks)%s%s\n", f.passed() ? "PASS" : "FAIL", f.name.c_str(),
                            static_cast<unsigned long long>(f.checks), f.passed() ? "" : ": first failure at ",
                            f.first_failure.c_str());
                ok = ok && f.passed();
            }
            return ok ? 0 : kExitVerify;
        } else if (*wief_cmd) {
            for (u64 p : wieferich_scan(parse_decimal<u64>(limit_text, "--limit"))) std::cout << p << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Io ? kExitIo : kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
