#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zecap/campaign.hpp"
#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/errors.hpp"
#include "zecap/io.hpp"
#include "zecap/product.hpp"
#include "zecap/rng.hpp"

namespace {

using namespace zecap;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

struct CommonFlags {
    double tol = kSupportTol;
    double zero_tol = kZeroTol;
    double found_tol = 1e-9;
    int restarts = 32;
    /// 0 means "keep each search's own default" (the product search and the
    /// overlap descent use different budgets).
    int max_iter = 0;
    std::uint64_t seed = 0;
    bool json = false;
    std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_search_flags) {
    if (with_search_flags) {
        cmd->add_option("--tol", f.tol,
                        "Relative eigenvalue cutoff for the support");
        cmd->add_option("--zero-tol", f.zero_tol,
                        "Overlap below this certifies a witness pair");
        cmd->add_option("--found-tol", f.found_tol,
                        "Product-search objective gap accepted as found");
        cmd->add_option("--restarts", f.restarts, "Multistart count");
        cmd->add_option("--max-iter", f.max_iter,
                        "Iteration cap per restart for both searches "
                        "(0 keeps their separate defaults)")
            ->check(CLI::NonNegativeNumber);
    }
    cmd->add_option("--seed", f.seed, "Base seed for all randomized steps");
    cmd->add_flag("--json", f.json, "Print the report as JSON");
    cmd->add_option("--out", f.out, "Also write the JSON report to a file");
}

AnalysisOptions make_analysis(const CommonFlags& f) {
    AnalysisOptions a;
    a.support_tol = f.tol;
    a.zero_tol = f.zero_tol;
    a.search.restarts = f.restarts;
    if (f.max_iter > 0) a.search.max_iter = f.max_iter;
    a.search.found_tol = f.found_tol;
    a.search.seed = derive_seed(f.seed, 1);
    a.minimize.restarts = f.restarts;
    if (f.max_iter > 0) a.minimize.max_iter = f.max_iter;
    a.minimize.seed = derive_seed(f.seed, 2);
    return a;
}

Json flags_to_json(const CommonFlags& f) {
    const AnalysisOptions a = make_analysis(f);
    Json j;
    j["tol"] = f.tol;
    j["zero_tol"] = f.zero_tol;
    j["found_tol"] = f.found_tol;
    j["restarts"] = f.restarts;
    j["search_max_iter"] = a.search.max_iter;
    j["minimize_max_iter"] = a.minimize.max_iter;
    j["seed"] = f.seed;
    return j;
}

void emit_report(const Json& report, const CommonFlags& f) {
    if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw IoError("cannot open '" + f.out + "' for writing");
        out << report.dump(2) << '\n';
    }
    if (f.json) std::cout << report.dump(2) << '\n';
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

void print_verdict_text(const CapacityVerdict& v, const std::string& label) {
    std::cout << label << ": " << to_string(v.status)
              << "  (margin " << fmt(v.margin) << ", method "
              << to_string(v.method)
              << (v.method == VerdictMethod::Both
                      ? v.agreement ? ", methods agree" : ", methods DISAGREE"
                      : "")
              << ")\n";
    std::cout << "  dim support " << v.dim_support << ", dim complement "
              << v.dim_complement << "\n";
    if (v.witness) {
        const auto print_state = [](const char* name, const PureState& s) {
            std::cout << "  " << name << " = [";
            for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << std::setprecision(6) << s.amplitudes(i).real()
                          << (s.amplitudes(i).imag() < 0 ? "-" : "+")
                          << std::abs(s.amplitudes(i).imag()) << "i";
            }
            std::cout << "]\n";
        };
        print_state("psi", v.witness->first);
        print_state("phi", v.witness->second);
    }
    for (const std::string& w : v.warnings)
        std::cout << "  warning: " << w << "\n";
}

/// Product-free complements larger than (d-1)^2 contradict the dimension
/// bound, so seeing one is a reportable violation, not just a curiosity.
bool violates_dim_bound(const CapacityVerdict& v, int d) {
    return v.subspace_status == CapacityStatus::Zero &&
           v.dim_complement > max_entangled_subspace_dim(d, d, 2);
}

int run_validate(const std::string& path, const CommonFlags& f) {
    const ChannelFile file = read_channel_file(path);
    const Channel ch = to_channel(file);
    const double residual = trace_preservation_residual(ch);

    Json report;
    report["command"] = "validate";
    report["file"] = path;
    report["name"] = file.name;
    report["d_in"] = ch.d_in;
    report["d_out"] = ch.d_out;
    report["kraus_count"] = ch.kraus.size();
    report["residual"] = residual;
    report["trace_preserving"] = ch.trace_preserving;
    emit_report(report, f);
    if (!f.json) {
        std::cout << "'" << file.name << "': " << ch.d_out << "x" << ch.d_in
                  << " channel, " << ch.kraus.size()
                  << " Kraus operators, trace-preservation residual "
                  << fmt(residual) << "\n";
    }
    if (!ch.trace_preserving) {
        std::cerr << "error: NotTracePreserving: residual " << fmt(residual)
                  << " exceeds " << fmt(kTracePreservingTol) << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

int run_analyze(const std::string& path, const CommonFlags& f) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelFile file = read_channel_file(path);
    const Channel ch = to_channel(file);
    CapacityVerdict v = one_shot_zero_error_positive(ch, make_analysis(f));

    const bool violation = violates_dim_bound(v, ch.d_in);
    if (violation)
        v.warnings.push_back(
            "product-free complement exceeds the dimension bound");

    Json report;
    report["command"] = "analyze";
    report["file"] = path;
    report["name"] = file.name;
    report["flags"] = flags_to_json(f);
    report["verdict"] = to_json(v);
    emit_report(report, f);
    if (!f.json) {
        print_verdict_text(v, "'" + file.name + "'");
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::cout << "  wall time: " << ms << " ms\n";
    }
    return violation ? kExitViolation : kExitOk;
}

int run_superactivate(const std::vector<std::string>& paths,
                      const CommonFlags& f, bool no_fast_path,
                      int ambient_cap) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Channel> chs;
    std::vector<std::string> names;
    for (const std::string& p : paths) {
        const ChannelFile file = read_channel_file(p);
        chs.push_back(to_channel(file));
        names.push_back(file.name);
    }

    SuperactivationOptions opts;
    opts.analysis = make_analysis(f);
    opts.use_fast_path = !no_fast_path;
    opts.ambient_cap = ambient_cap;
    opts.seed = f.seed;
    const SuperactivationReport sr = superactivation_analysis(chs, opts);

    // Superactivation with all but at most one complement of dimension <= 1
    // contradicts the no-go result; with two or more wide complements it is
    // merely a (remarkable) finding.
    int wide = 0;
    for (int c : sr.complement_dims)
        if (c >= 2) ++wide;
    const bool violation =
        sr.conclusion == SuperactivationConclusion::Superactivated &&
        wide <= 1;

    Json report;
    report["command"] = "superactivate";
    report["files"] = paths;
    report["names"] = names;
    report["flags"] = flags_to_json(f);
    report["fast_path"] = !no_fast_path;
    report["ambient_cap"] = ambient_cap;
    report["report"] = to_json(sr);
    emit_report(report, f);
    if (!f.json) {
        for (size_t i = 0; i < sr.individual.size(); ++i)
            print_verdict_text(sr.individual[i], "'" + names[i] + "'");
        if (sr.joint) print_verdict_text(*sr.joint, "joint channel");
        std::cout << "conclusion: " << to_string(sr.conclusion) << "\n";
        if (sr.fast_path_reason)
            std::cout << "  " << *sr.fast_path_reason << "\n";
        for (const std::string& w : sr.warnings)
            std::cout << "  warning: " << w << "\n";
        if (violation)
            std::cout << "  VIOLATION: this tuple's complement dimensions "
                         "forbid superactivation\n";
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::cout << "  wall time: " << ms << " ms\n";
    }
    return violation ? kExitViolation : kExitOk;
}

int run_campaign_cmd(const CampaignConfig& cfg, const CommonFlags& f) {
    const auto start = std::chrono::steady_clock::now();
    const CampaignReport rep = run_campaign(cfg);

    Json report;
    report["command"] = "campaign";
    report["report"] = to_json(rep);
    emit_report(report, f);
    if (!f.json) {
        std::cout << to_string(cfg.mode) << " campaign, " << cfg.trials
                  << " trials, seed " << cfg.seed << ":\n";
        std::cout << "  positive " << rep.counts.positive << ", zero "
                  << rep.counts.zero << ", unknown " << rep.counts.unknown
                  << ", superactivated " << rep.counts.superactivated
                  << ", fastpath " << rep.counts.fastpath << ", violation "
                  << rep.counts.violation << ", ok " << rep.counts.ok << "\n";
        for (const std::string& msg : rep.failures)
            std::cout << "  FAILURE: " << msg << "\n";
        std::cout << (rep.passed ? "  passed" : "  FAILED") << "\n";
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::cout << "  wall time: " << ms << " ms\n";
    }
    return rep.passed ? kExitOk : kExitViolation;
}

int run_random_channel(int d_in, int env_dim, const std::string& name,
                       const CommonFlags& f) {
    if (d_in < 1 || env_dim < 1)
        throw ConfigError("dimensions must be positive");
    const Channel ch = random_channel(d_in, env_dim, f.seed);
    std::string channel_name = name;
    if (channel_name.empty())
        channel_name = "random-d" + std::to_string(d_in) + "-env" +
                       std::to_string(env_dim) + "-seed" +
                       std::to_string(f.seed);
    const ChannelFile file = from_channel(ch, channel_name);
    if (!f.out.empty()) write_channel_file(f.out, file);
    if (f.json || f.out.empty())
        std::cout << channel_file_to_json(file).dump(2) << '\n';
    else
        std::cout << "wrote '" << channel_name << "' (" << ch.kraus.size()
                  << " Kraus operators) to " << f.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Decides one-shot zero-error capacity questions for quantum "
        "channels given by Kraus operators"};
    app.require_subcommand(1);

    CommonFlags fv, fa, fs, fc, fr;

    auto* validate =
        app.add_subcommand("validate", "Check a channel file and report its "
                                       "trace-preservation residual");
    std::string validate_path;
    validate->add_option("file", validate_path, "Channel JSON file")
        ->required();
    add_common_flags(validate, fv, false);

    auto* analyze = app.add_subcommand(
        "analyze", "Decide whether a channel has positive one-shot "
                   "zero-error capacity");
    std::string analyze_path;
    analyze->add_option("file", analyze_path, "Channel JSON file")->required();
    add_common_flags(analyze, fa, true);

    auto* super = app.add_subcommand(
        "superactivate", "Analyze a channel tuple for superactivation");
    std::vector<std::string> super_paths;
    super->add_option("files", super_paths, "Two or more channel JSON files")
        ->expected(2, -1);
    bool no_fast_path = false;
    int ambient_cap = 64;
    super->add_flag("--no-fast-path", no_fast_path,
                    "Always run the explicit joint search");
    super->add_option("--ambient-cap", ambient_cap,
                      "Largest allowed joint input dimension");
    add_common_flags(super, fs, true);

    auto* campaign = app.add_subcommand(
        "campaign", "Run a seeded randomized property campaign");
    std::string config_path, mode_text = "agreement";
    int trials = 100, env_dim = 3, group_size = 2, campaign_cap = 64;
    std::vector<int> dims = {2};
    double margin_filter = 1e-3;
    bool campaign_no_fast_path = false;
    auto* config_opt = campaign->add_option(
        "--config", config_path, "Campaign config JSON file (replaces flags)");
    campaign->add_option("--mode", mode_text,
                         "agreement | dim-bound | superactivation | "
                         "lemma-fuzz");
    campaign->add_option("--trials", trials, "Number of trials");
    campaign->add_option("--dims", dims, "Input dimensions to cycle through")
        ->delimiter(',');
    campaign->add_option("--env-dim", env_dim,
                         "Largest sampler environment dimension");
    campaign->add_option("--margin-filter", margin_filter,
                         "Required margin for sampled zero-capacity channels");
    campaign->add_option("--group-size", group_size,
                         "Channels per superactivation trial");
    campaign->add_flag("--no-fast-path", campaign_no_fast_path,
                       "Use the explicit joint search in every trial");
    campaign->add_option("--ambient-cap", campaign_cap,
                         "Largest allowed joint input dimension");
    add_common_flags(campaign, fc, true);

    auto* random = app.add_subcommand(
        "random-channel", "Sample a channel from a Haar isometry and write "
                          "it as a channel file");
    int rand_d = 2, rand_env = 2;
    std::string rand_name;
    random->add_option("--d-in", rand_d, "Input dimension");
    random->add_option("--env-dim", rand_env, "Environment dimension");
    random->add_option("--name", rand_name, "Name stored in the file");
    add_common_flags(random, fr, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*validate) return run_validate(validate_path, fv);
        if (*analyze) return run_analyze(analyze_path, fa);
        if (*super)
            return run_superactivate(super_paths, fs, no_fast_path,
                                     ambient_cap);
        if (*campaign) {
            CampaignConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in)
                    throw IoError("cannot open '" + config_path +
                                  "' for reading");
                Json j;
                try {
                    j = Json::parse(in);
                } catch (const nlohmann::json::parse_error& e) {
                    throw ParseError("'" + config_path + "': " + e.what());
                }
                cfg = campaign_config_from_json(j);
            } else {
                cfg.mode = campaign_mode_from_string(mode_text);
                cfg.trials = trials;
                cfg.dims = dims;
                cfg.env_dim = env_dim;
                cfg.seed = fc.seed;
                cfg.margin_filter = margin_filter;
                cfg.group_size = group_size;
                cfg.fast_path = !campaign_no_fast_path;
                cfg.ambient_cap = campaign_cap;
                cfg.analysis = make_analysis(fc);
            }
            (void)config_opt;
            return run_campaign_cmd(cfg, fc);
        }
        if (*random) return run_random_channel(rand_d, rand_env, rand_name, fr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
