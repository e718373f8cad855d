#include "zecap/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zecap/cj.hpp"
#include "zecap/errors.hpp"
#include "zecap/linalg.hpp"
#include "zecap/product.hpp"

namespace zecap {

namespace {

std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out;
}

AnalysisOptions seeded_analysis(const AnalysisOptions& base,
                                std::uint64_t seed) {
    AnalysisOptions a = base;
    a.search.seed = derive_seed(seed, 1);
    a.minimize.seed = derive_seed(seed, 2);
    return a;
}

Channel two_unitary_mixture(Rng& rng) {
    const MatrixXcd u = haar_unitary(2, rng);
    const MatrixXcd v = haar_unitary(2, rng);
    const double p = 0.3 + 0.4 * rng.uniform();
    return unitary_mixture({u, v}, {1.0 - p, p});
}

Channel reflection_mixture(Rng& rng) {
    const MatrixXcd u = haar_unitary(2, rng);
    Eigen::MatrixXcd h = u.col(0) * u.col(0).adjoint();
    h -= u.col(1) * u.col(1).adjoint();
    const double p = 0.2 + 0.3 * rng.uniform();
    return unitary_mixture({MatrixXcd::Identity(2, 2), h}, {1.0 - p, p});
}

void bucket_verdict(CampaignCounts& counts, const CapacityVerdict& v) {
    switch (v.status) {
        case CapacityStatus::Positive: ++counts.positive; break;
        case CapacityStatus::Zero: ++counts.zero; break;
        case CapacityStatus::Unknown: ++counts.unknown; break;
    }
}

std::string outcome_name(CapacityStatus s) {
    switch (s) {
        case CapacityStatus::Positive: return "positive";
        case CapacityStatus::Zero: return "zero";
        case CapacityStatus::Unknown: return "unknown";
    }
    return "?";
}

void run_agreement_trial(const CampaignConfig& cfg, int idx,
                         CampaignReport& rep) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, idx);
    Rng rng(trial_seed);
    const int d = cfg.dims[idx % cfg.dims.size()];
    const int env =
        cfg.env_dim <= 2 ? cfg.env_dim : 2 + (idx % (cfg.env_dim - 1));
    const Channel ch = random_channel(d, env, rng);
    const CapacityVerdict v =
        one_shot_zero_error_positive(ch, seeded_analysis(cfg.analysis,
                                                         trial_seed));

    TrialRecord rec;
    rec.index = idx;
    rec.kind = "channel d=" + std::to_string(d) + " env=" +
               std::to_string(env);
    rec.outcome = outcome_name(v.status);
    rec.margin = v.margin;
    rec.dim_complement = v.dim_complement;
    rec.agreement = v.agreement;

    const bool contradiction =
        v.subspace_status && v.minimization_status &&
        *v.subspace_status != CapacityStatus::Unknown &&
        *v.minimization_status != CapacityStatus::Unknown &&
        *v.subspace_status != *v.minimization_status;
    if (contradiction) {
        rec.notes.push_back("methods contradict each other");
        rep.failures.push_back("trial " + std::to_string(idx) +
                               ": subspace and minimization verdicts "
                               "contradict");
    }
    bucket_verdict(rep.counts, v);
    rep.trials.push_back(std::move(rec));
}

void run_dim_bound_trial(const CampaignConfig& cfg, int idx,
                         CampaignReport& rep) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, idx);
    Rng rng(trial_seed);
    const int d = cfg.dims[idx % cfg.dims.size()];
    Channel ch;
    if (d == 2) {
        ch = varied_qubit_channel(idx, rng);
    } else {
        const int env = 1 + (idx % std::max(1, cfg.env_dim));
        ch = random_channel(d, env, rng);
    }
    const CapacityVerdict v =
        one_shot_zero_error_positive(ch, seeded_analysis(cfg.analysis,
                                                         trial_seed));
    const long bound = max_entangled_subspace_dim(d, d, 2);

    TrialRecord rec;
    rec.index = idx;
    rec.kind = "qubit-family channel d=" + std::to_string(d);
    rec.margin = v.margin;
    rec.dim_complement = v.dim_complement;
    rec.agreement = v.agreement;

    const bool product_free = v.subspace_status == CapacityStatus::Zero;
    if (product_free && v.dim_complement > bound) {
        rec.outcome = "violation";
        rec.notes.push_back("product-free complement of dimension " +
                            std::to_string(v.dim_complement) +
                            " exceeds the bound " + std::to_string(bound));
        ++rep.counts.violation;
        rep.failures.push_back("trial " + std::to_string(idx) +
                               ": complement dimension bound violated");
    } else {
        rec.outcome = outcome_name(v.status);
        bucket_verdict(rep.counts, v);
    }
    rep.trials.push_back(std::move(rec));
}

void run_superactivation_trial(const CampaignConfig& cfg, int idx,
                               CampaignReport& rep) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, idx);
    Rng rng(trial_seed);

    std::vector<Channel> chs;
    std::vector<int> group_dims;
    for (int j = 0; j < cfg.group_size; ++j) {
        const int d =
            cfg.dims[(static_cast<size_t>(idx) * cfg.group_size + j) %
                     cfg.dims.size()];
        group_dims.push_back(d);
        chs.push_back(random_zero_capacity_channel(
            d, std::max(2, cfg.env_dim), cfg.margin_filter, cfg.analysis,
            rng));
    }

    SuperactivationOptions sopts;
    sopts.analysis = cfg.analysis;
    sopts.use_fast_path = cfg.fast_path;
    sopts.ambient_cap = cfg.ambient_cap;
    sopts.seed = derive_seed(trial_seed, 9);
    const SuperactivationReport sr = superactivation_analysis(chs, sopts);

    TrialRecord rec;
    rec.index = idx;
    rec.kind = "tuple d=[" + join_ints(group_dims) + "]";
    double min_margin = -1.0;
    for (const CapacityVerdict& v : sr.individual)
        if (min_margin < 0.0 || v.margin < min_margin) min_margin = v.margin;
    rec.margin = std::max(0.0, min_margin);
    if (sr.joint) rec.dim_complement = sr.joint->dim_complement;

    switch (sr.conclusion) {
        case SuperactivationConclusion::Superactivated:
            rec.outcome = "superactivated";
            ++rep.counts.superactivated;
            rep.failures.push_back("trial " + std::to_string(idx) +
                                   ": tuple reported as superactivated");
            break;
        case SuperactivationConclusion::TheoremFastPath:
            rec.outcome = "fastpath";
            ++rep.counts.fastpath;
            break;
        case SuperactivationConclusion::NotSuperactivated:
            if (sr.joint && sr.joint->status == CapacityStatus::Unknown) {
                rec.outcome = "unknown";
                ++rep.counts.unknown;
                rec.notes.push_back("joint search did not conclude");
            } else {
                rec.outcome = "zero";
                ++rep.counts.zero;
            }
            break;
        case SuperactivationConclusion::NotApplicable:
            rec.outcome = "unknown";
            ++rep.counts.unknown;
            rec.notes.push_back(
                "sampled tuple lost its zero-capacity certificate on "
                "re-analysis");
            break;
    }
    for (const std::string& w : sr.warnings) rec.notes.push_back(w);
    rep.trials.push_back(std::move(rec));
}

void run_lemma_trial(const CampaignConfig& cfg, int idx, CampaignReport& rep) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, idx);
    Rng rng(trial_seed);
    const int n = 2 + static_cast<int>(rng.uniform_index(2));
    const int m = 2 + static_cast<int>(rng.uniform_index(2));
    const int k = m == 2 ? 1 : 1 + static_cast<int>(rng.uniform_index(3));
    const bool b1_zero = idx % 8 == 7;
    const LemmaInstance inst = random_lemma_instance(n, m, k, b1_zero, rng);
    const LemmaCheckResult check = lemma_instance_check(inst);

    TrialRecord rec;
    rec.index = idx;
    rec.kind = "instance n=" + std::to_string(n) + " m=" + std::to_string(m) +
               " k=" + std::to_string(k) + (b1_zero ? " B1=0" : "");
    rec.rank = check.rank;

    if (check.outcome == LemmaOutcome::Violation) {
        rec.outcome = "violation";
        ++rep.counts.violation;
        rep.failures.push_back("trial " + std::to_string(idx) +
                               ": instance produced a rank-one sum");
    } else if (check.off_diag_residual > 1e-10) {
        rec.outcome = "violation";
        rec.notes.push_back("off-diagonal residual " +
                            std::to_string(check.off_diag_residual));
        ++rep.counts.violation;
        rep.failures.push_back("trial " + std::to_string(idx) +
                               ": off-diagonal block left Q");
    } else {
        rec.outcome = "ok";
        ++rep.counts.ok;
    }
    rep.trials.push_back(std::move(rec));
}

}  // namespace

std::string to_string(CampaignMode m) {
    switch (m) {
        case CampaignMode::Agreement: return "agreement";
        case CampaignMode::DimBound: return "dim-bound";
        case CampaignMode::Superactivation: return "superactivation";
        case CampaignMode::LemmaFuzz: return "lemma-fuzz";
    }
    return "?";
}

CampaignMode campaign_mode_from_string(const std::string& text) {
    if (text == "agreement") return CampaignMode::Agreement;
    if (text == "dim-bound") return CampaignMode::DimBound;
    if (text == "superactivation") return CampaignMode::Superactivation;
    if (text == "lemma-fuzz") return CampaignMode::LemmaFuzz;
    throw ConfigError("unknown campaign mode '" + text + "'");
}

Channel varied_qubit_channel(int index, Rng& rng) {
    switch (index % 8) {
        case 0: return random_channel(2, 1, rng);
        case 1: return random_channel(2, 2, rng);
        case 2: return random_channel(2, 3, rng);
        case 3: return random_channel(2, 4, rng);
        case 4: return two_unitary_mixture(rng);
        case 5: return random_channel(2, 2, rng);
        case 6: return reflection_mixture(rng);
        default: return two_unitary_mixture(rng);
    }
}

Channel random_zero_capacity_channel(int d, int env_dim, double margin_filter,
                                     const AnalysisOptions& analysis, Rng& rng,
                                     int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Channel ch = random_channel(d, env_dim, rng);
        const CapacityVerdict v = one_shot_zero_error_positive(
            ch, seeded_analysis(analysis, rng.next_u64()));
        if (v.status == CapacityStatus::Zero && v.margin > margin_filter)
            return ch;
    }
    throw ConfigError(
        "failed to sample a zero-capacity channel with margin above " +
        std::to_string(margin_filter) + " in " +
        std::to_string(max_attempts) + " attempts (d=" + std::to_string(d) +
        ", env=" + std::to_string(env_dim) + ")");
}

LemmaInstance random_lemma_instance(int n, int m, int k, bool b1_zero,
                                    Rng& rng) {
    if (n < 2 || m < 2 || k < 1)
        throw ConfigError("lemma instances need n, m >= 2 and k >= 1");
    LemmaInstance inst;
    inst.n = n;
    inst.m = m;
    inst.k = k;

    MatrixXcd a1;
    do {
        a1 = rng.gaussian_matrix(n, n) +
             2.0 * n * MatrixXcd::Identity(n, n);
    } while (numerical_rank(a1) < 2);

    // Rejection-sample a product-free k-dimensional matrix subspace Q.
    MatrixXcd q_basis;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 200)
            throw ConfigError("failed to sample a rank-one-free subspace");
        MatrixXcd draw(m * m, k);
        for (int i = 0; i < k; ++i) draw.col(i) = rng.gaussian_vector(m * m);
        q_basis = orthonormal_basis(draw);
        if (q_basis.cols() != k) continue;
        const Subspace q{q_basis, {m, m}};
        if (find_product_in_subspace(q, {}).status == SearchStatus::NotFound)
            break;
    }

    inst.A.push_back(a1);
    inst.B.push_back(MatrixXcd::Zero(m, m));
    if (!b1_zero) {
        VectorXcd b1;
        do {
            b1 = rng.gaussian_vector(m * m);
            b1 -= q_basis * (q_basis.adjoint() * b1);
        } while (b1.norm() < 1e-8);
        inst.B[0] = state_to_matrix({b1, {m, m}});
    }
    for (int i = 0; i < k; ++i) {
        inst.A.push_back(rng.gaussian_matrix(n, n));
        inst.B.push_back(state_to_matrix({q_basis.col(i), {m, m}}));
    }
    return inst;
}

CampaignReport run_campaign(const CampaignConfig& config) {
    if (config.trials < 1) throw ConfigError("campaign needs trials >= 1");
    if (config.dims.empty()) throw ConfigError("campaign needs input dims");
    for (int d : config.dims)
        if (d < 2) throw ConfigError("input dimensions must be at least 2");
    if (config.env_dim < 1)
        throw ConfigError("environment dimension must be at least 1");
    if (config.group_size < 2 &&
        config.mode == CampaignMode::Superactivation)
        throw ConfigError("superactivation campaigns need group_size >= 2");

    CampaignReport rep;
    rep.config = config;
    for (int idx = 0; idx < config.trials; ++idx) {
        switch (config.mode) {
            case CampaignMode::Agreement:
                run_agreement_trial(config, idx, rep);
                break;
            case CampaignMode::DimBound:
                run_dim_bound_trial(config, idx, rep);
                break;
            case CampaignMode::Superactivation:
                run_superactivation_trial(config, idx, rep);
                break;
            case CampaignMode::LemmaFuzz:
                run_lemma_trial(config, idx, rep);
                break;
        }
    }

    const double unknown_rate =
        static_cast<double>(rep.counts.unknown) / config.trials;
    if (unknown_rate > 0.01)
        rep.failures.push_back("unknown rate " + std::to_string(unknown_rate) +
                               " exceeds 1%");
    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace zecap
