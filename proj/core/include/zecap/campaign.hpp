#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/rng.hpp"

namespace zecap {

enum class CampaignMode { Agreement, DimBound, Superactivation, LemmaFuzz };

std::string to_string(CampaignMode m);
CampaignMode campaign_mode_from_string(const std::string& text);

struct CampaignConfig {
    CampaignMode mode = CampaignMode::Agreement;
    int trials = 100;
    /// Input dimensions, cycled across trials (and across group members in
    /// superactivation mode).
    std::vector<int> dims = {2};
    /// Largest environment dimension used by the channel samplers.
    int env_dim = 3;
    std::uint64_t seed = 0;
    /// Zero-capacity channels are resampled until their margin clears this.
    double margin_filter = 1e-3;
    /// Channels per trial in superactivation mode.
    int group_size = 2;
    bool fast_path = true;
    int ambient_cap = 64;
    AnalysisOptions analysis;
};

struct TrialRecord {
    int index = 0;
    std::string kind;
    std::string outcome;
    double margin = 0.0;
    int dim_complement = -1;
    bool agreement = true;
    int rank = -1;
    std::vector<std::string> notes;
};

struct CampaignCounts {
    int positive = 0;
    int zero = 0;
    int unknown = 0;
    int superactivated = 0;
    int fastpath = 0;
    int violation = 0;
    int ok = 0;

    int total() const {
        return positive + zero + unknown + superactivated + fastpath +
               violation + ok;
    }
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<TrialRecord> trials;
    CampaignCounts counts;
    bool passed = true;
    std::vector<std::string> failures;
};

/// Runs one of the randomized property suites. Deterministic given the
/// config: every trial derives its own generator from (seed, index).
CampaignReport run_campaign(const CampaignConfig& config);

/// Qubit channel cycling through structurally distinct families (unitary,
/// Stinespring with environments 2..4, two-unitary mixtures, reflection
/// mixtures) so support complements of every feasible dimension appear.
Channel varied_qubit_channel(int index, Rng& rng);

/// Rejection-samples a channel whose verdict is Zero with margin above the
/// filter. Throws ConfigError when max_attempts pass without a hit.
Channel random_zero_capacity_channel(int d, int env_dim, double margin_filter,
                                     const AnalysisOptions& analysis, Rng& rng,
                                     int max_attempts = 200);

/// Draws an instance satisfying the rank-one exclusion hypotheses: Q is
/// rejection-sampled until product-free, B^1 is projected onto the
/// complement of Q (or zeroed when b1_zero), A^1 is made diagonally
/// dominant so its rank stays >= 2.
LemmaInstance random_lemma_instance(int n, int m, int k, bool b1_zero,
                                    Rng& rng);

}  // namespace zecap
