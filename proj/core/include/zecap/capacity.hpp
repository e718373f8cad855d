#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zecap/channel.hpp"
#include "zecap/cj.hpp"
#include "zecap/product.hpp"

namespace zecap {

/// Overlap below this counts as "zero" when certifying a witness pair.
inline constexpr double kZeroTol = 1e-9;

enum class CapacityStatus { Positive, Zero, Unknown };

enum class VerdictMethod { SubspaceCriterion, DirectMinimization, Both };

std::string to_string(CapacityStatus s);
std::string to_string(VerdictMethod m);

/// Decision record for one channel (or one joint channel).
///
/// margin is the smallest output overlap seen across every input pair the
/// analysis examined; a Positive verdict always carries a witness pair whose
/// overlap was re-checked against zero_tol.
struct CapacityVerdict {
    CapacityStatus status = CapacityStatus::Unknown;
    std::optional<std::pair<PureState, PureState>> witness;
    double margin = 0.0;
    VerdictMethod method = VerdictMethod::Both;
    bool agreement = false;
    int dim_support = 0;
    int dim_complement = 0;
    /// Raw per-route outcomes, kept so cross-check reports can tell a
    /// genuine contradiction from a one-sided Unknown.
    std::optional<CapacityStatus> subspace_status;
    std::optional<CapacityStatus> minimization_status;
    std::vector<std::string> warnings;
};

/// Tr[E(|psi><psi|) E(|phi><phi|)]. Nonnegative up to roundoff; clamped to 0.
double trace_overlap(const Channel& ch, const PureState& psi,
                     const PureState& phi);

struct MinOverlapOptions {
    int restarts = 32;
    /// The descent flattens badly near degenerate minima (the zero set of
    /// the overlap is typically a thin manifold), so the budget is generous;
    /// healthy runs stop on conv_tol long before reaching it.
    int max_iter = 5000;
    /// Relative stall threshold: a run stops once the per-iteration gain
    /// drops below conv_tol times the current value.
    double conv_tol = 1e-12;
    std::uint64_t seed = 0;
};

struct MinOverlapResult {
    PureState psi;
    PureState phi;
    double value = 0.0;
    bool monotone = true;
    int restarts_used = 0;
};

/// Minimizes trace_overlap over pairs of pure inputs by alternating
/// eigenvector descent: with psi fixed, the best phi is the minimal
/// eigenvector of E*(E(|psi><psi|)). Multistart; the objective never
/// increases along a run.
MinOverlapResult min_overlap_search(const Channel& ch,
                                    const MinOverlapOptions& opts = {});

struct AnalysisOptions {
    double support_tol = kSupportTol;
    double zero_tol = kZeroTol;
    bool use_subspace = true;
    bool use_minimization = true;
    ProductSearchOptions search;
    MinOverlapOptions minimize;
};

/// Decides whether the channel admits a pair of pure inputs with orthogonal
/// outputs. Runs the support-complement product search and the direct
/// overlap minimization (both by default), cross-checks them, and reports
/// Unknown on disagreement or an inconclusive search.
CapacityVerdict one_shot_zero_error_positive(const Channel& ch,
                                             const AnalysisOptions& opts = {});

/// Rewrites a vector orthogonal to S1 (x) S2 as a short sum of product terms:
/// one term per basis vector of S2-perp plus, when S1-perp is nonempty, a
/// single term carried by its spanning vector. Requires dim S1-perp <= 1.
std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>
decompose_orthocomplement_state(const PureState& v, const Subspace& s1,
                                const Subspace& s2);

/// Inputs for the rank-one exclusion check: matrices A^1..A^{k+1} (n x n)
/// and B^1..B^{k+1} (m x m), where A^1 spans a rank-one-free line P,
/// B^2..B^{k+1} span a rank-one-free subspace Q, and B^1 lies in Q-perp.
struct LemmaInstance {
    std::vector<Eigen::MatrixXcd> A;
    std::vector<Eigen::MatrixXcd> B;
    int n = 0;
    int m = 0;
    int k = 0;
};

/// R_st = sum_i (A^i)_st B^i, the m x m block of M at block row s, column t.
Eigen::MatrixXcd submatrix_R(const LemmaInstance& inst, int s, int t);

enum class LemmaOutcome { RankNotOne, Violation };

struct LemmaCheckResult {
    LemmaOutcome outcome = LemmaOutcome::RankNotOne;
    int rank = 0;
    double sigma_max = 0.0;
    /// Largest distance from any off-diagonal R_st (in the frame where A^1
    /// is diagonal) to the span of B^2..B^{k+1}.
    double off_diag_residual = 0.0;
    bool b1_is_zero = false;
    int positive_diag_entries = 0;
    std::vector<std::string> trace;
    /// Populated only on Violation, for forensic dumps.
    std::optional<LemmaInstance> forensic;
};

/// Verifies that M = sum_i A^i (x) B^i does not have rank one, recording the
/// argument's checkpoints along the way. Throws HypothesisViolation when the
/// instance fails its own preconditions.
LemmaCheckResult lemma_instance_check(const LemmaInstance& inst);

enum class SuperactivationConclusion {
    Superactivated,
    NotSuperactivated,
    NotApplicable,
    TheoremFastPath
};

std::string to_string(SuperactivationConclusion c);

struct SuperactivationOptions {
    AnalysisOptions analysis;
    bool use_fast_path = true;
    int ambient_cap = 64;
    std::uint64_t seed = 0;
};

struct SuperactivationReport {
    std::vector<CapacityVerdict> individual;
    /// Absent when the fast path fires or when individuals disqualify the
    /// question (some individual capacity already positive).
    std::optional<CapacityVerdict> joint;
    SuperactivationConclusion conclusion =
        SuperactivationConclusion::NotSuperactivated;
    std::optional<std::string> fast_path_reason;
    std::vector<int> complement_dims;
    int joint_input_dim = 0;
    std::vector<std::string> warnings;
};

/// Tests whether a tuple of individually zero-capacity channels acquires
/// positive one-shot zero-error capacity when used jointly. When all but at
/// most one support complement has dimension <= 1 the answer is negative
/// without any search; otherwise the joint support complement is searched
/// for a product witness explicitly.
SuperactivationReport superactivation_analysis(
    const std::vector<Channel>& chs, const SuperactivationOptions& opts = {});

}  // namespace zecap
