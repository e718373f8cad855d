#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "zecap/linalg.hpp"
#include "zecap/rng.hpp"

namespace zecap {

/// Frobenius tolerance for the trace-preservation test sum_k K^dag K = I.
inline constexpr double kTracePreservingTol = 1e-10;

/// Completely positive map in Kraus form. Complete positivity is structural:
/// any non-empty list of d_out x d_in matrices defines a CP map
/// rho -> sum_k K_k rho K_k^dag. The trace_preserving flag is set by
/// validation and marks maps that are actual channels.
struct CPMap {
    std::vector<MatrixXcd> kraus;
    int d_in = 0;
    int d_out = 0;
    bool trace_preserving = false;
};

/// A quantum channel is a CP map whose validation found it trace preserving.
using Channel = CPMap;

/// Density operator on C^dim: Hermitian, positive semidefinite, positive
/// trace. Construct through make_density / pure_density to validate.
struct DensityOperator {
    MatrixXcd matrix;
    int dim = 0;
};

/// Validates a Kraus list and builds a CPMap with the trace_preserving flag.
/// Throws EmptyKrausList and ShapeMismatch; a non-trace-preserving list is
/// accepted with the flag false.
CPMap validate_channel(std::vector<MatrixXcd> kraus);

/// Frobenius residual ||sum_k K^dag K - I||_F.
double trace_preservation_residual(const CPMap& map);

DensityOperator make_density(MatrixXcd m);
DensityOperator pure_density(const VectorXcd& psi);

/// Applies the map to an arbitrary matrix: sum_k K X K^dag.
MatrixXcd apply_matrix(const CPMap& map, const MatrixXcd& x);

/// Applies the map to a density operator (output symmetrized to absorb
/// roundoff). Throws DimensionMismatch.
DensityOperator apply(const CPMap& map, const DensityOperator& rho);

/// Dual map under the Hilbert-Schmidt inner product: Kraus set {K_k^dag}.
CPMap dual(const CPMap& map);

/// Composition f after g, Kraus set {F_i G_j}. Throws DimensionMismatch.
CPMap compose(const CPMap& f, const CPMap& g);

/// Tensor product, Kraus set {F_i (x) G_j}; the f system is the most
/// significant factor under the global row-major flattening convention.
CPMap tensor(const CPMap& f, const CPMap& g);

/// Haar-random channel on C^d_in with env_dim Kraus operators: a Haar
/// isometry V : C^d_in -> C^(d_in*env_dim) cut into blocks
/// K_k = (<k|_env (x) I) V. Deterministic in the seed.
Channel random_channel(int d_in, int env_dim, std::uint64_t seed);

/// Same sampler drawing from a caller-provided generator.
Channel random_channel(int d_in, int env_dim, Rng& rng);

/// Identity channel on C^d.
Channel identity_channel(int d);

/// Completely depolarizing channel on C^d, Kraus {|i><j| / sqrt(d)}.
Channel depolarizing_channel(int d);

/// Random-unitary channel sum_i p_i U_i rho U_i^dag with Kraus
/// {sqrt(p_i) U_i}. Probabilities must be positive and sum to 1 within 1e-10.
Channel unitary_mixture(const std::vector<MatrixXcd>& unitaries,
                        const std::vector<double>& probs);

/// Convex mixture (1-p)*a + p*b of two channels with equal dimensions,
/// realized as the weighted union of the Kraus sets.
Channel mix_channels(const Channel& a, const Channel& b, double p);

}  // namespace zecap
