#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zecap/cj.hpp"

namespace zecap {

/// Default ratio threshold sigma_2/sigma_1 below which a state is product.
inline constexpr double kProductTol = 1e-7;

/// Normalized pure state with subsystem dimension annotation.
struct PureState {
    VectorXcd amplitudes;
    std::vector<int> dims;
};

/// Validates norm and dimension metadata. Throws DimensionMismatch when the
/// dims do not factor the length or the norm is off by more than 1e-12.
PureState make_pure_state(VectorXcd amplitudes, std::vector<int> dims);

/// Coefficient matrix of a bipartite state: M(i, j) is the amplitude of
/// |i>_A |j>_B under the row-major convention. Throws NotBipartite.
MatrixXcd state_to_matrix(const PureState& v);

/// Inverse of state_to_matrix.
PureState matrix_to_state(const MatrixXcd& m);

/// Singular values of the coefficient matrix, descending; their squares sum
/// to 1 for a normalized state.
Eigen::VectorXd schmidt_values(const PureState& v);

/// Tensor factors of a (near-)product state, phase-normalized.
struct ProductWitness {
    VectorXcd a;
    VectorXcd b;
};

/// Product test: true iff sigma_2/sigma_1 <= tol. On success returns the
/// leading Schmidt factors, so a (x) b reconstructs the state up to the
/// discarded Schmidt tail.
std::optional<ProductWitness> is_product(const PureState& v,
                                         double tol = kProductTol);

enum class SearchStatus { Found, NotFound, Inconclusive };

const char* to_string(SearchStatus s);

struct ProductSearchOptions {
    int restarts = 32;
    int max_iter = 500;
    double found_tol = 1e-9;    // Found when objective >= 1 - found_tol
    double conv_tol = 1e-12;    // stop when the objective gain drops below
    std::uint64_t seed = 0;
};

/// Width of the hedging band: best objectives in (1 - 1e-4, 1 - found_tol)
/// are reported Inconclusive rather than rounded to either verdict.
inline constexpr double kInconclusiveBand = 1e-4;

struct ProductSearchResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<ProductWitness> witness;
    double objective = 0.0;  // best achieved ||Pi_S (a (x) b)||^2
    int restarts_used = 0;
    bool monotone = true;    // no ascent step ever decreased the objective
};

/// Searches for a product state inside a bipartite subspace by maximizing
/// f(a, b) = ||Pi_S (a (x) b)||^2. Dimensions 0 and 1 are decided exactly
/// (for a single basis vector the maximum is the leading Schmidt coefficient
/// squared); higher dimensions run alternating eigenvector ascent with
/// multistart, which can under-report, hence the Inconclusive status.
ProductSearchResult find_product_in_subspace(
    const Subspace& s, const ProductSearchOptions& opts = {});

/// Largest possible dimension of a subspace of C^dA (x) C^dB all of whose
/// states have Schmidt rank at least r: (dA - r + 1) * (dB - r + 1).
/// Throws InvalidSchmidtNumber unless 1 <= r <= min(dA, dB).
long max_entangled_subspace_dim(int d_a, int d_b, int r);

}  // namespace zecap
