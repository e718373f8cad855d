#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zecap/rng.hpp"

namespace zecap {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Kronecker product with the global convention: row-major flattening,
/// first factor most significant. (A ⊗ B)[(i*rB+k),(j*cB+l)] = A(i,j)B(k,l).
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

/// Kronecker product of column vectors under the same convention.
VectorXcd kron_vec(const VectorXcd& a, const VectorXcd& b);

/// Multiplies by a global phase so the first amplitude above threshold is
/// real positive. Zero vectors are returned unchanged.
VectorXcd normalize_phase(const VectorXcd& v, double threshold = 1e-12);

/// Relative deviation from Hermiticity, ||M - M^dag||_F / max(||M||_F, 1e-300).
double hermiticity_error(const MatrixXcd& m);

/// Number of singular values above rel_tol * sigma_max. Zero matrix has rank 0.
int numerical_rank(const MatrixXcd& m, double rel_tol = 1e-9);

/// Orthonormal basis of the column span, rank-revealing: columns whose
/// residual after projection onto the previous ones exceeds rel_tol times
/// the largest column norm are kept (modified Gram-Schmidt, two passes).
MatrixXcd orthonormal_basis(const MatrixXcd& columns, double rel_tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of the span of the given
/// orthonormal columns within C^D, D = basis.rows(). Returns D x (D - k).
MatrixXcd orthonormal_complement(const MatrixXcd& basis);

/// Haar-random isometry C^cols -> C^rows (rows >= cols): QR of a complex
/// Gaussian matrix with the R-diagonal phases absorbed into Q.
MatrixXcd haar_isometry(int rows, int cols, Rng& rng);

/// Haar-random unitary on C^n.
MatrixXcd haar_unitary(int n, Rng& rng);

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
/// Symmetrizes the input to absorb roundoff before factorizing.
struct HermitianEigen {
    VectorXd values;
    MatrixXcd vectors;
};
HermitianEigen hermitian_eigen(const MatrixXcd& m);

/// Unit-norm eigenvector for the largest (or smallest) eigenvalue.
VectorXcd top_eigenvector(const MatrixXcd& hermitian);
VectorXcd bottom_eigenvector(const MatrixXcd& hermitian);

/// Singular values in descending order.
VectorXd singular_values(const MatrixXcd& m);

}  // namespace zecap
