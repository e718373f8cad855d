#pragma once

#include <vector>

#include <Eigen/Dense>

#include "zecap/channel.hpp"

namespace zecap {

/// Default relative eigenvalue threshold separating support from kernel.
inline constexpr double kSupportTol = 1e-10;

/// Eigenvalues inside [tol, 100*tol] * lambda_max are counted into the
/// support but reported, since a rank decision that close to the threshold
/// deserves a warning in downstream verdicts.
inline constexpr double kGrayBandFactor = 100.0;

/// Matrix of a CP map under the state-operator correspondence, living on
/// A (x) A' with the unnormalized maximally entangled pairing. Hermitian and
/// positive semidefinite for every CP map.
struct CJMatrix {
    MatrixXcd matrix;
    int d_in = 0;
    int d_out = 0;
};

/// Subspace of a multipartite space, stored as orthonormal basis columns
/// plus the ordered subsystem dimensions of the ambient space.
struct Subspace {
    MatrixXcd basis;        // ambient() x dim()
    std::vector<int> dims;  // subsystem dimensions, first factor most significant

    int dim() const { return static_cast<int>(basis.cols()); }
    int ambient() const { return static_cast<int>(basis.rows()); }

    /// Projection of v onto the subspace.
    VectorXcd project(const VectorXcd& v) const {
        return basis * (basis.adjoint() * v);
    }
};

/// Spectral diagnostics from a support computation.
struct SupportInfo {
    double lambda_max = 0.0;
    int gray_band_count = 0;  // eigenvalues in [tol, 100*tol] * lambda_max
    Eigen::VectorXd eigenvalues;  // ascending
};

/// true if the subspace basis Gram matrix is the identity within tol and the
/// metadata is consistent.
bool subspace_is_valid(const Subspace& s, double tol = 1e-10);

/// CJ matrix of a CP map: sum_ij |i><j| (x) map(|i><j|), built from the
/// unnormalized pairing so a trace-preserving channel gives trace d_in.
CJMatrix cj_matrix(const CPMap& map);

/// Span of the eigenvectors with eigenvalue > tol * lambda_max.
/// dims = [d_in, d_out]. Throws ZeroMatrix when there is no support.
Subspace support(const CJMatrix& m, double tol = kSupportTol,
                 SupportInfo* info = nullptr);

/// Orthonormal basis of the ambient-space complement; dims carried over.
Subspace orthogonal_complement(const Subspace& s);

/// The capacity-deciding subspace of a channel: support of the CJ matrix of
/// dual(ch) composed with ch. dims = [d_in, d_in]. Requires a
/// trace-preserving channel.
Subspace capacity_subspace(const Channel& ch, double tol = kSupportTol,
                           SupportInfo* info = nullptr);

/// Reorders tensor factors: output factor p is input factor perm[p], under
/// the global row-major convention. perm must be a permutation of
/// 0..dims.size()-1 and product(dims) must equal v.size().
VectorXcd permute_subsystems(const VectorXcd& v, const std::vector<int>& dims,
                             const std::vector<int>& perm);

/// Same permutation applied to every basis vector; dims metadata reordered.
Subspace permute_subsystems(const Subspace& s, const std::vector<int>& perm);

}  // namespace zecap
