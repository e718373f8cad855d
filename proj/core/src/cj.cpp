#include "zecap/cj.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zecap/errors.hpp"

namespace zecap {

namespace {

long long dims_product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

}  // namespace

bool subspace_is_valid(const Subspace& s, double tol) {
    if (dims_product(s.dims) != s.ambient()) return false;
    if (s.dim() > s.ambient()) return false;
    const MatrixXcd gram = s.basis.adjoint() * s.basis;
    return (gram - MatrixXcd::Identity(s.dim(), s.dim())).norm() <= tol;
}

CJMatrix cj_matrix(const CPMap& map) {
    const int d_in = map.d_in;
    const int d_out = map.d_out;
    const int dim = d_in * d_out;
    // For Kraus operator K the pairing vector is (I (x) K) sum_j |jj>, whose
    // coordinate (i*d_out + a) is K(a, i); the CJ matrix is the sum of the
    // outer products of these vectors.
    MatrixXcd sigma = MatrixXcd::Zero(dim, dim);
    VectorXcd v(dim);
    for (const MatrixXcd& k : map.kraus) {
        for (int i = 0; i < d_in; ++i)
            v.segment(i * d_out, d_out) = k.col(i);
        sigma.noalias() += v * v.adjoint();
    }
    sigma = 0.5 * (sigma + sigma.adjoint().eval());
    return {std::move(sigma), d_in, d_out};
}

Subspace support(const CJMatrix& m, double tol, SupportInfo* info) {
    if (hermiticity_error(m.matrix) > 1e-12)
        throw ShapeMismatch("support: matrix is not Hermitian within 1e-12");
    const HermitianEigen eig = hermitian_eigen(m.matrix);
    const Eigen::Index n = eig.values.size();
    const double lambda_max = eig.values(n - 1);
    if (lambda_max <= 0.0)
        throw ZeroMatrix("support: matrix has no positive eigenvalue");
    if (eig.values(0) < -kSupportTol * lambda_max)
        throw ShapeMismatch("support: matrix is not positive semidefinite");

    const double cut = tol * lambda_max;
    const double gray_hi = kGrayBandFactor * cut;
    int kept = 0;
    int gray = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (eig.values(i) > cut) {
            ++kept;
            if (eig.values(i) <= gray_hi) ++gray;
        }
    }
    Subspace s;
    s.basis = MatrixXcd(n, kept);
    // Eigenvalues ascend; store the support basis by descending eigenvalue.
    for (int j = 0; j < kept; ++j) s.basis.col(j) = eig.vectors.col(n - 1 - j);
    s.dims = {m.d_in, m.d_out};
    if (info) {
        info->lambda_max = lambda_max;
        info->gray_band_count = gray;
        info->eigenvalues = eig.values;
    }
    return s;
}

Subspace orthogonal_complement(const Subspace& s) {
    Subspace out;
    out.basis = orthonormal_complement(s.basis);
    out.dims = s.dims;
    return out;
}

Subspace capacity_subspace(const Channel& ch, double tol, SupportInfo* info) {
    if (!ch.trace_preserving)
        throw NotTracePreserving(
            "capacity_subspace requires a trace-preserving channel");
    return support(cj_matrix(compose(dual(ch), ch)), tol, info);
}

VectorXcd permute_subsystems(const VectorXcd& v, const std::vector<int>& dims,
                             const std::vector<int>& perm) {
    const size_t n = dims.size();
    if (perm.size() != n)
        throw DimensionMismatch("permute_subsystems: perm/dims size mismatch");
    if (dims_product(dims) != v.size())
        throw DimensionMismatch(
            "permute_subsystems: dims do not factor the vector length");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || static_cast<size_t>(p) >= n || seen[p])
            throw DimensionMismatch("permute_subsystems: invalid permutation");
        seen[p] = true;
    }

    // Row-major strides: first factor most significant.
    std::vector<long long> in_stride(n, 1);
    for (size_t f = n; f-- > 1;)
        in_stride[f - 1] = in_stride[f] * dims[f];

    std::vector<int> out_dims(n);
    for (size_t p = 0; p < n; ++p) out_dims[p] = dims[perm[p]];
    std::vector<long long> out_stride(n, 1);
    for (size_t p = n; p-- > 1;)
        out_stride[p - 1] = out_stride[p] * out_dims[p];

    VectorXcd out(v.size());
    std::vector<int> idx(n, 0);  // input multi-index
    for (long long x = 0; x < v.size(); ++x) {
        long long rem = x;
        for (size_t f = 0; f < n; ++f) {
            idx[f] = static_cast<int>(rem / in_stride[f]);
            rem %= in_stride[f];
        }
        long long y = 0;
        for (size_t p = 0; p < n; ++p) y += idx[perm[p]] * out_stride[p];
        out(y) = v(x);
    }
    return out;
}

Subspace permute_subsystems(const Subspace& s, const std::vector<int>& perm) {
    Subspace out;
    out.basis = MatrixXcd(s.ambient(), s.dim());
    for (int j = 0; j < s.dim(); ++j)
        out.basis.col(j) = permute_subsystems(VectorXcd(s.basis.col(j)),
                                              s.dims, perm);
    out.dims.resize(s.dims.size());
    for (size_t p = 0; p < perm.size(); ++p) out.dims[p] = s.dims[perm[p]];
    return out;
}

}  // namespace zecap
