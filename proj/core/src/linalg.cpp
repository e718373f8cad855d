#include "zecap/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace zecap {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

VectorXcd kron_vec(const VectorXcd& a, const VectorXcd& b) {
    VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

VectorXcd normalize_phase(const VectorXcd& v, double threshold) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > threshold) {
            return v * (std::conj(v(i)) / mag);
        }
    }
    return v;
}

double hermiticity_error(const MatrixXcd& m) {
    const double scale = std::max(m.norm(), 1e-300);
    return (m - m.adjoint()).norm() / scale;
}

int numerical_rank(const MatrixXcd& m, double rel_tol) {
    if (m.size() == 0) return 0;
    const VectorXd sv = singular_values(m);
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double cut = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    return rank;
}

MatrixXcd orthonormal_basis(const MatrixXcd& columns, double rel_tol) {
    if (columns.cols() == 0) return MatrixXcd(columns.rows(), 0);
    double max_norm = 0.0;
    for (Eigen::Index j = 0; j < columns.cols(); ++j)
        max_norm = std::max(max_norm, columns.col(j).norm());
    if (max_norm <= 0.0) return MatrixXcd(columns.rows(), 0);

    std::vector<VectorXcd> kept;
    kept.reserve(static_cast<size_t>(columns.cols()));
    const double cut = rel_tol * max_norm;
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        VectorXcd w = columns.col(j);
        // Two projection passes for numerical orthogonality.
        for (int pass = 0; pass < 2; ++pass)
            for (const VectorXcd& q : kept) w -= q * (q.dot(w));
        const double n = w.norm();
        if (n > cut) kept.push_back(w / n);
    }
    MatrixXcd out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
    for (size_t j = 0; j < kept.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = kept[j];
    return out;
}

MatrixXcd orthonormal_complement(const MatrixXcd& basis) {
    const Eigen::Index dim = basis.rows();
    const Eigen::Index k = basis.cols();
    if (k == 0) return MatrixXcd::Identity(dim, dim);
    if (k >= dim) return MatrixXcd(dim, 0);
    Eigen::HouseholderQR<MatrixXcd> qr(basis);
    MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(dim, dim);
    MatrixXcd comp = q.rightCols(dim - k);
    // The Householder Q may rotate within the span; the trailing columns are
    // orthogonal to col(basis) whenever basis has full column rank, which is
    // guaranteed for the orthonormal bases used throughout.
    return comp;
}

MatrixXcd haar_isometry(int rows, int cols, Rng& rng) {
    MatrixXcd g = rng.gaussian_matrix(rows, cols);
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(rows, cols);
    MatrixXcd r = qr.matrixQR().topLeftCorner(cols, cols);
    for (int j = 0; j < cols; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        const std::complex<double> phase = mag > 0.0 ? d / mag : 1.0;
        q.col(j) *= std::conj(phase);
    }
    return q;
}

MatrixXcd haar_unitary(int n, Rng& rng) { return haar_isometry(n, n, rng); }

HermitianEigen hermitian_eigen(const MatrixXcd& m) {
    const MatrixXcd sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(sym);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

VectorXcd top_eigenvector(const MatrixXcd& hermitian) {
    const HermitianEigen eig = hermitian_eigen(hermitian);
    return eig.vectors.col(eig.vectors.cols() - 1);
}

VectorXcd bottom_eigenvector(const MatrixXcd& hermitian) {
    const HermitianEigen eig = hermitian_eigen(hermitian);
    return eig.vectors.col(0);
}

VectorXd singular_values(const MatrixXcd& m) {
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    return svd.singularValues();
}

}  // namespace zecap
