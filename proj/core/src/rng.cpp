#include "zecap/rng.hpp"

#include <cmath>
#include <numbers>

namespace zecap {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer applied to base advanced by the stream index.
    std::uint64_t z = base + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open_zero();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::complex<double> Rng::complex_gaussian() {
    const double s = std::numbers::sqrt2;
    return {gaussian() / s, gaussian() / s};
}

Eigen::VectorXcd Rng::gaussian_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_gaussian();
    return v;
}

Eigen::MatrixXcd Rng::gaussian_matrix(int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    // Row-major fill order is part of the determinism contract.
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
}

Eigen::VectorXcd Rng::unit_vector(int n) {
    Eigen::VectorXcd v = gaussian_vector(n);
    double norm = v.norm();
    while (norm < 1e-12) {
        v = gaussian_vector(n);
        norm = v.norm();
    }
    return v / norm;
}

}  // namespace zecap
