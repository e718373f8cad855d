#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace zecap {

/// Mixes a base seed with a stream index into an independent child seed
/// (splitmix64 finalizer), so nearby (seed, stream) pairs decorrelate.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Deterministic random source. All sampling in the library flows through
/// this class; Gaussian variates come from an explicit Box-Muller transform
/// on top of mt19937_64, so a given seed yields the same stream on every
/// platform (the standard library distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1].
    double uniform_open_zero() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n > 0.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal variate.
    double gaussian();

    /// Complex Gaussian with unit total variance (re and im each N(0, 1/2)).
    std::complex<double> complex_gaussian();

    Eigen::VectorXcd gaussian_vector(int n);
    Eigen::MatrixXcd gaussian_matrix(int rows, int cols);

    /// Haar-uniform unit vector in C^n.
    Eigen::VectorXcd unit_vector(int n);

    /// Independent child generator; deterministic in (seed(), stream).
    Rng substream(std::uint64_t stream) const {
        return Rng(derive_seed(seed_, stream));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace zecap
