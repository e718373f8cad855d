#include <complex>
#include <vector>

#include <doctest.h>

#include "zecap/channel.hpp"
#include "zecap/errors.hpp"
#include "zecap/linalg.hpp"
#include "zecap/rng.hpp"

using namespace zecap;
using std::complex;

namespace {

MatrixXcd ketbra(int i, int j, int d) {
    MatrixXcd m = MatrixXcd::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

MatrixXcd random_hermitian(int d, Rng& rng) {
    const MatrixXcd g = rng.gaussian_matrix(d, d);
    return (g + g.adjoint()) / 2.0;
}

/// Reference implementation used as the oracle: literally sums K X K^dag.
MatrixXcd apply_by_hand(const std::vector<MatrixXcd>& kraus,
                        const MatrixXcd& x) {
    MatrixXcd out = MatrixXcd::Zero(kraus[0].rows(), kraus[0].rows());
    for (const MatrixXcd& k : kraus) out += k * x * k.adjoint();
    return out;
}

}  // namespace

TEST_CASE("validate_channel accepts channels and flags non-channels") {
    SUBCASE("identity Kraus list is trace preserving") {
        const CPMap ch = validate_channel({MatrixXcd::Identity(2, 2)});
        CHECK(ch.d_in == 2);
        CHECK(ch.d_out == 2);
        CHECK(ch.trace_preserving);
    }
    SUBCASE("full amplitude damping is trace preserving") {
        const CPMap ch = validate_channel({ketbra(0, 0, 2), ketbra(0, 1, 2)});
        CHECK(ch.trace_preserving);
    }
    SUBCASE("a scaled identity is CP but not trace preserving") {
        const CPMap ch = validate_channel({0.5 * MatrixXcd::Identity(2, 2)});
        CHECK_FALSE(ch.trace_preserving);
        CHECK(trace_preservation_residual(ch) > 0.1);
    }
    SUBCASE("empty list is rejected") {
        CHECK_THROWS_AS(validate_channel({}), EmptyKrausList);
    }
    SUBCASE("inconsistent shapes are rejected") {
        CHECK_THROWS_AS(validate_channel({MatrixXcd::Identity(2, 2),
                                          MatrixXcd::Identity(3, 3)}),
                        ShapeMismatch);
    }
}

TEST_CASE("apply matches the Kraus sum") {
    SUBCASE("identity channel is the identity map") {
        const Channel id = identity_channel(2);
        const DensityOperator rho = pure_density(VectorXcd::Unit(2, 0));
        const DensityOperator out = apply(id, rho);
        CHECK((out.matrix - rho.matrix).norm() < 1e-14);
    }
    SUBCASE("completely depolarizing sends everything to I/d") {
        const Channel dep = depolarizing_channel(2);
        Rng rng(7);
        for (int t = 0; t < 5; ++t) {
            MatrixXcd h = random_hermitian(2, rng);
            h = h * h.adjoint();
            h /= h.trace().real();
            const DensityOperator out = apply(dep, make_density(h));
            CHECK((out.matrix - MatrixXcd::Identity(2, 2) / 2.0).norm() <
                  1e-12);
        }
    }
    SUBCASE("amplitude damping maps |1><1| to |0><0|") {
        const CPMap damp = validate_channel({ketbra(0, 0, 2), ketbra(0, 1, 2)});
        const DensityOperator out =
            apply(damp, pure_density(VectorXcd::Unit(2, 1)));
        CHECK((out.matrix - ketbra(0, 0, 2)).norm() < 1e-14);
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(apply(identity_channel(2),
                              pure_density(VectorXcd::Unit(3, 0))),
                        DimensionMismatch);
    }
    SUBCASE("Hermiticity and trace are preserved on random channels") {
        Rng rng(11);
        for (int t = 0; t < 20; ++t) {
            const Channel ch = random_channel(3, 2, rng);
            MatrixXcd h = random_hermitian(3, rng);
            h = h * h.adjoint() + 1e-3 * MatrixXcd::Identity(3, 3);
            h /= h.trace().real();
            const DensityOperator out = apply(ch, make_density(h));
            CHECK(hermiticity_error(out.matrix) < 1e-12);
            CHECK(std::abs(out.matrix.trace().real() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("dual is the Hilbert-Schmidt adjoint") {
    SUBCASE("dual of the identity is the identity") {
        const CPMap d = dual(identity_channel(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const MatrixXcd u = ketbra(i, j, 2);
                CHECK((apply_matrix(d, u) - u).norm() < 1e-14);
            }
    }
    SUBCASE("dual is an involution on matrix units") {
        Rng rng(13);
        const Channel ch = random_channel(2, 3, rng);
        const CPMap dd = dual(dual(ch));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const MatrixXcd u = ketbra(i, j, 2);
                CHECK((apply_matrix(dd, u) - apply_matrix(ch, u)).norm() <
                      1e-12);
            }
    }
    SUBCASE("dual of depolarizing maps X to Tr(X) I/2") {
        const CPMap d = dual(depolarizing_channel(2));
        Rng rng(17);
        for (int t = 0; t < 5; ++t) {
            const MatrixXcd x = rng.gaussian_matrix(2, 2);
            const MatrixXcd expected =
                x.trace() * MatrixXcd::Identity(2, 2) / 2.0;
            CHECK((apply_matrix(d, x) - expected).norm() < 1e-12);
        }
    }
    SUBCASE("adjoint identity holds for 100 random matrix pairs") {
        Rng rng(19);
        const Channel ch = random_channel(3, 3, rng);
        const CPMap d = dual(ch);
        for (int t = 0; t < 100; ++t) {
            const MatrixXcd x = rng.gaussian_matrix(3, 3);
            const MatrixXcd y = rng.gaussian_matrix(3, 3);
            const complex<double> lhs = (x.adjoint() * apply_matrix(ch, y))
                                            .trace();
            const complex<double> rhs =
                (apply_matrix(d, x).adjoint() * y).trace();
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
}

TEST_CASE("compose concatenates maps") {
    Rng rng(23);
    const Channel ch = random_channel(2, 3, rng);
    SUBCASE("identity is a left unit on matrix units") {
        const CPMap c = compose(identity_channel(2), ch);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const MatrixXcd u = ketbra(i, j, 2);
                CHECK((apply_matrix(c, u) - apply_matrix(ch, u)).norm() <
                      1e-12);
            }
    }
    SUBCASE("dual(depolarizing) after depolarizing is rho -> Tr(rho) I/2") {
        const Channel dep = depolarizing_channel(2);
        const CPMap c = compose(dual(dep), dep);
        const MatrixXcd x = rng.gaussian_matrix(2, 2);
        const MatrixXcd expected =
            x.trace() * MatrixXcd::Identity(2, 2) / 2.0;
        CHECK((apply_matrix(c, x) - expected).norm() < 1e-12);
    }
    SUBCASE("Kraus count multiplies") {
        const Channel f = random_channel(2, 2, rng);
        CHECK(compose(f, ch).kraus.size() == f.kraus.size() * ch.kraus.size());
    }
    SUBCASE("composition agrees with pointwise application") {
        const Channel f = random_channel(2, 4, rng);
        const CPMap c = compose(f, ch);
        for (int t = 0; t < 10; ++t) {
            const MatrixXcd x = rng.gaussian_matrix(2, 2);
            CHECK((apply_matrix(c, x) -
                   apply_matrix(f, apply_matrix(ch, x)))
                      .norm() < 1e-12);
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(compose(identity_channel(3), ch), DimensionMismatch);
    }
}

TEST_CASE("tensor products of maps") {
    Rng rng(29);
    SUBCASE("identity (x) identity is the 4-dim identity") {
        const CPMap t = tensor(identity_channel(2), identity_channel(2));
        REQUIRE(t.kraus.size() == 1);
        CHECK((t.kraus[0] - MatrixXcd::Identity(4, 4)).norm() < 1e-14);
        CHECK(t.d_in == 4);
    }
    SUBCASE("acts factor-wise on product inputs") {
        const Channel f = random_channel(2, 2, rng);
        const Channel g = random_channel(3, 2, rng);
        const CPMap t = tensor(f, g);
        for (int trial = 0; trial < 5; ++trial) {
            const MatrixXcd a = rng.gaussian_matrix(2, 2);
            const MatrixXcd b = rng.gaussian_matrix(3, 3);
            const MatrixXcd lhs = apply_matrix(t, kron(a, b));
            const MatrixXcd rhs =
                kron(apply_matrix(f, a), apply_matrix(g, b));
            CHECK((lhs - rhs).norm() < 1e-12);
        }
    }
    SUBCASE("dimensions multiply") {
        const CPMap t =
            tensor(random_channel(2, 2, rng), random_channel(3, 2, rng));
        CHECK(t.d_in == 6);
        CHECK(t.d_out == 6);
    }
}

TEST_CASE("random_channel sampling") {
    SUBCASE("env_dim 1 yields a unitary channel") {
        const Channel ch = random_channel(3, 1, 41);
        REQUIRE(ch.kraus.size() == 1);
        const MatrixXcd& u = ch.kraus[0];
        CHECK((u.adjoint() * u - MatrixXcd::Identity(3, 3)).norm() < 1e-12);
    }
    SUBCASE("outputs are trace preserving across dims and seeds") {
        for (std::uint64_t seed = 0; seed < 8; ++seed)
            for (int d = 2; d <= 3; ++d)
                for (int env = 1; env <= 4; ++env) {
                    const Channel ch = random_channel(d, env, seed);
                    CHECK(ch.trace_preserving);
                    CHECK(trace_preservation_residual(ch) <= 1e-10);
                    CHECK(ch.kraus.size() == static_cast<size_t>(env));
                }
    }
    SUBCASE("same seed reproduces the Kraus list exactly") {
        const Channel a = random_channel(2, 3, 97);
        const Channel b = random_channel(2, 3, 97);
        REQUIRE(a.kraus.size() == b.kraus.size());
        for (size_t k = 0; k < a.kraus.size(); ++k)
            CHECK((a.kraus[k] - b.kraus[k]).norm() == 0.0);
    }
    SUBCASE("different seeds differ") {
        const Channel a = random_channel(2, 3, 1);
        const Channel b = random_channel(2, 3, 2);
        CHECK((a.kraus[0] - b.kraus[0]).norm() > 1e-6);
    }
}

TEST_CASE("channel mixtures") {
    Rng rng(43);
    SUBCASE("unitary mixture validates probabilities") {
        const MatrixXcd u = haar_unitary(2, rng);
        CHECK_THROWS_AS(unitary_mixture({u, u}, {0.5, 0.6}), ShapeMismatch);
        CHECK_THROWS_AS(unitary_mixture({u}, {0.5, 0.5}), ShapeMismatch);
    }
    SUBCASE("unitary mixture acts as the convex combination") {
        const MatrixXcd u = haar_unitary(2, rng);
        const MatrixXcd v = haar_unitary(2, rng);
        const Channel ch = unitary_mixture({u, v}, {0.7, 0.3});
        const MatrixXcd x = rng.gaussian_matrix(2, 2);
        const MatrixXcd expected =
            0.7 * u * x * u.adjoint() + 0.3 * v * x * v.adjoint();
        CHECK((apply_matrix(ch, x) - expected).norm() < 1e-12);
    }
    SUBCASE("mix_channels interpolates the actions") {
        const Channel a = random_channel(2, 2, rng);
        const Channel b = depolarizing_channel(2);
        const double p = 0.3;
        const Channel mix = mix_channels(a, b, p);
        CHECK(mix.trace_preserving);
        const MatrixXcd x = rng.gaussian_matrix(2, 2);
        const MatrixXcd expected = (1.0 - p) * apply_matrix(a, x) +
                                   p * apply_matrix(b, x);
        CHECK((apply_matrix(mix, x) - expected).norm() < 1e-12);
    }
    SUBCASE("apply agrees with the hand-written Kraus sum") {
        const Channel ch = random_channel(3, 3, rng);
        const MatrixXcd x = rng.gaussian_matrix(3, 3);
        CHECK((apply_matrix(ch, x) - apply_by_hand(ch.kraus, x)).norm() <
              1e-13);
    }
}
