#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <doctest.h>

#include "zecap/campaign.hpp"
#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/cj.hpp"
#include "zecap/errors.hpp"
#include "zecap/linalg.hpp"
#include "zecap/product.hpp"
#include "zecap/rng.hpp"

using namespace zecap;
using std::complex;

namespace {

PureState basis_state(int i, int d) {
    return PureState{VectorXcd::Unit(d, i), {d}};
}

/// Oracle: the overlap computed from the explicit output density operators.
double overlap_by_hand(const Channel& ch, const VectorXcd& psi,
                       const VectorXcd& phi) {
    const DensityOperator a = apply(ch, pure_density(psi));
    const DensityOperator b = apply(ch, pure_density(phi));
    return (a.matrix.adjoint() * b.matrix).trace().real();
}

Channel noisy_qubit_channel(std::uint64_t seed) {
    Rng rng(seed);
    return mix_channels(random_channel(2, 2, rng), depolarizing_channel(2),
                        0.3);
}

LemmaInstance fixed_lemma_instance(const MatrixXcd& a2) {
    LemmaInstance inst;
    inst.n = 2;
    inst.m = 2;
    inst.k = 1;
    inst.A.push_back(MatrixXcd::Identity(2, 2));
    inst.A.push_back(a2);
    MatrixXcd b1(2, 2), b2(2, 2);
    b1 << 1, 0, 0, 1;
    b2 << 0, 1, -1, 0;
    inst.B.push_back(b1 / b1.norm());
    inst.B.push_back(b2 / b2.norm());
    return inst;
}

}  // namespace

TEST_CASE("trace_overlap reference values") {
    const Channel id = identity_channel(2);
    SUBCASE("orthogonal inputs through the identity have overlap 0") {
        CHECK(trace_overlap(id, basis_state(0, 2), basis_state(1, 2)) ==
              doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("equal inputs through the identity have overlap 1") {
        CHECK(trace_overlap(id, basis_state(0, 2), basis_state(0, 2)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("the depolarizing channel pins every overlap at 1/2") {
        const Channel dep = depolarizing_channel(2);
        Rng rng(3);
        for (int t = 0; t < 5; ++t) {
            const PureState psi{rng.unit_vector(2), {2}};
            const PureState phi{rng.unit_vector(2), {2}};
            CHECK(trace_overlap(dep, psi, phi) ==
                  doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("agrees with the density-operator oracle and is symmetric") {
        Rng rng(5);
        for (int t = 0; t < 20; ++t) {
            const Channel ch = random_channel(3, 2, rng);
            const PureState psi{rng.unit_vector(3), {3}};
            const PureState phi{rng.unit_vector(3), {3}};
            const double f = trace_overlap(ch, psi, phi);
            CHECK(f >= 0.0);
            CHECK(std::abs(f - overlap_by_hand(ch, psi.amplitudes,
                                               phi.amplitudes)) < 1e-12);
            CHECK(std::abs(f - trace_overlap(ch, phi, psi)) <= 1e-12);
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(trace_overlap(id, basis_state(0, 3),
                                      basis_state(0, 2)),
                        DimensionMismatch);
    }
}

TEST_CASE("min_overlap_search") {
    SUBCASE("identity channel reaches zero with orthogonal inputs") {
        MinOverlapOptions opts;
        opts.seed = 7;
        const MinOverlapResult r =
            min_overlap_search(identity_channel(2), opts);
        CHECK(r.value <= 1e-12);
        CHECK(std::abs(r.psi.amplitudes.dot(r.phi.amplitudes)) < 1e-6);
        CHECK(r.monotone);
    }
    SUBCASE("depolarizing channel is stuck at 1/2") {
        MinOverlapOptions opts;
        opts.seed = 7;
        const MinOverlapResult r =
            min_overlap_search(depolarizing_channel(2), opts);
        CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("returned value matches the returned pair") {
        Rng rng(9);
        for (int t = 0; t < 10; ++t) {
            const Channel ch = random_channel(2, 2 + t % 3, rng);
            MinOverlapOptions opts;
            opts.seed = derive_seed(40, t);
            const MinOverlapResult r = min_overlap_search(ch, opts);
            CHECK(r.monotone);
            CHECK(std::abs(r.value - trace_overlap(ch, r.psi, r.phi)) <=
                  1e-12);
        }
    }
    SUBCASE("deterministic in the seed") {
        const Channel ch = random_channel(3, 2, 11);
        MinOverlapOptions opts;
        opts.seed = 13;
        const MinOverlapResult a = min_overlap_search(ch, opts);
        const MinOverlapResult b = min_overlap_search(ch, opts);
        CHECK(a.value == b.value);
        CHECK((a.psi.amplitudes - b.psi.amplitudes).norm() == 0.0);
    }
}

TEST_CASE("one_shot_zero_error_positive reference verdicts") {
    SUBCASE("identity qubit is Positive with a validated witness") {
        const CapacityVerdict v =
            one_shot_zero_error_positive(identity_channel(2));
        CHECK(v.status == CapacityStatus::Positive);
        REQUIRE(v.witness.has_value());
        CHECK(v.margin <= 1e-9);
        CHECK(trace_overlap(identity_channel(2), v.witness->first,
                            v.witness->second) <= 1e-9);
        CHECK(v.dim_support == 1);
        CHECK(v.dim_complement == 3);
        CHECK(v.agreement);
    }
    SUBCASE("depolarizing qubit is Zero with margin 1/2") {
        const CapacityVerdict v =
            one_shot_zero_error_positive(depolarizing_channel(2));
        CHECK(v.status == CapacityStatus::Zero);
        CHECK(v.margin == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(v.dim_complement == 0);
        CHECK(v.agreement);
        CHECK_FALSE(v.witness.has_value());
    }
    SUBCASE("noisy mixtures stay Zero with both methods agreeing") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Channel ch = noisy_qubit_channel(seed);
            AnalysisOptions opts;
            opts.search.seed = derive_seed(seed, 1);
            opts.minimize.seed = derive_seed(seed, 2);
            const CapacityVerdict v = one_shot_zero_error_positive(ch, opts);
            CHECK(v.status == CapacityStatus::Zero);
            CHECK(v.agreement);
            CHECK(v.method == VerdictMethod::Both);
            CHECK(v.margin > 0.0);
        }
    }
    SUBCASE("verdict invariants hold across a seed sweep") {
        Rng rng(15);
        for (int t = 0; t < 40; ++t) {
            const Channel ch = varied_qubit_channel(t, rng);
            AnalysisOptions opts;
            opts.search.seed = derive_seed(500, t);
            opts.minimize.seed = derive_seed(501, t);
            const CapacityVerdict v = one_shot_zero_error_positive(ch, opts);
            if (v.status == CapacityStatus::Positive) {
                REQUIRE(v.witness.has_value());
                CHECK(trace_overlap(ch, v.witness->first,
                                    v.witness->second) <= opts.zero_tol);
            }
            if (v.status == CapacityStatus::Zero)
                CHECK(v.margin > opts.zero_tol);
        }
    }
    SUBCASE("single-route analyses report their method") {
        const Channel ch = noisy_qubit_channel(77);
        AnalysisOptions sub_only;
        sub_only.use_minimization = false;
        sub_only.search.seed = 1;
        sub_only.minimize.seed = 2;
        const CapacityVerdict vs = one_shot_zero_error_positive(ch, sub_only);
        CHECK(vs.method == VerdictMethod::SubspaceCriterion);
        CHECK_FALSE(vs.minimization_status.has_value());

        AnalysisOptions min_only;
        min_only.use_subspace = false;
        min_only.minimize.seed = 2;
        const CapacityVerdict vm = one_shot_zero_error_positive(ch, min_only);
        CHECK(vm.method == VerdictMethod::DirectMinimization);
        CHECK_FALSE(vm.subspace_status.has_value());

        AnalysisOptions none;
        none.use_subspace = false;
        none.use_minimization = false;
        CHECK_THROWS_AS(one_shot_zero_error_positive(ch, none), ConfigError);
    }
    SUBCASE("non-trace-preserving maps are rejected") {
        const CPMap half = validate_channel({0.5 * MatrixXcd::Identity(2, 2)});
        CHECK_THROWS_AS(one_shot_zero_error_positive(half),
                        NotTracePreserving);
    }
}

TEST_CASE("decompose_orthocomplement_state") {
    Rng rng(17);

    // S1: 3-dim subspace of C^4 (complement spanned by psi1);
    // S2: 2-dim subspace of C^4 (complement dimension k = 2).
    const MatrixXcd b1 = haar_unitary(4, rng).leftCols(3);
    const MatrixXcd b2 = haar_unitary(4, rng).leftCols(2);
    const Subspace s1{b1, {2, 2}};
    const Subspace s2{b2, {2, 2}};
    const MatrixXcd psi1 = orthonormal_complement(b1);
    const MatrixXcd comp2 = orthonormal_complement(b2);

    SUBCASE("a pure product term decomposes into a single pair") {
        const VectorXcd phi = b2.col(0);
        const PureState v = make_pure_state(kron_vec(psi1.col(0), phi),
                                            {4, 4});
        const auto pairs = decompose_orthocomplement_state(v, s1, s2);
        REQUIRE(pairs.size() == 1);
        const VectorXcd rebuilt =
            kron_vec(pairs[0].first, pairs[0].second);
        CHECK((rebuilt - v.amplitudes).norm() <= 1e-10);
    }
    SUBCASE("random complement states reconstruct within 1e-10") {
        for (int t = 0; t < 25; ++t) {
            VectorXcd v = VectorXcd::Zero(16);
            for (int j = 0; j < comp2.cols(); ++j)
                v += kron_vec(rng.gaussian_vector(4), comp2.col(j));
            v += kron_vec(psi1.col(0), b2 * rng.gaussian_vector(2));
            v /= v.norm();
            const PureState state = make_pure_state(v, {4, 4});
            const auto pairs =
                decompose_orthocomplement_state(state, s1, s2);
            CHECK(pairs.size() <= static_cast<size_t>(comp2.cols()) + 1);
            VectorXcd rebuilt = VectorXcd::Zero(16);
            for (const auto& [psi_t, phi_t] : pairs)
                rebuilt += kron_vec(psi_t, phi_t);
            CHECK((rebuilt - v).norm() <= 1e-10);
            // the first pairs carry the complement basis vectors directly
            for (size_t j = 0; j + 1 < pairs.size(); ++j)
                CHECK((pairs[j].second - comp2.col(j)).norm() <= 1e-12);
        }
    }
    SUBCASE("full first subspace gives the at-most-k form") {
        const Subspace full{MatrixXcd::Identity(4, 4), {2, 2}};
        VectorXcd v = VectorXcd::Zero(16);
        for (int j = 0; j < comp2.cols(); ++j)
            v += kron_vec(rng.gaussian_vector(4), comp2.col(j));
        v /= v.norm();
        const auto pairs = decompose_orthocomplement_state(
            make_pure_state(v, {4, 4}), full, s2);
        CHECK(pairs.size() <= static_cast<size_t>(comp2.cols()));
        VectorXcd rebuilt = VectorXcd::Zero(16);
        for (const auto& [psi_t, phi_t] : pairs)
            rebuilt += kron_vec(psi_t, phi_t);
        CHECK((rebuilt - v).norm() <= 1e-10);
    }
    SUBCASE("states inside the product subspace are rejected") {
        const PureState inside =
            make_pure_state(kron_vec(b1.col(0), b2.col(0)), {4, 4});
        CHECK_THROWS_AS(decompose_orthocomplement_state(inside, s1, s2),
                        NotInComplement);
    }
    SUBCASE("a first complement of dimension 2 is rejected") {
        const Subspace thin{b1.leftCols(2), {2, 2}};
        const PureState v =
            make_pure_state(kron_vec(psi1.col(0), comp2.col(0)), {4, 4});
        CHECK_THROWS_AS(decompose_orthocomplement_state(v, thin, s2),
                        ComplementTooLarge);
    }
}

TEST_CASE("submatrix_R expansion") {
    SUBCASE("all-zero A gives zero blocks") {
        LemmaInstance inst;
        inst.A = {MatrixXcd::Zero(2, 2), MatrixXcd::Zero(2, 2)};
        inst.B = {MatrixXcd::Identity(2, 2), MatrixXcd::Identity(2, 2)};
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                CHECK(submatrix_R(inst, s, t).norm() == 0.0);
    }
    SUBCASE("a single diagonal term scales B by the diagonal entries") {
        LemmaInstance inst;
        MatrixXcd a1 = MatrixXcd::Zero(2, 2);
        a1(0, 0) = 1.0;
        a1(1, 1) = 2.0;
        MatrixXcd x(2, 2);
        x << 0, 1, 1, 0;
        inst.A = {a1};
        inst.B = {x};
        CHECK((submatrix_R(inst, 0, 0) - x).norm() == 0.0);
        CHECK((submatrix_R(inst, 1, 1) - 2.0 * x).norm() == 0.0);
        CHECK(submatrix_R(inst, 0, 1).norm() == 0.0);
    }
    SUBCASE("off-diagonal blocks of a diagonal A^1 instance lie in Q") {
        Rng rng(19);
        const LemmaInstance inst = fixed_lemma_instance(
            rng.gaussian_matrix(2, 2));
        // replace A^1 by a diagonal matrix so the claim applies directly
        LemmaInstance diag_inst = inst;
        MatrixXcd d = MatrixXcd::Zero(2, 2);
        d(0, 0) = 1.0;
        d(1, 1) = 3.0;
        diag_inst.A[0] = d;
        const MatrixXcd r01 = submatrix_R(diag_inst, 0, 1);
        // R_01 has no A^1 term, so it is a multiple of B^2
        const complex<double> coeff = diag_inst.A[1](0, 1);
        CHECK((r01 - coeff * diag_inst.B[1]).norm() < 1e-14);
    }
    SUBCASE("indices are range checked") {
        LemmaInstance inst;
        inst.A = {MatrixXcd::Identity(2, 2)};
        inst.B = {MatrixXcd::Identity(2, 2)};
        CHECK_THROWS_AS(submatrix_R(inst, 2, 0), IndexOutOfRange);
        CHECK_THROWS_AS(submatrix_R(inst, 0, -1), IndexOutOfRange);
    }
}

TEST_CASE("lemma_instance_check") {
    SUBCASE("1000 random second terms never produce rank one") {
        Rng rng(21);
        for (int t = 0; t < 1000; ++t) {
            const LemmaCheckResult r =
                lemma_instance_check(fixed_lemma_instance(
                    rng.gaussian_matrix(2, 2)));
            CHECK(r.outcome == LemmaOutcome::RankNotOne);
            CHECK(r.rank != 1);
            CHECK(r.off_diag_residual <= 1e-10);
            CHECK_FALSE(r.forensic.has_value());
        }
    }
    SUBCASE("the zero-sum instance has rank 0") {
        LemmaInstance inst;
        inst.A = {MatrixXcd::Identity(2, 2), MatrixXcd::Zero(2, 2)};
        MatrixXcd b2(2, 2);
        b2 << 0, 1, -1, 0;
        inst.B = {MatrixXcd::Zero(2, 2), b2 / b2.norm()};
        const LemmaCheckResult r = lemma_instance_check(inst);
        CHECK(r.outcome == LemmaOutcome::RankNotOne);
        CHECK(r.rank == 0);
        CHECK(r.b1_is_zero);
        CHECK_FALSE(r.trace.empty());
    }
    SUBCASE("a rank-one element in Q violates the hypotheses") {
        LemmaInstance inst;
        inst.A = {MatrixXcd::Identity(2, 2), MatrixXcd::Identity(2, 2)};
        MatrixXcd rank_one = MatrixXcd::Zero(2, 2);
        rank_one(0, 0) = 1.0;
        inst.B = {MatrixXcd::Zero(2, 2), rank_one};
        CHECK_THROWS_AS(lemma_instance_check(inst), HypothesisViolation);
    }
    SUBCASE("a B^1 leaning into Q violates the hypotheses") {
        Rng rng(23);
        LemmaInstance inst = fixed_lemma_instance(rng.gaussian_matrix(2, 2));
        inst.B[0] = inst.B[1];  // B^1 now inside Q
        CHECK_THROWS_AS(lemma_instance_check(inst), HypothesisViolation);
    }
    SUBCASE("a rank-one A^1 violates the hypotheses") {
        Rng rng(25);
        LemmaInstance inst = fixed_lemma_instance(rng.gaussian_matrix(2, 2));
        inst.A[0] = MatrixXcd::Zero(2, 2);
        inst.A[0](0, 0) = 1.0;
        CHECK_THROWS_AS(lemma_instance_check(inst), HypothesisViolation);
    }
    SUBCASE("sampled instances pass their own hypothesis checks") {
        Rng rng(27);
        for (int t = 0; t < 20; ++t) {
            const int m = 2 + t % 2;
            const int k = m == 2 ? 1 : 1 + t % 3;
            const LemmaInstance inst =
                random_lemma_instance(2 + t % 2, m, k, t % 5 == 0, rng);
            const LemmaCheckResult r = lemma_instance_check(inst);
            CHECK(r.outcome == LemmaOutcome::RankNotOne);
            CHECK(static_cast<int>(inst.A.size()) == k + 1);
        }
    }
}

TEST_CASE("superactivation_analysis") {
    AnalysisOptions analysis;
    analysis.search.seed = 1;
    analysis.minimize.seed = 2;

    SUBCASE("zero-capacity qubit + qutrit pairs take the fast path") {
        Rng rng(29);
        const Channel a =
            random_zero_capacity_channel(2, 3, 1e-3, analysis, rng);
        const Channel b =
            random_zero_capacity_channel(3, 3, 1e-3, analysis, rng);
        SuperactivationOptions opts;
        opts.analysis = analysis;
        opts.seed = 31;
        const SuperactivationReport rep = superactivation_analysis({a, b},
                                                                   opts);
        CHECK(rep.conclusion == SuperactivationConclusion::TheoremFastPath);
        REQUIRE(rep.fast_path_reason.has_value());
        CHECK_FALSE(rep.joint.has_value());
        int wide = 0;
        for (int c : rep.complement_dims)
            if (c >= 2) ++wide;
        CHECK(wide <= 1);
        CHECK(rep.joint_input_dim == 6);
    }
    SUBCASE("a positive individual capacity disqualifies the question") {
        SuperactivationOptions opts;
        opts.analysis = analysis;
        const SuperactivationReport rep = superactivation_analysis(
            {identity_channel(2), depolarizing_channel(2)}, opts);
        CHECK(rep.conclusion == SuperactivationConclusion::NotApplicable);
        CHECK_FALSE(rep.joint.has_value());
    }
    SUBCASE("two depolarizing channels: explicit joint support is full") {
        SuperactivationOptions opts;
        opts.analysis = analysis;
        opts.use_fast_path = false;
        opts.seed = 33;
        const SuperactivationReport rep = superactivation_analysis(
            {depolarizing_channel(2), depolarizing_channel(2)}, opts);
        CHECK(rep.conclusion ==
              SuperactivationConclusion::NotSuperactivated);
        REQUIRE(rep.joint.has_value());
        CHECK(rep.joint->status == CapacityStatus::Zero);
        CHECK(rep.joint->dim_support == 16);
        CHECK(rep.joint->dim_complement == 0);
    }
    SUBCASE("explicit three-fold qubit joint verdicts stay Zero") {
        Rng rng(35);
        std::vector<Channel> chs;
        for (int j = 0; j < 3; ++j)
            chs.push_back(
                random_zero_capacity_channel(2, 3, 1e-3, analysis, rng));
        SuperactivationOptions opts;
        opts.analysis = analysis;
        opts.use_fast_path = false;
        opts.seed = 37;
        const SuperactivationReport rep =
            superactivation_analysis(chs, opts);
        CHECK(rep.conclusion ==
              SuperactivationConclusion::NotSuperactivated);
        REQUIRE(rep.joint.has_value());
        CHECK(rep.joint->status == CapacityStatus::Zero);
        CHECK(rep.joint_input_dim == 8);
    }
    SUBCASE("the ambient cap is enforced") {
        SuperactivationOptions opts;
        opts.analysis = analysis;
        opts.ambient_cap = 3;
        CHECK_THROWS_AS(superactivation_analysis(
                            {depolarizing_channel(2), depolarizing_channel(2)},
                            opts),
                        AmbientTooLarge);
    }
    SUBCASE("fast path obeys its own hypothesis") {
        // two unitary channels have complement dimension 3 each, so the
        // fast path must not fire; individuals are Positive though, so the
        // report lands on NotApplicable before any joint work.
        SuperactivationOptions opts;
        opts.analysis = analysis;
        const SuperactivationReport rep = superactivation_analysis(
            {random_channel(2, 1, 39), random_channel(2, 1, 41)}, opts);
        CHECK(rep.conclusion == SuperactivationConclusion::NotApplicable);
    }
}
