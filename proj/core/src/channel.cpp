#include "zecap/channel.hpp"

#include <cmath>
#include <utility>

#include "zecap/errors.hpp"

namespace zecap {

namespace {

void check_same_dims(const CPMap& map, int dim, const char* what) {
    if (map.d_in != dim) {
        throw DimensionMismatch(std::string(what) + ": input has dimension " +
                                std::to_string(dim) + ", map expects " +
                                std::to_string(map.d_in));
    }
}

}  // namespace

double trace_preservation_residual(const CPMap& map) {
    MatrixXcd acc = MatrixXcd::Zero(map.d_in, map.d_in);
    for (const MatrixXcd& k : map.kraus) acc += k.adjoint() * k;
    return (acc - MatrixXcd::Identity(map.d_in, map.d_in)).norm();
}

CPMap validate_channel(std::vector<MatrixXcd> kraus) {
    if (kraus.empty()) throw EmptyKrausList();
    const Eigen::Index rows = kraus.front().rows();
    const Eigen::Index cols = kraus.front().cols();
    if (rows == 0 || cols == 0)
        throw ShapeMismatch("Kraus operators must be non-empty matrices");
    for (size_t i = 1; i < kraus.size(); ++i) {
        if (kraus[i].rows() != rows || kraus[i].cols() != cols) {
            throw ShapeMismatch(
                "Kraus operator " + std::to_string(i) + " has shape " +
                std::to_string(kraus[i].rows()) + "x" +
                std::to_string(kraus[i].cols()) + ", expected " +
                std::to_string(rows) + "x" + std::to_string(cols));
        }
    }
    CPMap map;
    map.kraus = std::move(kraus);
    map.d_in = static_cast<int>(cols);
    map.d_out = static_cast<int>(rows);
    map.trace_preserving =
        trace_preservation_residual(map) <= kTracePreservingTol;
    return map;
}

DensityOperator make_density(MatrixXcd m) {
    if (m.rows() != m.cols())
        throw NotDensityOperator("density operator must be square");
    if (hermiticity_error(m) > 1e-12)
        throw NotDensityOperator("matrix is not Hermitian within 1e-12");
    const HermitianEigen eig = hermitian_eigen(m);
    const double lambda_max = eig.values(eig.values.size() - 1);
    if (eig.values(0) < -1e-10 * std::max(lambda_max, 0.0))
        throw NotDensityOperator("matrix is not positive semidefinite");
    if (m.trace().real() <= 0.0)
        throw NotDensityOperator("trace must be positive");
    return {std::move(m), static_cast<int>(eig.values.size())};
}

DensityOperator pure_density(const VectorXcd& psi) {
    const double n = psi.norm();
    if (n <= 0.0) throw NotDensityOperator("zero state vector");
    const VectorXcd u = psi / n;
    return {u * u.adjoint(), static_cast<int>(psi.size())};
}

MatrixXcd apply_matrix(const CPMap& map, const MatrixXcd& x) {
    if (x.rows() != map.d_in || x.cols() != map.d_in)
        throw DimensionMismatch("apply_matrix: input is " +
                                std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", map expects " +
                                std::to_string(map.d_in) + "x" +
                                std::to_string(map.d_in));
    MatrixXcd out = MatrixXcd::Zero(map.d_out, map.d_out);
    for (const MatrixXcd& k : map.kraus) out += k * x * k.adjoint();
    return out;
}

DensityOperator apply(const CPMap& map, const DensityOperator& rho) {
    check_same_dims(map, rho.dim, "apply");
    MatrixXcd out = apply_matrix(map, rho.matrix);
    out = 0.5 * (out + out.adjoint().eval());
    return {std::move(out), map.d_out};
}

CPMap dual(const CPMap& map) {
    std::vector<MatrixXcd> daggered;
    daggered.reserve(map.kraus.size());
    for (const MatrixXcd& k : map.kraus) daggered.push_back(k.adjoint());
    return validate_channel(std::move(daggered));
}

CPMap compose(const CPMap& f, const CPMap& g) {
    if (g.d_out != f.d_in)
        throw DimensionMismatch("compose: inner dimensions disagree (" +
                                std::to_string(g.d_out) + " vs " +
                                std::to_string(f.d_in) + ")");
    std::vector<MatrixXcd> ops;
    ops.reserve(f.kraus.size() * g.kraus.size());
    for (const MatrixXcd& fk : f.kraus)
        for (const MatrixXcd& gk : g.kraus) ops.push_back(fk * gk);
    return validate_channel(std::move(ops));
}

CPMap tensor(const CPMap& f, const CPMap& g) {
    std::vector<MatrixXcd> ops;
    ops.reserve(f.kraus.size() * g.kraus.size());
    for (const MatrixXcd& fk : f.kraus)
        for (const MatrixXcd& gk : g.kraus) ops.push_back(kron(fk, gk));
    return validate_channel(std::move(ops));
}

Channel random_channel(int d_in, int env_dim, Rng& rng) {
    if (d_in < 1 || env_dim < 1)
        throw DimensionMismatch("random_channel: dimensions must be >= 1");
    // V maps C^d_in into C^env (x) C^d_in; block k of rows is
    // (<k|_env (x) I) V.
    const MatrixXcd v = haar_isometry(d_in * env_dim, d_in, rng);
    std::vector<MatrixXcd> ops;
    ops.reserve(static_cast<size_t>(env_dim));
    for (int k = 0; k < env_dim; ++k)
        ops.push_back(v.middleRows(k * d_in, d_in));
    return validate_channel(std::move(ops));
}

Channel random_channel(int d_in, int env_dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_channel(d_in, env_dim, rng);
}

Channel identity_channel(int d) {
    return validate_channel({MatrixXcd::Identity(d, d)});
}

Channel depolarizing_channel(int d) {
    std::vector<MatrixXcd> ops;
    ops.reserve(static_cast<size_t>(d) * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            MatrixXcd k = MatrixXcd::Zero(d, d);
            k(i, j) = scale;
            ops.push_back(std::move(k));
        }
    }
    return validate_channel(std::move(ops));
}

Channel unitary_mixture(const std::vector<MatrixXcd>& unitaries,
                        const std::vector<double>& probs) {
    if (unitaries.empty()) throw EmptyKrausList();
    if (unitaries.size() != probs.size())
        throw ShapeMismatch("unitary_mixture: one probability per unitary");
    double total = 0.0;
    std::vector<MatrixXcd> ops;
    ops.reserve(unitaries.size());
    for (size_t i = 0; i < unitaries.size(); ++i) {
        if (probs[i] <= 0.0)
            throw ShapeMismatch("unitary_mixture: probabilities must be > 0");
        total += probs[i];
        ops.push_back(std::sqrt(probs[i]) * unitaries[i]);
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw ShapeMismatch("unitary_mixture: probabilities must sum to 1");
    return validate_channel(std::move(ops));
}

Channel mix_channels(const Channel& a, const Channel& b, double p) {
    if (a.d_in != b.d_in || a.d_out != b.d_out)
        throw DimensionMismatch("mix_channels: dimension mismatch");
    if (p < 0.0 || p > 1.0)
        throw ShapeMismatch("mix_channels: p must be in [0, 1]");
    std::vector<MatrixXcd> ops;
    ops.reserve(a.kraus.size() + b.kraus.size());
    for (const MatrixXcd& k : a.kraus) ops.push_back(std::sqrt(1.0 - p) * k);
    for (const MatrixXcd& k : b.kraus) ops.push_back(std::sqrt(p) * k);
    return validate_channel(std::move(ops));
}

}  // namespace zecap
