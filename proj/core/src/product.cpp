#include "zecap/product.hpp"

#include <algorithm>
#include <cmath>

#include "zecap/errors.hpp"
#include "zecap/rng.hpp"

namespace zecap {

namespace {

void require_bipartite(const std::vector<int>& dims, const char* what) {
    if (dims.size() != 2)
        throw NotBipartite(std::string(what) + ": state must carry exactly "
                           "two subsystem dimensions, got " +
                           std::to_string(dims.size()));
}

long long dims_product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

struct AscentOutcome {
    VectorXcd a, b;
    double objective = 0.0;
    bool monotone = true;
};

/// One multistart run of the alternating maximization. mats holds the
/// reshaped basis vectors W_l (d_a x d_b each); basis is the subspace basis
/// matrix used to evaluate the objective as a projection norm.
AscentOutcome alternate_ascent(const MatrixXcd& basis,
                               const std::vector<MatrixXcd>& mats, int d_a,
                               int d_b, Rng& rng, int max_iter,
                               double conv_tol) {
    AscentOutcome out;
    out.a = rng.unit_vector(d_a);
    out.b = rng.unit_vector(d_b);

    const auto objective = [&](const VectorXcd& a, const VectorXcd& b) {
        return (basis.adjoint() * kron_vec(a, b)).squaredNorm();
    };

    double f = objective(out.a, out.b);
    for (int it = 0; it < max_iter; ++it) {
        // Fixing a, f(b) = b^dag M b with M = sum_l conj(u_l) u_l^T and
        // u_l = W_l^dag a; the optimum is the top eigenvector. Then the
        // symmetric step in a.
        MatrixXcd m_b = MatrixXcd::Zero(d_b, d_b);
        for (const MatrixXcd& w : mats) {
            const VectorXcd u = (w.adjoint() * out.a).conjugate();
            m_b.noalias() += u * u.adjoint();
        }
        out.b = top_eigenvector(m_b);

        MatrixXcd m_a = MatrixXcd::Zero(d_a, d_a);
        for (const MatrixXcd& w : mats) {
            const VectorXcd v = (w.conjugate() * out.b).conjugate();
            m_a.noalias() += v * v.adjoint();
        }
        out.a = top_eigenvector(m_a);

        const double f_new = objective(out.a, out.b);
        if (f_new < f - 1e-14) out.monotone = false;
        const double gain = f_new - f;
        f = f_new;
        if (gain < conv_tol) break;
    }
    out.objective = f;
    return out;
}

}  // namespace

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "Found";
        case SearchStatus::NotFound: return "NotFound";
        case SearchStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

PureState make_pure_state(VectorXcd amplitudes, std::vector<int> dims) {
    if (dims_product(dims) != amplitudes.size())
        throw DimensionMismatch(
            "make_pure_state: dims do not factor the amplitude length");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
        throw DimensionMismatch("make_pure_state: state is not normalized");
    return {std::move(amplitudes), std::move(dims)};
}

MatrixXcd state_to_matrix(const PureState& v) {
    require_bipartite(v.dims, "state_to_matrix");
    const int d_a = v.dims[0];
    const int d_b = v.dims[1];
    MatrixXcd m(d_a, d_b);
    for (int i = 0; i < d_a; ++i)
        m.row(i) = v.amplitudes.segment(i * d_b, d_b).transpose();
    return m;
}

PureState matrix_to_state(const MatrixXcd& m) {
    const int d_a = static_cast<int>(m.rows());
    const int d_b = static_cast<int>(m.cols());
    VectorXcd amps(static_cast<Eigen::Index>(d_a) * d_b);
    for (int i = 0; i < d_a; ++i)
        amps.segment(i * d_b, d_b) = m.row(i).transpose();
    return {std::move(amps), {d_a, d_b}};
}

Eigen::VectorXd schmidt_values(const PureState& v) {
    return singular_values(state_to_matrix(v));
}

std::optional<ProductWitness> is_product(const PureState& v, double tol) {
    require_bipartite(v.dims, "is_product");
    Eigen::JacobiSVD<MatrixXcd> svd(state_to_matrix(v),
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(0) <= 0.0) return std::nullopt;
    if (sv.size() > 1 && sv(1) / sv(0) > tol) return std::nullopt;
    // With W = U S V^dag the state reads sum_k s_k u_k (x) conj(v_k).
    ProductWitness w;
    w.a = normalize_phase(svd.matrixU().col(0));
    w.b = normalize_phase(svd.matrixV().col(0).conjugate());
    return w;
}

ProductSearchResult find_product_in_subspace(const Subspace& s,
                                             const ProductSearchOptions& opts) {
    require_bipartite(s.dims, "find_product_in_subspace");
    const int d_a = s.dims[0];
    const int d_b = s.dims[1];
    ProductSearchResult res;

    if (s.dim() == 0) {
        res.status = SearchStatus::NotFound;
        res.objective = 0.0;
        return res;
    }

    if (s.dim() == 1) {
        // The maximum of |<w, a (x) b>|^2 over unit product vectors is the
        // leading Schmidt coefficient squared: exact, no search.
        const PureState w = {s.basis.col(0), s.dims};
        Eigen::JacobiSVD<MatrixXcd> svd(
            state_to_matrix(w), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        res.objective = sv(0) * sv(0);
        if (res.objective >= 1.0 - opts.found_tol) {
            res.status = SearchStatus::Found;
            res.witness = ProductWitness{
                normalize_phase(svd.matrixU().col(0)),
                normalize_phase(svd.matrixV().col(0).conjugate())};
        } else {
            res.status = SearchStatus::NotFound;
        }
        return res;
    }

    std::vector<MatrixXcd> mats;
    mats.reserve(static_cast<size_t>(s.dim()));
    for (int l = 0; l < s.dim(); ++l)
        mats.push_back(state_to_matrix({s.basis.col(l), s.dims}));

    double best = -1.0;
    VectorXcd best_a, best_b;
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
        AscentOutcome run = alternate_ascent(s.basis, mats, d_a, d_b, rng,
                                             opts.max_iter, opts.conv_tol);
        if (!run.monotone) res.monotone = false;
        if (run.objective > best) {
            best = run.objective;
            best_a = run.a;
            best_b = run.b;
        }
        res.restarts_used = r + 1;
        if (best >= 1.0 - opts.found_tol) break;
    }

    res.objective = std::max(best, 0.0);
    if (res.objective >= 1.0 - opts.found_tol) {
        res.status = SearchStatus::Found;
        res.witness =
            ProductWitness{normalize_phase(best_a), normalize_phase(best_b)};
    } else if (res.objective > 1.0 - kInconclusiveBand) {
        res.status = SearchStatus::Inconclusive;
    } else {
        res.status = SearchStatus::NotFound;
    }
    return res;
}

long max_entangled_subspace_dim(int d_a, int d_b, int r) {
    if (r < 1 || r > std::min(d_a, d_b))
        throw InvalidSchmidtNumber("Schmidt number must satisfy 1 <= r <= " +
                                   std::to_string(std::min(d_a, d_b)) +
                                   ", got " + std::to_string(r));
    return static_cast<long>(d_a - r + 1) * static_cast<long>(d_b - r + 1);
}

}  // namespace zecap
