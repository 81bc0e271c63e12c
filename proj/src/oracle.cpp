#include "spinres/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <random>

namespace spinres {

namespace {

constexpr int kMaxChainLength = 14;
constexpr int kMaxDenseLength = 12;

int require_length(const ModelParams& params) {
    if (!params.chain_length) throw ConfigError("oracle: chain_length is required");
    const int L = *params.chain_length;
    if (L > kMaxChainLength)
        throw CapacityError("oracle: chain_length " + std::to_string(L) + " exceeds capacity " +
                            std::to_string(kMaxChainLength));
    if (L < 2) throw ConfigError("oracle: chain_length must be >= 2");
    if (params.alpha != 0.0 && L < 3)
        throw ConfigError("oracle: three-spin interactions need chain_length >= 3");
    return L;
}

double sign_of(std::uint32_t s, std::uint32_t mask) {
    return std::popcount(s & mask) % 2 == 0 ? 1.0 : -1.0;
}

// Spin-flip parity operator Prod_j sigma^z_j is diagonal with entries
// (-1)^popcount(s); used to resolve degenerate ground levels.
double flip_parity(std::uint32_t s) { return std::popcount(s) % 2 == 0 ? 1.0 : -1.0; }

DenseGroundState resolve_degeneracy(const std::vector<Eigen::VectorXd>& basis, double energy,
                                    int L) {
    DenseGroundState out;
    out.energy = energy;
    out.chain_length = L;
    out.degeneracy = static_cast<int>(basis.size());

    if (basis.size() == 1) {
        out.amplitudes = basis[0].cast<std::complex<double>>();
        return out;
    }

    // restrict the parity operator to the degenerate span and take its top
    // eigenvector: the spin-flip-even combination
    const int d = static_cast<int>(basis.size());
    Eigen::MatrixXd m(d, d);
    for (int a = 0; a < d; ++a) {
        Eigen::VectorXd pb = basis[static_cast<std::size_t>(a)];
        for (Eigen::Index s = 0; s < pb.size(); ++s)
            pb[s] *= flip_parity(static_cast<std::uint32_t>(s));
        for (int b = 0; b < d; ++b)
            m(b, a) = basis[static_cast<std::size_t>(b)].dot(pb);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd combo = es.eigenvectors().col(d - 1);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis[0].size());
    for (int a = 0; a < d; ++a) v += combo[a] * basis[static_cast<std::size_t>(a)];
    v.normalize();
    // fix the overall sign for reproducibility
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    out.amplitudes = v.cast<std::complex<double>>();
    return out;
}

}  // namespace

std::vector<PauliTerm> hamiltonian_terms(const ModelParams& params, int L) {
    std::vector<PauliTerm> terms;
    terms.reserve(static_cast<std::size_t>(5 * L));
    auto bit = [](int j) { return std::uint32_t{1} << j; };
    for (int j = 0; j < L; ++j) {
        const int jp = (j + 1) % L;
        const int jm = (j - 1 + L) % L;
        // -(1+gamma)/2 sx_j sx_{j+1}
        terms.push_back({bit(j) | bit(jp), 0, -(1.0 + params.gamma) / 2.0});
        // -(1-gamma)/2 sy_j sy_{j+1}  ->  +(1-gamma)/2 with z-signs on both sites
        terms.push_back({bit(j) | bit(jp), bit(j) | bit(jp), (1.0 - params.gamma) / 2.0});
        // -lambda sz_j
        terms.push_back({0, bit(j), -params.lambda});
        if (params.alpha != 0.0) {
            // -alpha (1+delta)/2 sz_j sx_{j-1} sx_{j+1}
            terms.push_back({bit(jm) | bit(jp), bit(j), -params.alpha * (1.0 + params.delta) / 2.0});
            // -alpha (1-delta)/2 sz_j sy_{j-1} sy_{j+1}
            terms.push_back({bit(jm) | bit(jp), bit(jm) | bit(j) | bit(jp),
                             params.alpha * (1.0 - params.delta) / 2.0});
        }
    }
    return terms;
}

Eigen::MatrixXd dense_hamiltonian(const ModelParams& params) {
    const int L = require_length(params);
    const auto terms = hamiltonian_terms(params, L);
    const Eigen::Index dim = Eigen::Index{1} << L;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s)
        for (const PauliTerm& t : terms)
            h(s ^ t.flip_mask, s) += t.coef * sign_of(s, t.sign_mask);
    return h;
}

void apply_hamiltonian(const std::vector<PauliTerm>& terms, const Eigen::VectorXd& x,
                       Eigen::VectorXd& y) {
    y.setZero();
    const auto dim = static_cast<std::uint32_t>(x.size());
    for (const PauliTerm& t : terms)
        for (std::uint32_t s = 0; s < dim; ++s)
            y[s ^ t.flip_mask] += t.coef * sign_of(s, t.sign_mask) * x[s];
}

DenseGroundState ground_state(const Eigen::MatrixXd& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw ConfigError("ground_state: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw NumericalError("ground_state: eigensolver failed to converge");

    const Eigen::VectorXd& w = es.eigenvalues();
    const double e0 = w[0];
    const double gap_tol = 1e-8 * std::max(1.0, std::abs(e0));
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index i = 0; i < w.size() && w[i] <= e0 + gap_tol; ++i)
        basis.push_back(es.eigenvectors().col(i));

    int L = 0;
    while ((Eigen::Index{1} << L) < hamiltonian.rows()) ++L;
    return resolve_degeneracy(basis, e0, L);
}

namespace {

struct Eigenpair {
    double value;
    Eigen::VectorXd vector;
};

// Lanczos with full reorthogonalization, deflated against already-found
// eigenvectors; restarted from the Ritz vector until the residual converges.
Eigenpair lanczos_lowest(const std::vector<PauliTerm>& terms, Eigen::Index dim,
                         const std::vector<Eigen::VectorXd>& deflate, double resid_tol,
                         unsigned seed) {
    constexpr int kKrylov = 256;
    constexpr int kRestarts = 20;

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd start(dim);
    for (Eigen::Index s = 0; s < dim; ++s) start[s] = gauss(rng);
    for (const auto& d : deflate) start -= d.dot(start) * d;
    start.normalize();

    Eigen::VectorXd w(dim);
    Eigenpair best{0.0, start};
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<Eigen::VectorXd> basis{best.vector};
        std::vector<double> diag, offdiag;
        for (int k = 0; k < kKrylov; ++k) {
            apply_hamiltonian(terms, basis.back(), w);
            const double alpha = basis.back().dot(w);
            diag.push_back(alpha);
            w -= alpha * basis.back();
            if (k > 0) w -= offdiag.back() * basis[basis.size() - 2];
            for (const auto& d : deflate) w -= d.dot(w) * d;
            for (const auto& b : basis) w -= b.dot(w) * b;  // full reorthogonalization
            const double beta = w.norm();
            if (beta < 1e-12) break;
            offdiag.push_back(beta);
            basis.push_back(w / beta);
        }
        const int k = static_cast<int>(diag.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            tri(i, i) = diag[static_cast<std::size_t>(i)];
            if (i + 1 < k) {
                tri(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
                tri(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < k; ++i)
            v += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
        for (const auto& d : deflate) v -= d.dot(v) * d;
        v.normalize();
        best = {es.eigenvalues()[0], v};

        apply_hamiltonian(terms, best.vector, w);
        if ((w - best.value * best.vector).norm() <= resid_tol) return best;
    }
    throw NumericalError("ground_state: Lanczos failed to converge");
}

DenseGroundState iterative_ground_state(const ModelParams& params, int L) {
    const auto terms = hamiltonian_terms(params, L);
    const Eigen::Index dim = Eigen::Index{1} << L;

    double scale = 0.0;
    for (const PauliTerm& t : terms) scale += std::abs(t.coef);
    const double resid_tol = 1e-9 * std::max(1.0, scale);

    // find the lowest level and any degenerate partners by deflation
    std::vector<Eigen::VectorXd> found;
    std::vector<double> values;
    constexpr int kMaxLevel = 4;
    for (int level = 0; level < kMaxLevel; ++level) {
        const Eigenpair p =
            lanczos_lowest(terms, dim, found, resid_tol, 7771u + static_cast<unsigned>(level));
        const double gap_tol = 1e-8 * std::max(1.0, std::abs(values.empty() ? p.value : values[0]));
        if (!values.empty() && p.value > values[0] + gap_tol) break;
        found.push_back(p.vector);
        values.push_back(p.value);
    }
    return resolve_degeneracy(found, values[0], L);
}

}  // namespace

DenseGroundState ground_state(const ModelParams& params) {
    const int L = require_length(params);
    if (L <= kMaxDenseLength) return ground_state(dense_hamiltonian(params));
    return iterative_ground_state(params, L);
}

Eigen::Matrix4cd two_site_rdm(const DenseGroundState& state, int i, int j) {
    const int L = state.chain_length;
    if (i == j || i < 0 || j < 0 || i >= L || j >= L)
        throw ConfigError("two_site_rdm: site indices out of range");

    const auto dim = static_cast<std::uint32_t>(state.amplitudes.size());
    const std::uint32_t bi = std::uint32_t{1} << i;
    const std::uint32_t bj = std::uint32_t{1} << j;

    // group amplitudes by the configuration of the traced-out sites
    const std::uint32_t rest_dim = dim >> 2;
    std::vector<std::array<std::complex<double>, 4>> blocks(rest_dim, {0.0, 0.0, 0.0, 0.0});
    for (std::uint32_t s = 0; s < dim; ++s) {
        const int a = (s & bi) ? 1 : 0;
        const int b = (s & bj) ? 1 : 0;
        std::uint32_t rest = 0;
        int pos = 0;
        for (int k = 0; k < L; ++k) {
            if (k == i || k == j) continue;
            if (s & (std::uint32_t{1} << k)) rest |= std::uint32_t{1} << pos;
            ++pos;
        }
        blocks[rest][static_cast<std::size_t>(2 * a + b)] = state.amplitudes[s];
    }

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (const auto& blk : blocks)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
                rho(p, q) += blk[static_cast<std::size_t>(p)] *
                             std::conj(blk[static_cast<std::size_t>(q)]);
    return rho;
}

Correlators correlators_from_rdm(const Eigen::Matrix4cd& rho, int distance) {
    Correlators c;
    c.distance = distance;
    // <sz x I>, <sx sx>, <sy sy>, <sz sz> by direct Pauli traces
    c.mag_z = std::real(rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3));
    c.xx = 2.0 * std::real(rho(3, 0) + rho(2, 1));
    c.yy = 2.0 * std::real(rho(2, 1) - rho(3, 0));
    c.zz = std::real(rho(0, 0) - rho(1, 1) - rho(2, 2) + rho(3, 3));
    return c;
}

TwoSiteState x_state_from_rdm(const Eigen::Matrix4cd& rho, int distance, double tol) {
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
            const bool on_pattern = p == q || p + q == 3;
            if (!on_pattern && std::abs(rho(p, q)) > tol)
                throw InternalConsistencyError("x_state_from_rdm: off-pattern element");
            if (std::abs(std::imag(rho(p, q))) > tol)
                throw InternalConsistencyError("x_state_from_rdm: complex element");
        }
    TwoSiteState s;
    s.distance = distance;
    s.u_plus = std::real(rho(0, 0));
    s.u_minus = std::real(rho(3, 3));
    s.z_diag = 0.5 * std::real(rho(1, 1) + rho(2, 2));
    s.y_plus = 0.5 * std::real(rho(1, 2) + rho(2, 1));
    s.y_minus = 0.5 * std::real(rho(0, 3) + rho(3, 0));
    return s;
}

}  // namespace spinres
