#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "spinres/model.hpp"
#include "spinres/rdm.hpp"

namespace spinres {

/// Exact-diagonalization reference for small chains, independent of the
/// free-fermion pipeline. Basis states are bit strings with bit j = 1 when
/// spin j points down; periodic boundary throughout.
struct DenseGroundState {
    double energy = 0.0;
    Eigen::VectorXcd amplitudes;
    int degeneracy = 1;
    int chain_length = 0;
};

/// One Pauli string of the Hamiltonian acting on basis states: the matrix
/// element couples s to s ^ flip_mask with amplitude
/// coef * (-1)^popcount(s & sign_mask).
struct PauliTerm {
    std::uint32_t flip_mask = 0;
    std::uint32_t sign_mask = 0;
    double coef = 0.0;
};

/// Hamiltonian terms for a periodic chain of length L. Requires 2 <= L <= 14,
/// and L >= 3 whenever alpha != 0 (the three-spin term needs distinct sites).
std::vector<PauliTerm> hamiltonian_terms(const ModelParams& params, int L);

/// Full 2^L x 2^L real symmetric matrix of the Hamiltonian.
Eigen::MatrixXd dense_hamiltonian(const ModelParams& params);

/// y += H x without forming the matrix.
void apply_hamiltonian(const std::vector<PauliTerm>& terms, const Eigen::VectorXd& x,
                       Eigen::VectorXd& y);

/// Lowest eigenpair of a symmetric matrix. Degenerate levels (within 1e-8
/// relative gap) are resolved toward the spin-flip-even sector.
DenseGroundState ground_state(const Eigen::MatrixXd& hamiltonian);

/// Ground state of the model: dense solve for L <= 12, matrix-free subspace
/// iteration for L = 13, 14.
DenseGroundState ground_state(const ModelParams& params);

/// Two-site reduced density matrix of sites i and j (row index 2a + b with
/// a, b the spin states of i and j; 0 = up).
Eigen::Matrix4cd two_site_rdm(const DenseGroundState& state, int i, int j);

/// Magnetization and spin correlators extracted from a two-site density
/// matrix by Pauli traces.
Correlators correlators_from_rdm(const Eigen::Matrix4cd& rho, int distance);

/// Matches the two-site matrix against the X-state layout and extracts its
/// five independent elements; off-pattern entries above tol raise
/// InternalConsistencyError.
TwoSiteState x_state_from_rdm(const Eigen::Matrix4cd& rho, int distance, double tol = 1e-8);

}  // namespace spinres
