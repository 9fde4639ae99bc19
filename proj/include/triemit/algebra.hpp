// algebra.hpp — Bare-basis qubit ladder operators, the three-emitter
// collective (Dicke) basis, collective projectors, composite jump channels,
// and the collective-basis Hamiltonian.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace triemit {

enum class Ladder { Raise, Lower, Inversion };

// Tensor-product embedding of a single-qubit operator at slot j (1-based).
// The bare product basis is little-endian on the emitters: basis index b has
// emitter j excited iff bit (j-1) of b is set.
Eigen::MatrixXcd ladder(int n_emitters, int j, Ladder kind);

// Total excitation number, diagonal in the bare basis.
Eigen::MatrixXcd excitation_number(int n_emitters);

// Collective basis for three emitters. Rows of `transform` are the collective
// states |1>..|8| expressed in the bare product basis, so a bare operator A
// maps to transform * A * transform.adjoint().
struct CollectiveBasis {
    Eigen::MatrixXcd transform; // 8x8, unitary, real entries

    static constexpr std::array<int, 4> symmetric{1, 2, 5, 8};
    static constexpr std::array<int, 4> antisymmetric{3, 4, 6, 7};

    Eigen::MatrixXcd to_collective(const Eigen::MatrixXcd& bare_op) const;
    Eigen::MatrixXcd to_bare(const Eigen::MatrixXcd& collective_op) const;

    // R_{alpha beta} = |alpha><beta| in the bare basis (1-based labels).
    Eigen::MatrixXcd projector_bare(int alpha, int beta) const;
};

CollectiveBasis dicke_basis();

// R_{alpha beta} in the collective basis: the elementary matrix (1-based).
Eigen::MatrixXcd collective_projector(int alpha, int beta);

// Max deviation over j of || U S+_j U^H  -  printed R-sum for S+_j ||_inf.
// The printed sums are transcription fixtures, never the construction path.
double collective_decomposition_check();

// H = H_q + H_dd in the collective basis: manifold energies omega0, 2 omega0,
// 3 omega0, with dipole shifts -2 delta on |2>,|5> and +delta on the
// antisymmetric states.
Eigen::MatrixXcd hamiltonian(double omega0, double delta);

// Dipole-shift part alone (the omega0-independent piece of the above).
Eigen::MatrixXcd dipole_shift_hamiltonian(double delta);

struct JumpOperatorPair {
    Eigen::MatrixXcd raising; // R^+_k, collective basis
    Eigen::MatrixXcd lowering; // R^-_k = (R^+_k)^H
};

// The three composite decay channels of the equilateral three-emitter sample,
// in the collective basis. Channel weights 3(1+2chi), 2(1-chi), 6(1-chi)
// diagonalize the chi matrix of a symmetric triangle.
std::array<JumpOperatorPair, 3> symmetric_jump_operators();

} // namespace triemit
