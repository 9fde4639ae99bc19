// dynamics.hpp — Master-equation generator in bare and collective form,
// steady states, transients, the reduced population ODE system, and the
// analytic steady-state populations.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "triemit/algebra.hpp"
#include "triemit/couplings.hpp"

namespace triemit {

enum class OperatorBasis { Bare, Collective };

// Dense generator acting on column-stacked density matrices. Works in a
// rotating frame at omega0: the free qubit Hamiltonian is dropped (it commutes
// with the excitation-number structure and affects no population or
// equal-time correlation); the dipole-dipole shift is kept.
struct Liouvillian {
    Eigen::MatrixXcd matrix; // D^2 x D^2
    int dim = 0;             // D = 2^N
    OperatorBasis basis = OperatorBasis::Bare;
    double gamma = 1.0;
    double nbar = 0.0;
};

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim);

// |g...g><g...g|
Eigen::MatrixXcd ground_state(int dim);

// Hermiticity, unit trace, and spectrum >= -tol_pos. Violations throw.
void validate_density_matrix(const Eigen::MatrixXcd& rho,
                             double tol_herm = 1e-12,
                             double tol_trace = 1e-12,
                             double tol_pos = 1e-10);

// General-N generator from pairwise couplings (rejects non-PSD chi).
Liouvillian build_generator_bare(const CouplingSet& couplings);

// Three-emitter generator from the composite channels with weights
// 3(1+2chi), 2(1-chi), 6(1-chi), in the collective basis.
Liouvillian build_generator_collective(double gamma, double nbar,
                                       double chi, double delta);

// Rewrites a collective-basis generator in the bare basis (or returns the
// input unchanged when already bare).
Liouvillian to_bare_basis(const Liouvillian& lv, const CollectiveBasis& basis);

struct SteadyStateResult {
    Eigen::MatrixXcd rho;
    int null_dimension = 0;
};

// Trace-1 kernel element of L via SVD (threshold 1e-10 relative to the top
// singular value). With a degenerate kernel the returned state is the
// long-time limit from the ground state.
SteadyStateResult steady_state(const Liouvillian& lv);

// exp(L t) rho0 by dense exponential for D <= 8, adaptive embedded RK
// otherwise. Throws on integrator step-size failure.
Eigen::MatrixXcd evolve(const Liouvillian& lv, const Eigen::MatrixXcd& rho0, double t);

// Long-time limit from the ground state by repeated step doubling; used for
// degenerate kernels and exposed for the Dicke-limit dynamics.
Eigen::MatrixXcd long_time_from_ground(const Liouvillian& lv);

// Smallest nonzero |Re eigenvalue| of L.
double spectral_gap(const Liouvillian& lv);

// Collective-basis populations p1..p8 plus the two coherences that close the
// population equations of motion.
struct ReducedState {
    std::array<double, 8> populations{};
    std::complex<double> r32{0.0, 0.0}; // <R_32>
    std::complex<double> r65{0.0, 0.0}; // <R_65>
};

// The twelve scalar right-hand sides of the reduced system.
ReducedState reduced_rhs(const ReducedState& s, double gamma, double nbar,
                         double chi, double delta);

ReducedState project_reduced(const Eigen::MatrixXcd& rho_collective);
Eigen::MatrixXcd embed_reduced(const ReducedState& s);

// Steady-state populations of the extended sample (chi != 1), independent of
// chi, delta and gamma. Requires nbar > 0.
std::array<double, 8> analytic_steady_extended(double nbar);

// Steady-state populations on the symmetric states {1,2,5,8} in the Dicke
// limit. Requires nbar > 0.
std::array<double, 4> analytic_steady_dicke(double nbar);

} // namespace triemit
