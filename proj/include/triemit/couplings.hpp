// couplings.hpp — Coherent (delta) and incoherent (chi) pair couplings of
// emitters sharing a thermal electromagnetic reservoir.

#pragma once

#include <Eigen/Dense>

#include "triemit/geometry.hpp"

namespace triemit {

// chi is dimensionless with unit diagonal; delta carries the rate unit
// (gamma already folded in). Both are symmetric. A valid chi matrix is
// positive semidefinite: it is the kernel of the collective decay dissipator.
struct CouplingSet {
    Eigen::MatrixXd chi;
    Eigen::MatrixXd delta;
    double gamma = 1.0;
    double nbar = 0.0;

    int count() const { return static_cast<int>(chi.rows()); }

    // Throws std::invalid_argument on any violated invariant
    // (shape, symmetry, unit diagonal, |chi| <= 1, PSD to -1e-10).
    void validate() const;
};

// Incoherent cross-damping coefficient for dimensionless separation
// u = omega0 r / c and dipole-pair angle xi. Exact evaluation; u = 0 is
// rejected — the Dicke limit (chi -> 1) is expressed via uniform_couplings.
double chi_pair(double u, double xi);

// Coherent dipole-dipole shift, in the units of gamma passed in.
// Diverges as u^-3; u = 0 is rejected.
double delta_pair(double u, double xi, double gamma);

// Bose-Einstein occupation 1/(e^x - 1) for x = hbar*omega0/(kB*T) > 0.
double thermal_occupation(double x);

// Single-emitter spontaneous decay rate 4 d^2 omega0^3 / (3 hbar c^3),
// for callers that want physical units; everything else treats gamma as
// the rate unit.
double decay_rate_from_dipole(double dipole_moment, double omega0,
                              double hbar, double c);

// Pairwise couplings from geometry. Diagonal chi = 1, diagonal delta = 0
// (the Lamb shift is absorbed into the transition frequency).
CouplingSet build_couplings(const EmitterGeometry& geom, double gamma, double nbar);

// Uniform off-diagonal overrides, decoupled from any geometry. chi = 1 with
// arbitrary delta expresses the Dicke limit; other values support parameter
// scans. Validation still applies (chi in [-1/2, 1] for n = 3).
CouplingSet uniform_couplings(int n, double chi, double delta,
                              double gamma, double nbar);

} // namespace triemit
