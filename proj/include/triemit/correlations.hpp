// correlations.hpp — Far-zone first-, second-, and third-order photon
// correlation functions of the scattered light, their closed-form thermal
// steady-state specializations, and the Dicke-limit formulas.
//
// Amplitude prefactors (Phi_R and the kappa products) cancel in every
// normalized quantity and are never computed; G1 is reported as G1/Phi_R.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "triemit/geometry.hpp"
#include "triemit/parallel.hpp"

namespace triemit {

enum class CorrelationKind { G1OverPhi, G2, G3 };

struct CorrelationResult {
    double value = 0.0;
    CorrelationKind kind = CorrelationKind::G2;
    DetectorSet detectors;
    double nbar = 0.0;
    double separation = 0.0; // triangle side u, echoed for reports

    // Intensities are nonnegative: value >= -1e-10 or this throws.
    void validate() const;
};

// Dispatches to g1/g2/g3 by kind; the detector count must match (1, 2, 3).
CorrelationResult evaluate_correlation(CorrelationKind kind,
                                       const Eigen::MatrixXcd& rho_bare,
                                       const EmitterGeometry& geom,
                                       const DetectorSet& detectors, double nbar);

// Equal-time emitter moment tensors computed as traces against a bare-basis
// state: single <S+_j S-_l>, fourth-order <S+_{j1} S+_{j2} S-_{l2} S-_{l1}>,
// and sixth-order <S+_{j1} S+_{j2} S+_{j3} S-_{l3} S-_{l2} S-_{l1}>.
struct MomentTable {
    int n = 0;
    Eigen::MatrixXcd single;
    std::vector<std::complex<double>> fourth; // index ((j1 n + j2) n + l2) n + l1
    std::vector<std::complex<double>> sixth;  // analogous, six indices

    std::complex<double> m4(int j1, int j2, int l2, int l1) const;
    std::complex<double> m6(int j1, int j2, int j3, int l3, int l2, int l1) const;
};

MomentTable build_moment_table(const Eigen::MatrixXcd& rho_bare);

// G1(R)/Phi_R = sum_jl exp(i u_jl . Rhat) <S+_j S-_l>
double g1_steady(const Eigen::MatrixXcd& rho_bare, const EmitterGeometry& geom,
                 const Eigen::Vector3d& det);

// Normalized equal-time correlations from the full moment sums.
double g2_general(const Eigen::MatrixXcd& rho_bare, const EmitterGeometry& geom,
                  const Eigen::Vector3d& det1, const Eigen::Vector3d& det2);
double g3_general(const Eigen::MatrixXcd& rho_bare, const EmitterGeometry& geom,
                  const Eigen::Vector3d& det1, const Eigen::Vector3d& det2,
                  const Eigen::Vector3d& det3);

// Same quantities evaluated from a precomputed moment table.
double g1_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det);
double g2_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det1, const Eigen::Vector3d& det2);
double g3_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det1, const Eigen::Vector3d& det2,
                       const Eigen::Vector3d& det3);

// Closed-form cosine transcriptions valid for the thermal steady state of the
// three-emitter sample; independent of nbar by construction.
double g2_thermal_closed(const EmitterGeometry& geom, const Eigen::Vector3d& det1,
                         const Eigen::Vector3d& det2);
double g3_thermal_closed(const EmitterGeometry& geom, const Eigen::Vector3d& det1,
                         const Eigen::Vector3d& det2, const Eigen::Vector3d& det3);

// Detector named moments of the thermal steady state.
struct CorrelatorTable {
    Eigen::Matrix3cd single;                      // <S+_j S-_l>
    std::array<std::complex<double>, 3> pair;     // <n_1 n_2>, <n_1 n_3>, <n_2 n_3>
    std::complex<double> triple;                  // <S+_1 S+_2 S+_3 S-_3 S-_2 S-_1>
    double r88 = 0.0;                             // <R_88>
    double max_cross = 0.0;                       // largest unbalanced moment
};

CorrelatorTable correlator_table(const Eigen::MatrixXcd& rho_bare);

// Two symmetric detectors scanned against x = sqrt(3) u / 2:
// g2 = (2/9)(3 + cos 2x + 2 cos x).
double scenario_g2_fig3(double x);
// Three symmetric detectors: g3 = (2/27)(7 + 3 cos 2x + 6 cos x + 2 cos 3x).
double scenario_g3_fig3(double x);

// Detector directions realizing the scenario formulas on a given triangle:
// a pair mirrored about the in-plane bisector, and the triple completing it.
std::array<Eigen::Vector3d, 2> symmetric_detector_pair(const EmitterGeometry& geom);
std::array<Eigen::Vector3d, 3> symmetric_detector_triple(const EmitterGeometry& geom);

// Dicke-limit closed forms (nbar > 0 required; normalization degenerates at
// zero temperature).
double dicke_g2(double nbar);
double dicke_g3(double nbar);
double dicke_ratio(double nbar);     // g2/g3
double dicke_intensity(double nbar); // G1/Phi_R

// Batched evaluation over many detector placements from one state; rows are
// independent, so serial and parallel execution produce identical bytes.
std::vector<double> g2_batch(const Eigen::MatrixXcd& rho_bare,
                             const EmitterGeometry& geom,
                             const std::vector<std::array<Eigen::Vector3d, 2>>& pairs,
                             Exec exec = Exec::Parallel);
std::vector<double> g3_batch(const Eigen::MatrixXcd& rho_bare,
                             const EmitterGeometry& geom,
                             const std::vector<std::array<Eigen::Vector3d, 3>>& triples,
                             Exec exec = Exec::Parallel);

} // namespace triemit
