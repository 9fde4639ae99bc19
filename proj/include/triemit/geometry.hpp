// geometry.hpp — Emitter positions, detector directions, and the angle
// cosines entering the interference phase factors.

#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace triemit {

// Positions are stored dimensionless as u_j = omega0 * r_j / c; a pair
// separation u corresponds to r/lambda = u / (2 pi).
struct EmitterGeometry {
    std::vector<Eigen::Vector3d> positions; // u_j = omega0 r_j / c
    Eigen::Vector3d dipole_direction;       // common unit dipole orientation

    int count() const { return static_cast<int>(positions.size()); }

    // u_j - u_l for 1-based emitter indices
    Eigen::Vector3d pair_vector(int j, int l) const;
    double pair_distance(int j, int l) const;
};

// Canonical pair ordering; zeta = 1,2,3 refers to (2,1),(3,1),(3,2).
inline constexpr std::array<std::array<int, 2>, 3> kPairOrder{{{2, 1}, {3, 1}, {3, 2}}};

// Far-field detectors: only the unit direction enters the phases.
struct DetectorSet {
    std::vector<Eigen::Vector3d> directions; // 1 to 3 unit vectors
};

DetectorSet make_detectors(std::vector<Eigen::Vector3d> directions);

// Equilateral triangle of side u (dimensionless), canonically at
//   atom1 = (0,0,0), atom2 = (u,0,0), atom3 = (u/2, u*sqrt(3)/2, 0)
// in the plane orthogonal to plane_normal: the canonical triangle is rotated
// by the minimal rotation carrying z onto plane_normal, so the first edge maps
// to a deterministic in-plane axis.
EmitterGeometry make_equilateral(double side,
                                 const Eigen::Vector3d& plane_normal,
                                 const Eigen::Vector3d& dipole);

// cos(theta^zeta) = rhat_jl . det for the pairs (2,1),(3,1),(3,2).
std::array<double, 3> direction_cosines(const EmitterGeometry& geom,
                                        const Eigen::Vector3d& detector);

// Angles xi_jl between the dipole orientation and rhat_jl, same pair order.
std::array<double, 3> dipole_pair_angles(const EmitterGeometry& geom);

// Geometry with all positions and the dipole rotated by rot.
EmitterGeometry rotated(const EmitterGeometry& geom, const Eigen::Matrix3d& rot);

// Unit vector in the triangle plane at `angle` from the first edge direction,
// measured towards the in-plane direction of atom 3.
Eigen::Vector3d inplane_direction(const EmitterGeometry& geom, double angle);

// Throws std::invalid_argument on zero-length input.
Eigen::Vector3d normalized_direction(const Eigen::Vector3d& v);

} // namespace triemit
