#include "triemit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

namespace triemit {

Eigen::Vector3d normalized_direction(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("direction vector must be nonzero");
    }
    return v / n;
}

Eigen::Vector3d EmitterGeometry::pair_vector(int j, int l) const {
    if (j < 1 || l < 1 || j > count() || l > count()) {
        throw std::invalid_argument("emitter index out of range");
    }
    return positions[static_cast<std::size_t>(j - 1)] -
           positions[static_cast<std::size_t>(l - 1)];
}

double EmitterGeometry::pair_distance(int j, int l) const {
    return pair_vector(j, l).norm();
}

DetectorSet make_detectors(std::vector<Eigen::Vector3d> directions) {
    if (directions.empty() || directions.size() > 3) {
        throw std::invalid_argument("detector set holds 1 to 3 directions");
    }
    for (auto& d : directions) {
        d = normalized_direction(d);
    }
    return DetectorSet{std::move(directions)};
}

EmitterGeometry make_equilateral(double side,
                                 const Eigen::Vector3d& plane_normal,
                                 const Eigen::Vector3d& dipole) {
    if (!(side > 0.0)) {
        throw std::invalid_argument("triangle side must be positive");
    }
    const Eigen::Vector3d normal = normalized_direction(plane_normal);
    const Eigen::Vector3d dip = normalized_direction(dipole);

    // Minimal rotation carrying z onto the requested plane normal.
    const Eigen::Quaterniond q =
        Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), normal);

    EmitterGeometry geom;
    geom.positions = {
        q * Eigen::Vector3d(0.0, 0.0, 0.0),
        q * Eigen::Vector3d(side, 0.0, 0.0),
        q * Eigen::Vector3d(0.5 * side, 0.5 * std::sqrt(3.0) * side, 0.0),
    };
    geom.dipole_direction = dip;
    return geom;
}

std::array<double, 3> direction_cosines(const EmitterGeometry& geom,
                                        const Eigen::Vector3d& detector) {
    const Eigen::Vector3d det = normalized_direction(detector);
    std::array<double, 3> cosines{};
    for (std::size_t z = 0; z < kPairOrder.size(); ++z) {
        const Eigen::Vector3d r = geom.pair_vector(kPairOrder[z][0], kPairOrder[z][1]);
        const double n = r.norm();
        if (!(n > 0.0)) {
            throw std::invalid_argument("coincident emitters have no pair direction");
        }
        cosines[z] = r.dot(det) / n;
    }
    return cosines;
}

std::array<double, 3> dipole_pair_angles(const EmitterGeometry& geom) {
    const Eigen::Vector3d d = normalized_direction(geom.dipole_direction);
    std::array<double, 3> xi{};
    for (std::size_t z = 0; z < kPairOrder.size(); ++z) {
        const Eigen::Vector3d r = geom.pair_vector(kPairOrder[z][0], kPairOrder[z][1]);
        const double n = r.norm();
        if (!(n > 0.0)) {
            throw std::invalid_argument("coincident emitters have no pair direction");
        }
        const double c = std::clamp(r.dot(d) / n, -1.0, 1.0);
        xi[z] = std::acos(c);
    }
    return xi;
}

EmitterGeometry rotated(const EmitterGeometry& geom, const Eigen::Matrix3d& rot) {
    EmitterGeometry out = geom;
    for (auto& p : out.positions) {
        p = rot * p;
    }
    out.dipole_direction = rot * geom.dipole_direction;
    return out;
}

Eigen::Vector3d inplane_direction(const EmitterGeometry& geom, double angle) {
    if (geom.count() < 3) {
        throw std::invalid_argument("in-plane directions need three emitters");
    }
    const Eigen::Vector3d e1 = normalized_direction(geom.pair_vector(2, 1));
    // Component of the (3,1) edge orthogonal to e1 spans the plane.
    const Eigen::Vector3d v31 = geom.pair_vector(3, 1);
    const Eigen::Vector3d e2 = normalized_direction(v31 - v31.dot(e1) * e1);
    return std::cos(angle) * e1 + std::sin(angle) * e2;
}

} // namespace triemit
