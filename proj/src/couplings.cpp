#include "triemit/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace triemit {

double chi_pair(double u, double xi) {
    if (!(u > 0.0)) {
        throw std::invalid_argument("chi_pair: separation must be positive");
    }
    const double c = std::cos(xi);
    const double c2 = c * c;
    const double su = std::sin(u);
    const double cu = std::cos(u);
    return 1.5 * ((1.0 - c2) * su / u +
                  (1.0 - 3.0 * c2) * (cu / (u * u) - su / (u * u * u)));
}

double delta_pair(double u, double xi, double gamma) {
    if (!(u > 0.0)) {
        throw std::invalid_argument("delta_pair: separation must be positive");
    }
    const double c = std::cos(xi);
    const double c2 = c * c;
    const double su = std::sin(u);
    const double cu = std::cos(u);
    return 0.75 * gamma * ((c2 - 1.0) * cu / u +
                           (1.0 - 3.0 * c2) * (su / (u * u) + cu / (u * u * u)));
}

double thermal_occupation(double x) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("thermal_occupation: requires x > 0");
    }
    return 1.0 / std::expm1(x);
}

double decay_rate_from_dipole(double dipole_moment, double omega0,
                              double hbar, double c) {
    if (!(dipole_moment > 0.0) || !(omega0 > 0.0) || !(hbar > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("decay_rate_from_dipole: inputs must be positive");
    }
    return 4.0 * dipole_moment * dipole_moment * omega0 * omega0 * omega0 /
           (3.0 * hbar * c * c * c);
}

void CouplingSet::validate() const {
    const int n = count();
    if (chi.rows() != chi.cols() || delta.rows() != n || delta.cols() != n) {
        throw std::invalid_argument("coupling matrices must be square and matched");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (nbar < 0.0) {
        throw std::invalid_argument("nbar must be nonnegative");
    }
    constexpr double tol = 1e-12;
    for (int j = 0; j < n; ++j) {
        if (std::abs(chi(j, j) - 1.0) > tol) {
            throw std::invalid_argument("chi diagonal must be 1");
        }
        if (std::abs(delta(j, j)) > tol) {
            throw std::invalid_argument("delta diagonal must be 0");
        }
        for (int l = 0; l < n; ++l) {
            if (std::abs(chi(j, l) - chi(l, j)) > tol ||
                std::abs(delta(j, l) - delta(l, j)) > tol) {
                throw std::invalid_argument("coupling matrices must be symmetric");
            }
            if (std::abs(chi(j, l)) > 1.0 + tol) {
                throw std::invalid_argument("|chi| must not exceed 1");
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chi, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("chi eigenvalue computation failed");
    }
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("chi matrix is not positive semidefinite");
    }
}

CouplingSet build_couplings(const EmitterGeometry& geom, double gamma, double nbar) {
    const int n = geom.count();
    if (n < 1) {
        throw std::invalid_argument("build_couplings: empty geometry");
    }
    const Eigen::Vector3d dip = normalized_direction(geom.dipole_direction);

    CouplingSet set;
    set.chi = Eigen::MatrixXd::Identity(n, n);
    set.delta = Eigen::MatrixXd::Zero(n, n);
    set.gamma = gamma;
    set.nbar = nbar;
    for (int j = 1; j <= n; ++j) {
        for (int l = 1; l < j; ++l) {
            const Eigen::Vector3d r = geom.pair_vector(j, l);
            const double u = r.norm();
            if (!(u > 0.0)) {
                throw std::invalid_argument("build_couplings: coincident emitters");
            }
            const double xi = std::acos(std::clamp(dip.dot(r) / u, -1.0, 1.0));
            set.chi(j - 1, l - 1) = set.chi(l - 1, j - 1) = chi_pair(u, xi);
            set.delta(j - 1, l - 1) = set.delta(l - 1, j - 1) = delta_pair(u, xi, gamma);
        }
    }
    set.validate();
    return set;
}

CouplingSet uniform_couplings(int n, double chi, double delta,
                              double gamma, double nbar) {
    if (n < 1) {
        throw std::invalid_argument("uniform_couplings: need at least one emitter");
    }
    CouplingSet set;
    set.chi = Eigen::MatrixXd::Constant(n, n, chi);
    set.chi.diagonal().setOnes();
    set.delta = Eigen::MatrixXd::Constant(n, n, delta);
    set.delta.diagonal().setZero();
    set.gamma = gamma;
    set.nbar = nbar;
    set.validate();
    return set;
}

} // namespace triemit
