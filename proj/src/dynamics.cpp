#include "triemit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace triemit {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
constexpr std::complex<double> kI{0.0, 1.0};

Mat identity(int dim) { return Mat::Identity(dim, dim); }

// Superoperator of rho -> A rho B under column stacking: B^T (x) A.
Mat sandwich(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(b.transpose(), a).eval();
}

Mat left_mul(const Mat& a) { return sandwich(a, identity(static_cast<int>(a.rows()))); }
Mat right_mul(const Mat& b) { return sandwich(identity(static_cast<int>(b.rows())), b); }

// -i [H, rho]
Mat commutator_superop(const Mat& h) {
    return -kI * (left_mul(h) - right_mul(h));
}

// rate * (C rho C^H - (1/2){C^H C, rho}) in Lindblad form
Mat lindblad_superop(const Mat& c, double rate) {
    const Mat cdc = c.adjoint() * c;
    return rate * (sandwich(c, c.adjoint()) - 0.5 * (left_mul(cdc) + right_mul(cdc)));
}

int hilbert_dim(const Liouvillian& lv) { return lv.dim; }

// Fifth-order Dormand-Prince step on the vectorized state.
struct Rk45Result {
    Vec y;
    double error;
};

Rk45Result rk45_step(const Mat& l, const Vec& y, double h) {
    static const double a21 = 1.0 / 5.0;
    static const double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static const double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static const double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static const double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
    static const double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static const double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const Vec k1 = l * y;
    const Vec k2 = l * (y + h * a21 * k1);
    const Vec k3 = l * (y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = l * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = l * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = l * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = l * ynew;
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return {ynew, err.cwiseAbs().maxCoeff()};
}

Vec integrate_adaptive(const Mat& l, Vec y, double t_final) {
    const double tol = 1e-12;
    double t = 0.0;
    double h = t_final / 100.0;
    const double h_min = t_final * 1e-14;
    while (t < t_final) {
        h = std::min(h, t_final - t);
        const Rk45Result step = rk45_step(l, y, h);
        const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
        if (step.error <= tol * scale) {
            t += h;
            y = step.y;
        }
        const double grow =
            step.error > 0.0
                ? 0.9 * std::pow(tol * scale / step.error, 0.2)
                : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (h < h_min && t < t_final) {
            throw std::runtime_error("evolve: step size underflow in adaptive integrator");
        }
    }
    return y;
}

Mat hermitized(const Mat& m) { return 0.5 * (m + m.adjoint()); }

} // namespace

Vec vectorize(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvectorize(const Vec& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("unvectorize: size mismatch");
    }
    return Eigen::Map<const Mat>(v.data(), dim, dim);
}

Mat ground_state(int dim) {
    Mat rho = Mat::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return rho;
}

void validate_density_matrix(const Mat& rho, double tol_herm, double tol_trace,
                             double tol_pos) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol_herm) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > tol_trace) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitized(rho), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol_pos) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

Liouvillian build_generator_bare(const CouplingSet& couplings) {
    couplings.validate();
    const int n = couplings.count();
    const int dim = 1 << n;
    const double g = couplings.gamma;
    const double nb = couplings.nbar;

    std::vector<Mat> sp(n), sm(n);
    for (int j = 0; j < n; ++j) {
        sp[j] = ladder(n, j + 1, Ladder::Raise);
        sm[j] = ladder(n, j + 1, Ladder::Lower);
    }

    // Dipole-dipole Hamiltonian, signed to match the collective form: the
    // symmetric single-excitation state sits at -2 delta.
    Mat h_dd = Mat::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            h_dd -= couplings.delta(j, l) * (sp[j] * sm[l]);
        }
    }

    Mat lmat = commutator_superop(h_dd);

    // Pairwise brackets plus their Hermitian conjugates, transcribed term by
    // term; the Hermitian closure applies to the dissipative brackets only.
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const double down = -0.5 * g * couplings.chi(j, l) * (1.0 + nb);
            const double up = -0.5 * g * couplings.chi(j, l) * nb;
            // [S+_j, S-_l rho] + H.c.
            lmat += down * (left_mul(sp[j] * sm[l]) - sandwich(sm[l], sp[j]) +
                            right_mul(sp[l] * sm[j]) - sandwich(sm[j], sp[l]));
            // [S-_j, S+_l rho] + H.c.
            lmat += up * (left_mul(sm[j] * sp[l]) - sandwich(sp[l], sm[j]) +
                          right_mul(sm[l] * sp[j]) - sandwich(sp[j], sm[l]));
        }
    }

    return Liouvillian{std::move(lmat), dim, OperatorBasis::Bare, g, nb};
}

Liouvillian build_generator_collective(double gamma, double nbar,
                                       double chi, double delta) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (nbar < 0.0) {
        throw std::invalid_argument("nbar must be nonnegative");
    }
    if (chi < -0.5 - 1e-12 || chi > 1.0 + 1e-12) {
        throw std::invalid_argument("chi outside [-1/2, 1] gives a non-PSD dissipator");
    }

    const std::array<double, 3> weights{3.0 * (1.0 + 2.0 * chi),
                                        2.0 * (1.0 - chi),
                                        6.0 * (1.0 - chi)};
    const auto channels = symmetric_jump_operators();

    Mat lmat = commutator_superop(dipole_shift_hamiltonian(delta));
    for (int k = 0; k < 3; ++k) {
        const double w = std::max(weights[static_cast<std::size_t>(k)], 0.0);
        if (w == 0.0) continue;
        const auto& ch = channels[static_cast<std::size_t>(k)];
        lmat += lindblad_superop(ch.lowering, gamma * (1.0 + nbar) * w);
        lmat += lindblad_superop(ch.raising, gamma * nbar * w);
    }

    return Liouvillian{std::move(lmat), 8, OperatorBasis::Collective, gamma, nbar};
}

Liouvillian to_bare_basis(const Liouvillian& lv, const CollectiveBasis& basis) {
    if (lv.basis == OperatorBasis::Bare) {
        return lv;
    }
    if (lv.dim != 8) {
        throw std::invalid_argument("collective generators are three-emitter only");
    }
    // vec(U rho U^H) = (conj(U) (x) U) vec(rho)
    const Mat w = Eigen::kroneckerProduct(basis.transform.conjugate(),
                                          basis.transform).eval();
    Liouvillian out = lv;
    out.matrix = w.adjoint() * lv.matrix * w;
    out.basis = OperatorBasis::Bare;
    return out;
}

Mat evolve(const Liouvillian& lv, const Mat& rho0, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("evolve: time must be nonnegative");
    }
    const int dim = hilbert_dim(lv);
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw std::invalid_argument("evolve: state dimension mismatch");
    }
    if (t == 0.0) {
        return rho0;
    }
    Vec v = vectorize(rho0);
    if (dim <= 8) {
        const Mat propagator = (lv.matrix * t).exp();
        v = propagator * v;
    } else {
        v = integrate_adaptive(lv.matrix, std::move(v), t);
    }
    return hermitized(unvectorize(v, dim));
}

Mat long_time_from_ground(const Liouvillian& lv) {
    const int dim = hilbert_dim(lv);
    const double t0 = 1.0 / lv.gamma;
    Mat propagator = (lv.matrix * t0).exp();
    Vec v = vectorize(ground_state(dim));
    double prev_diff = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int iter = 0; iter < 48 && !converged; ++iter) {
        const Vec next = propagator * v;
        const double diff = (next - v).cwiseAbs().maxCoeff();
        v = next;
        // The update has hit the roundoff floor once it is either truly tiny
        // or small and no longer contracting (each squaring of the propagator
        // doubles the accumulated noise, so a stalled small diff is the floor).
        converged = diff < 1e-13 || (diff < 1e-10 && diff >= 0.25 * prev_diff);
        prev_diff = diff;
        if (!converged) {
            propagator *= propagator; // doubles the time step
        }
    }
    if (!converged) {
        throw std::runtime_error("long-time limit did not converge");
    }
    Mat rho = hermitized(unvectorize(v, dim));
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-8) {
        throw std::runtime_error("long-time limit lost the trace");
    }
    return rho / tr;
}

SteadyStateResult steady_state(const Liouvillian& lv) {
    const int dim = hilbert_dim(lv);
    Eigen::JacobiSVD<Mat> svd(lv.matrix, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = 1e-10 * sigma(0);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) < cutoff) ++null_dim;
    }
    if (null_dim == 0) {
        throw std::runtime_error("steady_state: generator kernel is numerically empty");
    }

    Mat rho;
    if (null_dim == 1) {
        rho = hermitized(unvectorize(svd.matrixV().col(sigma.size() - 1), dim));
        const double tr = rho.trace().real();
        if (std::abs(tr) < 1e-12) {
            throw std::runtime_error("steady_state: kernel vector is traceless");
        }
        rho /= tr;
    } else {
        rho = long_time_from_ground(lv);
    }
    validate_density_matrix(rho, 1e-10, 1e-10, 1e-10);
    return SteadyStateResult{std::move(rho), null_dim};
}

double spectral_gap(const Liouvillian& lv) {
    Eigen::ComplexEigenSolver<Mat> es(lv.matrix, false);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("spectral_gap: eigenvalue computation failed");
    }
    double max_re = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        max_re = std::max(max_re, std::abs(es.eigenvalues()(i).real()));
    }
    const double floor = 1e-9 * max_re;
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double re = std::abs(es.eigenvalues()(i).real());
        if (re > floor) {
            gap = std::min(gap, re);
        }
    }
    if (!std::isfinite(gap)) {
        throw std::runtime_error("spectral_gap: no decaying eigenvalue found");
    }
    return gap;
}

ReducedState reduced_rhs(const ReducedState& s, double gamma, double nbar,
                         double chi, double delta) {
    const double g = gamma;
    const double nb = nbar;
    const double np = 1.0 + nbar;
    const auto& p = s.populations;
    const double rx = p[2] + p[3]; // <R_33> + <R_44>
    const double ry = p[5] + p[6]; // <R_66> + <R_77>
    const double re65 = 2.0 * s.r65.real(); // <R_65> + <R_56>
    const double re32 = 2.0 * s.r32.real(); // <R_32> + <R_23>
    const double w = 2.0 / (3.0 * std::sqrt(2.0));

    ReducedState d;
    d.populations[0] = -3.0 * g * nb * p[0] + g * (1.0 + 2.0 * chi) * np * p[1] +
                       g * (1.0 - chi) * np * rx;
    d.populations[1] = g * nb * (1.0 + 2.0 * chi) * p[0] -
                       g * (1.0 + 2.0 * chi + nb * (3.0 + 4.0 * chi)) * p[1] +
                       (4.0 * g / 3.0) * np * (1.0 + 2.0 * chi) * p[4] +
                       (g / 3.0) * np * (1.0 - chi) * ry;
    d.populations[2] = g * nb * (1.0 - chi) * p[0] -
                       g * (1.0 - chi + nb * (3.0 - 2.0 * chi)) * p[2] +
                       (g / 3.0) * np * (1.0 - chi) * (p[4] + 2.0 * p[6]) +
                       g * np * p[5] - g * w * np * (1.0 - chi) * re65;
    d.populations[3] = g * nb * (1.0 - chi) * p[0] -
                       g * (1.0 - chi + nb * (3.0 - 2.0 * chi)) * p[3] +
                       (g / 3.0) * np * (1.0 - chi) * (p[4] + 2.0 * p[5]) +
                       g * np * p[6] + g * w * np * (1.0 - chi) * re65;
    d.populations[4] = (4.0 * g / 3.0) * nb * (1.0 + 2.0 * chi) * p[1] +
                       g * np * (1.0 + 2.0 * chi) * p[7] -
                       g * (2.0 * (1.0 + chi) + nb * (3.0 + 4.0 * chi)) * p[4] +
                       (g / 3.0) * nb * (1.0 - chi) * rx;
    d.populations[5] = (g * nb / 3.0) * (1.0 - chi) * (p[1] + 2.0 * p[3]) -
                       g * (2.0 - chi + nb * (3.0 - 2.0 * chi)) * p[5] +
                       g * nb * p[2] + g * np * (1.0 - chi) * p[7] -
                       g * w * nb * (1.0 - chi) * re32;
    d.populations[6] = (g * nb / 3.0) * (1.0 - chi) * (p[1] + 2.0 * p[2]) -
                       g * (2.0 - chi + nb * (3.0 - 2.0 * chi)) * p[6] +
                       g * nb * p[3] + g * np * (1.0 - chi) * p[7] +
                       g * w * nb * (1.0 - chi) * re32;
    d.populations[7] = g * nb * (1.0 + 2.0 * chi) * p[4] - 3.0 * g * np * p[7] +
                       g * nb * (1.0 - chi) * ry;

    const std::complex<double> decay32 =
        3.0 * kI * delta - 0.5 * g * (2.0 + chi + 2.0 * nb * (3.0 + chi));
    d.r32 = decay32 * s.r32 -
            0.5 * g * np *
                (2.0 * w * (1.0 - chi) * (p[5] - p[6]) -
                 (2.0 / 3.0) * (1.0 - chi) * std::conj(s.r65) +
                 (4.0 / 3.0) * (1.0 + 2.0 * chi) * s.r65);
    const std::complex<double> decay65 =
        3.0 * kI * delta - 0.5 * g * (4.0 + chi + 2.0 * nb * (3.0 + chi));
    d.r65 = decay65 * s.r65 -
            0.5 * g * nb *
                (2.0 * w * (1.0 - chi) * (p[2] - p[3]) -
                 (2.0 / 3.0) * (1.0 - chi) * std::conj(s.r32) +
                 (4.0 / 3.0) * (1.0 + 2.0 * chi) * s.r32);
    return d;
}

ReducedState project_reduced(const Mat& rho_collective) {
    if (rho_collective.rows() != 8 || rho_collective.cols() != 8) {
        throw std::invalid_argument("project_reduced: expected an 8x8 state");
    }
    ReducedState s;
    for (int i = 0; i < 8; ++i) {
        s.populations[static_cast<std::size_t>(i)] = rho_collective(i, i).real();
    }
    // <R_ab> = tr(rho |a><b|) = <b| rho |a>
    s.r32 = rho_collective(1, 2);
    s.r65 = rho_collective(4, 5);
    return s;
}

Mat embed_reduced(const ReducedState& s) {
    Mat rho = Mat::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        rho(i, i) = s.populations[static_cast<std::size_t>(i)];
    }
    rho(1, 2) = s.r32;
    rho(2, 1) = std::conj(s.r32);
    rho(4, 5) = s.r65;
    rho(5, 4) = std::conj(s.r65);
    return rho;
}

std::array<double, 8> analytic_steady_extended(double nbar) {
    if (!(nbar > 0.0)) {
        throw std::domain_error(
            "analytic_steady_extended: nbar = 0 is degenerate (pure ground state)");
    }
    const double d = 1.0 + 2.0 * nbar;
    const double q0 = (1.0 + nbar) / d;
    const double q1 = nbar / d;
    return {q0 * q0 * q0,
            q1 * q0 * q0, q1 * q0 * q0, q1 * q0 * q0,
            q1 * q1 * q0, q1 * q1 * q0, q1 * q1 * q0,
            q1 * q1 * q1};
}

std::array<double, 4> analytic_steady_dicke(double nbar) {
    if (!(nbar > 0.0)) {
        throw std::domain_error(
            "analytic_steady_dicke: nbar = 0 is degenerate (pure ground state)");
    }
    const double np = 1.0 + nbar;
    const double z = (1.0 + 2.0 * nbar) * (np * np + nbar * nbar);
    return {np * np * np / z, nbar * np * np / z, nbar * nbar * np / z,
            nbar * nbar * nbar / z};
}

} // namespace triemit
