#include "triemit/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "triemit/algebra.hpp"
#include "triemit/correlations.hpp"
#include "triemit/couplings.hpp"
#include "triemit/dynamics.hpp"
#include "triemit/geometry.hpp"

namespace triemit {

namespace {

using Mat = Eigen::MatrixXcd;
constexpr double kPi = std::numbers::pi;

Eigen::Vector3d random_unit(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-6);
    return v.normalized();
}

Eigen::Matrix3d random_rotation(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    return Eigen::AngleAxisd(angle(rng), random_unit(rng)).toRotationMatrix();
}

Mat random_hermitian_unit_trace(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    Mat h = 0.5 * (a + a.adjoint());
    h -= (h.trace() / static_cast<double>(dim)) * Mat::Identity(dim, dim);
    h += Mat::Identity(dim, dim) / static_cast<double>(dim);
    return h;
}

Mat random_density_matrix(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    Mat rho = a * a.adjoint();
    return rho / rho.trace();
}

ReducedState random_reduced_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    ReducedState s;
    double total = 0.0;
    for (auto& p : s.populations) {
        p = unif(rng);
        total += p;
    }
    for (auto& p : s.populations) {
        p /= total;
    }
    // Coherences bounded by the 2x2 minors keep the embedded state PSD.
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const double m32 = 0.9 * std::sqrt(s.populations[1] * s.populations[2]);
    const double m65 = 0.9 * std::sqrt(s.populations[4] * s.populations[5]);
    s.r32 = std::polar(m32 * unif(rng), phase(rng));
    s.r65 = std::polar(m65 * unif(rng), phase(rng));
    return s;
}

struct Runner {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<double()>& check,
             double tolerance) {
        CheckResult r;
        r.name = name;
        try {
            r.max_abs_error = check();
            r.pass = r.max_abs_error <= tolerance;
            if (!r.pass) {
                r.detail = "error exceeds tolerance " + std::to_string(tolerance);
            }
        } catch (const std::exception& e) {
            r.pass = false;
            r.max_abs_error = std::numeric_limits<double>::infinity();
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

double max3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationConfig& cfg) {
    Runner runner;
    const Eigen::Vector3d zhat = Eigen::Vector3d::UnitZ();

    // -- geometry ---------------------------------------------------------

    runner.run("geometry-pair-closure", [&] {
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        const Eigen::Vector3d res =
            geom.pair_vector(2, 1) + geom.pair_vector(3, 2) - geom.pair_vector(3, 1);
        double side_spread = 0.0;
        for (const auto& pr : kPairOrder) {
            side_spread = std::max(side_spread,
                                   std::abs(geom.pair_distance(pr[0], pr[1]) - cfg.u));
        }
        return std::max(res.cwiseAbs().maxCoeff(), side_spread);
    }, 1e-12);

    runner.run("geometry-rotation-invariance", [&] {
        std::mt19937 rng(11);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const auto geom = make_equilateral(cfg.u, random_unit(rng), random_unit(rng));
            const Eigen::Vector3d det = random_unit(rng);
            const Eigen::Matrix3d rot = random_rotation(rng);
            const auto spun = rotated(geom, rot);
            worst = std::max(worst, max3(direction_cosines(geom, det),
                                         direction_cosines(spun, rot * det)));
            worst = std::max(worst,
                             max3(dipole_pair_angles(geom), dipole_pair_angles(spun)));
        }
        return worst;
    }, 1e-12);

    runner.run("geometry-direction-cosine-bounds", [&] {
        std::mt19937 rng(13);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto geom = make_equilateral(cfg.u, random_unit(rng), random_unit(rng));
            for (double c : direction_cosines(geom, random_unit(rng))) {
                worst = std::max(worst, std::max(0.0, std::abs(c) - 1.0));
            }
        }
        return worst;
    }, 0.0);

    // -- couplings --------------------------------------------------------

    runner.run("couplings-chi-bounded", [&] {
        double worst = 0.0;
        for (int iu = 1; iu <= 500; ++iu) {
            const double u = 0.1 * iu;
            for (int ix = 0; ix <= 24; ++ix) {
                const double xi = kPi * ix / 24.0;
                worst = std::max(worst, std::abs(chi_pair(u, xi)) - 1.0);
            }
        }
        return std::max(worst, 0.0);
    }, 0.0);

    runner.run("couplings-asymptotic-decay", [&] {
        double worst = 0.0;
        for (double u = 30.5; u < 60.0; u += 0.5) {
            worst = std::max(worst, std::abs(chi_pair(u, kPi / 2)));
            worst = std::max(worst, std::abs(delta_pair(u, kPi / 2, cfg.gamma)) / cfg.gamma);
        }
        return worst;
    }, 0.1);

    runner.run("couplings-delta-cubic-divergence", [&] {
        double worst = 0.0;
        for (double xi : {0.0, kPi / 3, kPi / 2}) {
            if (std::abs(1.0 - 3.0 * std::cos(xi) * std::cos(xi)) < 1e-3) continue;
            const double a = std::pow(1e-2, 3) * delta_pair(1e-2, xi, 1.0);
            const double b = std::pow(1e-3, 3) * delta_pair(1e-3, xi, 1.0);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        return worst;
    }, 1e-3);

    runner.run("couplings-psd", [&] {
        if (cfg.chi_override || cfg.delta_override) {
            const auto set = uniform_couplings(3, cfg.chi_override.value_or(0.5),
                                               cfg.delta_override.value_or(cfg.gamma),
                                               cfg.gamma, cfg.nbar);
            set.validate();
            return 0.0;
        }
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        build_couplings(geom, cfg.gamma, cfg.nbar).validate();
        for (double chi : {-0.4, 0.0, 0.3, 0.7, 1.0}) {
            uniform_couplings(3, chi, cfg.gamma, cfg.gamma, cfg.nbar).validate();
        }
        return 0.0;
    }, 0.0);

    runner.run("couplings-equilateral-equal", [&] {
        std::mt19937 rng(17);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            // Dipole along the plane normal keeps all pair angles equal.
            const Eigen::Vector3d normal = random_unit(rng);
            const auto geom = make_equilateral(cfg.u, normal, normal);
            const auto set = build_couplings(geom, cfg.gamma, cfg.nbar);
            worst = std::max(worst, std::abs(set.chi(0, 1) - set.chi(0, 2)));
            worst = std::max(worst, std::abs(set.chi(0, 1) - set.chi(1, 2)));
            worst = std::max(worst, std::abs(set.delta(0, 1) - set.delta(0, 2)));
            worst = std::max(worst, std::abs(set.delta(0, 1) - set.delta(1, 2)));
        }
        return worst;
    }, 1e-12);

    runner.run("couplings-chi-spectrum", [&] {
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        const auto set = build_couplings(geom, cfg.gamma, cfg.nbar);
        const double chi = set.chi(0, 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(set.chi);
        const Eigen::Vector3d expected(std::min(1.0 + 2.0 * chi, 1.0 - chi),
                                       std::min(std::max(1.0 + 2.0 * chi, 1.0 - chi),
                                                1.0 - chi),
                                       std::max(1.0 + 2.0 * chi, 1.0 - chi));
        return (es.eigenvalues() - expected).cwiseAbs().maxCoeff();
    }, 1e-12);

    // -- algebra ----------------------------------------------------------

    runner.run("algebra-su2-commutators", [&] {
        double worst = 0.0;
        for (int n : {1, 2, 3}) {
            for (int j = 1; j <= n; ++j) {
                const Mat sp = ladder(n, j, Ladder::Raise);
                const Mat sm = ladder(n, j, Ladder::Lower);
                const Mat sz = ladder(n, j, Ladder::Inversion);
                worst = std::max(worst, (sp * sm - sm * sp - 2.0 * sz).cwiseAbs().maxCoeff());
                worst = std::max(worst, (sz * sp - sp * sz - sp).cwiseAbs().maxCoeff());
                worst = std::max(worst, (sp * sp).cwiseAbs().maxCoeff());
                for (int l = 1; l <= n; ++l) {
                    if (l == j) continue;
                    const Mat sml = ladder(n, l, Ladder::Lower);
                    worst = std::max(worst, (sp * sml - sml * sp).cwiseAbs().maxCoeff());
                }
            }
        }
        return worst;
    }, 1e-14);

    runner.run("algebra-dicke-unitarity", [&] {
        const auto basis = dicke_basis();
        return (basis.transform * basis.transform.adjoint() - Mat::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff();
    }, 1e-14);

    runner.run("algebra-projector-completeness", [&] {
        const auto basis = dicke_basis();
        Mat sum = Mat::Zero(8, 8);
        for (int a = 1; a <= 8; ++a) {
            sum += basis.projector_bare(a, a);
        }
        return (sum - Mat::Identity(8, 8)).cwiseAbs().maxCoeff();
    }, 1e-13);

    runner.run("algebra-collective-commutators", [&] {
        const auto basis = dicke_basis();
        double worst = 0.0;
        for (int a = 1; a <= 8; ++a)
            for (int b = 1; b <= 8; ++b)
                for (int bp = 1; bp <= 8; ++bp)
                    for (int ap = 1; ap <= 8; ++ap) {
                        const Mat lhs = basis.projector_bare(a, b) * basis.projector_bare(bp, ap) -
                                        basis.projector_bare(bp, ap) * basis.projector_bare(a, b);
                        Mat rhs = Mat::Zero(8, 8);
                        if (b == bp) rhs += basis.projector_bare(a, ap);
                        if (ap == a) rhs -= basis.projector_bare(bp, b);
                        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
                    }
        return worst;
    }, 1e-13);

    runner.run("algebra-eq5-decomposition", [&] { return collective_decomposition_check(); },
               1e-12);

    runner.run("algebra-number-block-structure", [&] {
        const auto basis = dicke_basis();
        const Mat num = basis.to_collective(excitation_number(3));
        const Eigen::VectorXd expected =
            (Eigen::VectorXd(8) << 0, 1, 1, 1, 2, 2, 2, 3).finished();
        double worst = (num.diagonal().real() - expected).cwiseAbs().maxCoeff();
        Mat off = num;
        off.diagonal().setZero();
        return std::max(worst, off.cwiseAbs().maxCoeff());
    }, 1e-13);

    // -- dynamics ---------------------------------------------------------

    const double chi_run = cfg.chi_override.value_or(0.5);
    const double delta_run = cfg.delta_override.value_or(cfg.gamma);

    runner.run("dynamics-trace-preservation", [&] {
        std::mt19937 rng(23);
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar,
                                                   std::min(chi_run, 1.0), delta_run);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Mat rho = random_hermitian_unit_trace(8, rng);
            const Mat drho = unvectorize(lv.matrix * vectorize(rho), 8);
            worst = std::max(worst, std::abs(drho.trace()));
            worst = std::max(worst, (drho - drho.adjoint()).cwiseAbs().maxCoeff());
        }
        return worst;
    }, 1e-12);

    runner.run("dynamics-generator-equivalence", [&] {
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> chi_draw(-0.45, 1.0);
        std::uniform_real_distribution<double> delta_draw(-5.0, 5.0);
        std::uniform_real_distribution<double> nbar_draw(0.0, 5.0);
        const auto basis = dicke_basis();
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const double chi = chi_draw(rng);
            const double delta = delta_draw(rng);
            const double nbar = nbar_draw(rng);
            const auto bare =
                build_generator_bare(uniform_couplings(3, chi, delta, cfg.gamma, nbar));
            const auto coll = build_generator_collective(cfg.gamma, nbar, chi, delta);
            worst = std::max(worst, (to_bare_basis(coll, basis).matrix - bare.matrix)
                                        .cwiseAbs()
                                        .maxCoeff());
        }
        return worst;
    }, 1e-12);

    runner.run("dynamics-single-emitter-decay", [&] {
        const auto lv = build_generator_bare(uniform_couplings(1, 0.0, 0.0, cfg.gamma, 0.0));
        Mat excited = Mat::Zero(2, 2);
        excited(1, 1) = 1.0;
        const Mat rho = evolve(lv, excited, 1.0 / cfg.gamma);
        return std::abs(rho(1, 1).real() - std::exp(-1.0));
    }, 1e-10);

    runner.run("eq13-matches-kernel", [&] {
        const auto expected = analytic_steady_extended(cfg.nbar);
        double worst = 0.0;
        for (double chi : {0.1, chi_run > 0.99 ? 0.9 : chi_run, 0.9}) {
            const auto lv = build_generator_collective(cfg.gamma, cfg.nbar, chi, delta_run);
            const auto ss = steady_state(lv);
            for (int i = 0; i < 8; ++i) {
                worst = std::max(worst, std::abs(ss.rho(i, i).real() -
                                                 expected[static_cast<std::size_t>(i)]));
            }
            worst = std::max(worst, std::abs(ss.rho(1, 2)));
            worst = std::max(worst, std::abs(ss.rho(4, 5)));
        }
        return worst;
    }, 1e-10);

    runner.run("dynamics-dicke-matches-long-time", [&] {
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar, 1.0, delta_run);
        const Mat rho = long_time_from_ground(lv);
        const auto expected = analytic_steady_dicke(cfg.nbar);
        const std::array<int, 4> idx{0, 1, 4, 7};
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(rho(idx[k], idx[k]).real() - expected[k]));
        }
        return worst;
    }, 1e-8);

    runner.run("dynamics-dicke-conservation", [&] {
        std::mt19937 rng(31);
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar, 1.0, delta_run);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const Mat rho0 = random_density_matrix(8, rng);
            const double before = rho0(2, 2).real() + rho0(3, 3).real() +
                                  rho0(5, 5).real() + rho0(6, 6).real();
            for (double t : {0.3, 1.0, 5.0, 20.0}) {
                const Mat rho = evolve(lv, rho0, t / cfg.gamma);
                const double after = rho(2, 2).real() + rho(3, 3).real() +
                                     rho(5, 5).real() + rho(6, 6).real();
                worst = std::max(worst, std::abs(after - before));
            }
        }
        return worst;
    }, 1e-10);

    runner.run("dynamics-positivity-along-trajectories", [&] {
        std::mt19937 rng(37);
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar,
                                                   std::min(chi_run, 1.0), delta_run);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const Mat rho0 = random_density_matrix(8, rng);
            for (double t : {0.1, 1.0, 10.0}) {
                const Mat rho = evolve(lv, rho0, t / cfg.gamma);
                Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
                worst = std::max(worst, std::max(0.0, -es.eigenvalues().minCoeff()));
                worst = std::max(worst, std::abs(rho.trace().real() - 1.0));
            }
        }
        return worst;
    }, 1e-10);

    runner.run("dynamics-steady-coherences-vanish", [&] {
        std::mt19937 rng(41);
        const double chi = std::min(chi_run, 0.9);
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar, chi, delta_run);
        const Mat rho0 = random_density_matrix(8, rng);
        const Mat rho = evolve(lv, rho0, 200.0 / (cfg.gamma * (1.0 - chi)));
        return std::max(std::abs(rho(1, 2)), std::abs(rho(4, 5)));
    }, 1e-8);

    runner.run("dynamics-reduced-rhs-consistency", [&] {
        std::mt19937 rng(43);
        const double chi = std::min(chi_run, 1.0);
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar, chi, delta_run);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const ReducedState s = random_reduced_state(rng);
            const ReducedState ds = reduced_rhs(s, cfg.gamma, cfg.nbar, chi, delta_run);
            const ReducedState proj =
                project_reduced(unvectorize(lv.matrix * vectorize(embed_reduced(s)), 8));
            for (std::size_t i = 0; i < 8; ++i) {
                worst = std::max(worst, std::abs(ds.populations[i] - proj.populations[i]));
            }
            worst = std::max(worst, std::abs(ds.r32 - proj.r32));
            worst = std::max(worst, std::abs(ds.r65 - proj.r65));
        }
        // Analytic steady populations are fixed points with zero coherences.
        ReducedState fixed;
        const auto pops = analytic_steady_extended(cfg.nbar);
        std::copy(pops.begin(), pops.end(), fixed.populations.begin());
        const ReducedState dfixed =
            reduced_rhs(fixed, cfg.gamma, cfg.nbar, std::min(chi_run, 0.95), delta_run);
        for (const double d : dfixed.populations) {
            worst = std::max(worst, std::abs(d));
        }
        return worst;
    }, 1e-12);

    // -- correlations -----------------------------------------------------

    runner.run("correlations-g1-isotropy", [&] {
        std::mt19937 rng(47);
        const auto basis = dicke_basis();
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar,
                                                   std::min(chi_run, 1.0), delta_run);
        const Mat rho = basis.to_bare(steady_state(lv).rho);
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        const double expected = 3.0 * cfg.nbar / (1.0 + 2.0 * cfg.nbar);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            worst = std::max(worst,
                             std::abs(g1_steady(rho, geom, random_unit(rng)) - expected));
        }
        return worst;
    }, 1e-10);

    runner.run("correlations-closed-form-equivalence", [&] {
        std::mt19937 rng(53);
        const auto basis = dicke_basis();
        double worst = 0.0;
        for (double nbar : {0.25, cfg.nbar, 4.0}) {
            const auto lv = build_generator_collective(cfg.gamma, nbar,
                                                       std::min(chi_run, 0.9), delta_run);
            const Mat rho = basis.to_bare(steady_state(lv).rho);
            const MomentTable table = build_moment_table(rho);
            std::vector<double> errs(70);
            parallel_for(errs.size(), cfg.exec, [&, seed = rng()](std::size_t i) {
                std::mt19937 local(seed + static_cast<unsigned>(i));
                std::uniform_real_distribution<double> ud(0.2, 20.0);
                const auto geom = make_equilateral(ud(local), zhat, zhat);
                const Eigen::Vector3d d1 = random_unit(local);
                const Eigen::Vector3d d2 = random_unit(local);
                const Eigen::Vector3d d3 = random_unit(local);
                const double e2 = std::abs(g2_from_moments(table, geom, d1, d2) -
                                           g2_thermal_closed(geom, d1, d2));
                const double e3 = std::abs(g3_from_moments(table, geom, d1, d2, d3) -
                                           g3_thermal_closed(geom, d1, d2, d3));
                errs[i] = std::max(e2, e3);
            });
            for (double e : errs) worst = std::max(worst, e);
        }
        return worst;
    }, 1e-10);

    runner.run("correlations-detector-exchange-symmetry", [&] {
        std::mt19937 rng(59);
        const auto basis = dicke_basis();
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar,
                                                   std::min(chi_run, 0.9), delta_run);
        const Mat rho = basis.to_bare(steady_state(lv).rho);
        const MomentTable table = build_moment_table(rho);
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::Vector3d a = random_unit(rng);
            const Eigen::Vector3d b = random_unit(rng);
            const Eigen::Vector3d c = random_unit(rng);
            worst = std::max(worst, std::abs(g2_from_moments(table, geom, a, b) -
                                             g2_from_moments(table, geom, b, a)));
            const double ref = g3_from_moments(table, geom, a, b, c);
            const std::array<std::array<Eigen::Vector3d, 3>, 5> perms{
                {{a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
            for (const auto& p : perms) {
                worst = std::max(worst,
                                 std::abs(g3_from_moments(table, geom, p[0], p[1], p[2]) - ref));
            }
        }
        return worst;
    }, 1e-12);

    runner.run("correlations-nbar-independence", [&] {
        std::mt19937 rng(61);
        const auto basis = dicke_basis();
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        const Eigen::Vector3d d1 = random_unit(rng);
        const Eigen::Vector3d d2 = random_unit(rng);
        const Eigen::Vector3d d3 = random_unit(rng);
        double g2_min = 1e300, g2_max = -1e300, g3_min = 1e300, g3_max = -1e300;
        for (double nbar : {0.1, 1.0, 10.0}) {
            const auto lv = build_generator_collective(cfg.gamma, nbar,
                                                       std::min(chi_run, 0.9), delta_run);
            const Mat rho = basis.to_bare(steady_state(lv).rho);
            const double g2 = g2_general(rho, geom, d1, d2);
            const double g3 = g3_general(rho, geom, d1, d2, d3);
            g2_min = std::min(g2_min, g2);
            g2_max = std::max(g2_max, g2);
            g3_min = std::min(g3_min, g3);
            g3_max = std::max(g3_max, g3);
        }
        return std::max(g2_max - g2_min, g3_max - g3_min);
    }, 1e-10);

    runner.run("correlations-moment-claims", [&] {
        const auto basis = dicke_basis();
        double worst = 0.0;
        for (double nbar : {0.5, cfg.nbar, 2.0}) {
            const auto lv = build_generator_collective(cfg.gamma, nbar,
                                                       std::min(chi_run, 0.9), delta_run);
            const auto table = correlator_table(basis.to_bare(steady_state(lv).rho));
            const double p = nbar / (1.0 + 2.0 * nbar);
            for (const auto& pm : table.pair) {
                worst = std::max(worst, std::abs(pm - p * p));
            }
            worst = std::max(worst, std::abs(table.triple -
                                             std::complex<double>(table.r88, 0.0)));
            worst = std::max(worst, table.max_cross);
        }
        return worst;
    }, 1e-12);

    runner.run("correlations-dicke-closed-forms", [&] {
        double worst = 0.0;
        for (double nbar : {0.3, cfg.nbar, 5.0}) {
            // Numeric route: symmetric-sector steady state and the collective
            // raising operator restricted to the symmetric manifold.
            Mat rho = Mat::Zero(8, 8);
            const auto pops = analytic_steady_dicke(nbar);
            rho(0, 0) = pops[0];
            rho(1, 1) = pops[1];
            rho(4, 4) = pops[2];
            rho(7, 7) = pops[3];
            const double s3 = std::sqrt(3.0);
            Mat sp = Mat::Zero(8, 8);
            sp(1, 0) = s3; // R_21
            sp(7, 4) = s3; // R_85
            sp(4, 1) = 2.0; // R_52
            const Mat sm = sp.adjoint();
            const auto mean = [&](const Mat& op) { return (rho * op).trace().real(); };
            const double g1 = mean(sp * sm);
            const double g2 = mean(sp * sp * sm * sm) / (g1 * g1);
            const double g3 = mean(sp * sp * sp * sm * sm * sm) / (g1 * g1 * g1);
            worst = std::max(worst, std::abs(g1 - dicke_intensity(nbar)));
            worst = std::max(worst, std::abs(g2 - dicke_g2(nbar)));
            worst = std::max(worst, std::abs(g3 - dicke_g3(nbar)));
            worst = std::max(worst, std::abs(dicke_ratio(nbar) - g2 / g3));
        }
        return worst;
    }, 1e-12);

    runner.run("correlations-scenario-bounds", [&] {
        double worst = 0.0;
        const double eps = 1e-12;
        for (int i = 0; i <= 40000; ++i) {
            const double x = 20.0 * kPi * i / 40000.0;
            const double g2 = scenario_g2_fig3(x);
            const double g3 = scenario_g3_fig3(x);
            worst = std::max(worst, (1.0 / 3.0 - eps) - g2);
            worst = std::max(worst, g2 - (4.0 / 3.0 + eps));
            worst = std::max(worst, (4.0 / 27.0 - eps) - g3);
            worst = std::max(worst, g3 - (4.0 / 3.0 + eps));
        }
        return std::max(worst, 0.0);
    }, 0.0);

    runner.run("correlations-scenario-periodicity", [&] {
        double worst = 0.0;
        for (int i = 0; i <= 500; ++i) {
            const double x = 2.0 * kPi * i / 500.0;
            worst = std::max(worst,
                             std::abs(scenario_g2_fig3(x) - scenario_g2_fig3(x + 2.0 * kPi)));
            worst = std::max(worst,
                             std::abs(scenario_g3_fig3(x) - scenario_g3_fig3(x + 2.0 * kPi)));
        }
        return worst;
    }, 1e-12);

    runner.run("parallel-serial-equivalence", [&] {
        std::mt19937 rng(67);
        const auto basis = dicke_basis();
        const auto lv = build_generator_collective(cfg.gamma, cfg.nbar,
                                                   std::min(chi_run, 0.9), delta_run);
        const Mat rho = basis.to_bare(steady_state(lv).rho);
        const auto geom = make_equilateral(cfg.u, zhat, zhat);
        std::vector<std::array<Eigen::Vector3d, 2>> pairs(64);
        std::vector<std::array<Eigen::Vector3d, 3>> triples(64);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            pairs[i] = {random_unit(rng), random_unit(rng)};
            triples[i] = {random_unit(rng), random_unit(rng), random_unit(rng)};
        }
        const auto s2 = g2_batch(rho, geom, pairs, Exec::Serial);
        const auto p2 = g2_batch(rho, geom, pairs, Exec::Parallel);
        const auto s3 = g3_batch(rho, geom, triples, Exec::Serial);
        const auto p3 = g3_batch(rho, geom, triples, Exec::Parallel);
        double worst = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            worst = std::max(worst, std::abs(s2[i] - p2[i]));
            worst = std::max(worst, std::abs(s3[i] - p3[i]));
        }
        return worst;
    }, 0.0);

    return runner.results;
}

} // namespace triemit
