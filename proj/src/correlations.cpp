#include "triemit/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "triemit/algebra.hpp"
#include "triemit/dynamics.hpp"

namespace triemit {

namespace {

using Mat = Eigen::MatrixXcd;
using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

int emitters_of(const Mat& rho) {
    const auto dim = rho.rows();
    if (dim != rho.cols() || dim < 2) {
        throw std::invalid_argument("state must be a square matrix of dimension 2^N");
    }
    int n = 0;
    while ((Eigen::Index{1} << (n + 1)) <= dim) ++n;
    if ((Eigen::Index{1} << n) != dim) {
        throw std::invalid_argument("state dimension is not a power of two");
    }
    return n;
}

// tr(X Y) without forming the product.
C trace_product(const Mat& x, const Mat& y) {
    return x.cwiseProduct(y.transpose()).sum();
}

// Phase matrix P(j,l) = exp(i u_jl . det) for 1-based emitter pairs.
Mat phase_matrix(const EmitterGeometry& geom, const Eigen::Vector3d& det) {
    const Eigen::Vector3d d = normalized_direction(det);
    const int n = geom.count();
    Mat p(n, n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            p(j, l) = std::exp(kI * (geom.positions[static_cast<std::size_t>(j)] -
                                     geom.positions[static_cast<std::size_t>(l)])
                                        .dot(d));
        }
    }
    return p;
}

double g1_phase_sum(const MomentTable& m, const Mat& p) {
    C sum = 0.0;
    for (int j = 0; j < m.n; ++j) {
        for (int l = 0; l < m.n; ++l) {
            sum += p(j, l) * m.single(j, l);
        }
    }
    return sum.real();
}

bool same_multiset2(int a1, int a2, int b1, int b2) {
    return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

bool same_multiset3(std::array<int, 3> a, std::array<int, 3> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

void require_three(const EmitterGeometry& geom) {
    if (geom.count() != 3) {
        throw std::invalid_argument("closed forms apply to the three-emitter sample");
    }
}

} // namespace

C MomentTable::m4(int j1, int j2, int l2, int l1) const {
    return fourth[static_cast<std::size_t>(((j1 * n + j2) * n + l2) * n + l1)];
}

C MomentTable::m6(int j1, int j2, int j3, int l3, int l2, int l1) const {
    return sixth[static_cast<std::size_t>(
        ((((j1 * n + j2) * n + j3) * n + l3) * n + l2) * n + l1)];
}

MomentTable build_moment_table(const Mat& rho_bare) {
    const int n = emitters_of(rho_bare);
    MomentTable table;
    table.n = n;

    std::vector<Mat> sp(static_cast<std::size_t>(n)), sm(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        sp[static_cast<std::size_t>(j)] = ladder(n, j + 1, Ladder::Raise);
        sm[static_cast<std::size_t>(j)] = ladder(n, j + 1, Ladder::Lower);
    }

    table.single.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            table.single(j, l) = trace_product(
                rho_bare, sp[static_cast<std::size_t>(j)] * sm[static_cast<std::size_t>(l)]);
        }
    }

    // rho * S+_{j1} S+_{j2} cached once; fourth moments are then plain
    // entrywise contractions with S-_{l2} S-_{l1}.
    std::vector<Mat> rho_up2(static_cast<std::size_t>(n * n));
    std::vector<Mat> down2(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            rho_up2[static_cast<std::size_t>(a * n + b)] =
                rho_bare * sp[static_cast<std::size_t>(a)] * sp[static_cast<std::size_t>(b)];
            down2[static_cast<std::size_t>(a * n + b)] =
                sm[static_cast<std::size_t>(a)] * sm[static_cast<std::size_t>(b)];
        }
    }
    table.fourth.resize(static_cast<std::size_t>(n * n * n * n));
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            const Mat& left = rho_up2[static_cast<std::size_t>(j1 * n + j2)];
            for (int l2 = 0; l2 < n; ++l2) {
                for (int l1 = 0; l1 < n; ++l1) {
                    table.fourth[static_cast<std::size_t>(((j1 * n + j2) * n + l2) * n +
                                                          l1)] =
                        trace_product(left, down2[static_cast<std::size_t>(l2 * n + l1)]);
                }
            }
        }
    }

    std::vector<Mat> rho_up3(static_cast<std::size_t>(n * n * n));
    std::vector<Mat> down3(static_cast<std::size_t>(n * n * n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                rho_up3[static_cast<std::size_t>((a * n + b) * n + c)] =
                    rho_up2[static_cast<std::size_t>(a * n + b)] *
                    sp[static_cast<std::size_t>(c)];
                down3[static_cast<std::size_t>((a * n + b) * n + c)] =
                    down2[static_cast<std::size_t>(a * n + b)] *
                    sm[static_cast<std::size_t>(c)];
            }
        }
    }
    table.sixth.resize(static_cast<std::size_t>(n * n * n) *
                       static_cast<std::size_t>(n * n * n));
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            for (int j3 = 0; j3 < n; ++j3) {
                const Mat& left =
                    rho_up3[static_cast<std::size_t>((j1 * n + j2) * n + j3)];
                for (int l3 = 0; l3 < n; ++l3) {
                    for (int l2 = 0; l2 < n; ++l2) {
                        for (int l1 = 0; l1 < n; ++l1) {
                            table.sixth[static_cast<std::size_t>(
                                ((((j1 * n + j2) * n + j3) * n + l3) * n + l2) * n +
                                l1)] =
                                trace_product(
                                    left,
                                    down3[static_cast<std::size_t>((l3 * n + l2) * n + l1)]);
                        }
                    }
                }
            }
        }
    }
    return table;
}

double g1_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det) {
    if (m.n != geom.count()) {
        throw std::invalid_argument("moment table and geometry emitter counts differ");
    }
    return g1_phase_sum(m, phase_matrix(geom, det));
}

double g2_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det1, const Eigen::Vector3d& det2) {
    if (m.n != geom.count()) {
        throw std::invalid_argument("moment table and geometry emitter counts differ");
    }
    const int n = m.n;
    const Mat p1 = phase_matrix(geom, det1);
    const Mat p2 = phase_matrix(geom, det2);
    C num = 0.0;
    for (int j1 = 0; j1 < n; ++j1)
        for (int l1 = 0; l1 < n; ++l1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int l2 = 0; l2 < n; ++l2)
                    num += p1(j1, l1) * p2(j2, l2) * m.m4(j1, j2, l2, l1);
    const double g1a = g1_phase_sum(m, p1);
    const double g1b = g1_phase_sum(m, p2);
    if (g1a <= 0.0 || g1b <= 0.0) {
        throw std::domain_error("g2: zero intensity; normalization is undefined");
    }
    return num.real() / (g1a * g1b);
}

double g3_from_moments(const MomentTable& m, const EmitterGeometry& geom,
                       const Eigen::Vector3d& det1, const Eigen::Vector3d& det2,
                       const Eigen::Vector3d& det3) {
    if (m.n != geom.count()) {
        throw std::invalid_argument("moment table and geometry emitter counts differ");
    }
    const int n = m.n;
    const Mat p1 = phase_matrix(geom, det1);
    const Mat p2 = phase_matrix(geom, det2);
    const Mat p3 = phase_matrix(geom, det3);
    C num = 0.0;
    for (int j1 = 0; j1 < n; ++j1)
        for (int l1 = 0; l1 < n; ++l1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int l2 = 0; l2 < n; ++l2)
                    for (int j3 = 0; j3 < n; ++j3)
                        for (int l3 = 0; l3 < n; ++l3)
                            num += p1(j1, l1) * p2(j2, l2) * p3(j3, l3) *
                                   m.m6(j1, j2, j3, l3, l2, l1);
    const double g1a = g1_phase_sum(m, p1);
    const double g1b = g1_phase_sum(m, p2);
    const double g1c = g1_phase_sum(m, p3);
    if (g1a <= 0.0 || g1b <= 0.0 || g1c <= 0.0) {
        throw std::domain_error("g3: zero intensity; normalization is undefined");
    }
    return num.real() / (g1a * g1b * g1c);
}

double g1_steady(const Mat& rho_bare, const EmitterGeometry& geom,
                 const Eigen::Vector3d& det) {
    return g1_from_moments(build_moment_table(rho_bare), geom, det);
}

void CorrelationResult::validate() const {
    if (value < -1e-10) {
        throw std::runtime_error("correlation value is negative beyond tolerance");
    }
}

CorrelationResult evaluate_correlation(CorrelationKind kind, const Mat& rho_bare,
                                       const EmitterGeometry& geom,
                                       const DetectorSet& detectors, double nbar) {
    const auto& d = detectors.directions;
    CorrelationResult result;
    result.kind = kind;
    result.detectors = detectors;
    result.nbar = nbar;
    result.separation = geom.pair_distance(2, 1);
    switch (kind) {
        case CorrelationKind::G1OverPhi:
            if (d.size() != 1) {
                throw std::invalid_argument("G1 takes one detector direction");
            }
            result.value = g1_steady(rho_bare, geom, d[0]);
            break;
        case CorrelationKind::G2:
            if (d.size() != 2) {
                throw std::invalid_argument("g2 takes two detector directions");
            }
            result.value = g2_general(rho_bare, geom, d[0], d[1]);
            break;
        case CorrelationKind::G3:
            if (d.size() != 3) {
                throw std::invalid_argument("g3 takes three detector directions");
            }
            result.value = g3_general(rho_bare, geom, d[0], d[1], d[2]);
            break;
    }
    result.validate();
    return result;
}

double g2_general(const Mat& rho_bare, const EmitterGeometry& geom,
                  const Eigen::Vector3d& det1, const Eigen::Vector3d& det2) {
    return g2_from_moments(build_moment_table(rho_bare), geom, det1, det2);
}

double g3_general(const Mat& rho_bare, const EmitterGeometry& geom,
                  const Eigen::Vector3d& det1, const Eigen::Vector3d& det2,
                  const Eigen::Vector3d& det3) {
    return g3_from_moments(build_moment_table(rho_bare), geom, det1, det2, det3);
}

double g2_thermal_closed(const EmitterGeometry& geom, const Eigen::Vector3d& det1,
                         const Eigen::Vector3d& det2) {
    require_three(geom);
    const auto c1 = direction_cosines(geom, det1);
    const auto c2 = direction_cosines(geom, det2);
    double sum = 3.0;
    for (std::size_t z = 0; z < 3; ++z) {
        const double u = geom.pair_distance(kPairOrder[z][0], kPairOrder[z][1]);
        sum += std::cos(u * (c2[z] - c1[z]));
    }
    return (2.0 / 9.0) * sum;
}

double g3_thermal_closed(const EmitterGeometry& geom, const Eigen::Vector3d& det1,
                         const Eigen::Vector3d& det2, const Eigen::Vector3d& det3) {
    require_three(geom);
    const std::array<std::array<double, 3>, 3> c{direction_cosines(geom, det1),
                                                 direction_cosines(geom, det2),
                                                 direction_cosines(geom, det3)};
    std::array<double, 3> u{};
    for (std::size_t z = 0; z < 3; ++z) {
        u[z] = geom.pair_distance(kPairOrder[z][0], kPairOrder[z][1]);
    }

    double sum = 3.0;
    // Pair groups: each inter-emitter vector against the three detector pairs.
    for (std::size_t z = 0; z < 3; ++z) {
        sum += std::cos(u[z] * (c[1][z] - c[0][z]));
        sum += std::cos(u[z] * (c[2][z] - c[0][z]));
        sum += std::cos(u[z] * (c[2][z] - c[1][z]));
    }
    // Closure groups: u21 cos(theta1) + u32 cos(theta3) - u31 cos(theta2) over
    // the detector assignments printed for G3^(1), G3^(2), G3^(3).
    const auto closure = [&](int a, int b, int d) {
        return u[0] * c[static_cast<std::size_t>(a)][0] +
               u[2] * c[static_cast<std::size_t>(b)][2] -
               u[1] * c[static_cast<std::size_t>(d)][1];
    };
    sum += std::cos(closure(0, 2, 1)) + std::cos(closure(0, 1, 2));
    sum += std::cos(closure(1, 2, 0)) + std::cos(closure(1, 0, 2));
    sum += std::cos(closure(2, 1, 0)) + std::cos(closure(2, 0, 1));

    return (2.0 / 27.0) * sum;
}

CorrelatorTable correlator_table(const Mat& rho_bare) {
    const int n = emitters_of(rho_bare);
    if (n != 3) {
        throw std::invalid_argument("correlator_table expects three emitters");
    }
    const MomentTable m = build_moment_table(rho_bare);

    CorrelatorTable t;
    t.single = m.single;
    // <n_j n_k> = <S+_j S-_j S+_k S-_k> = m4(j, k, k, j) for j != k.
    t.pair = {m.m4(0, 1, 1, 0), m.m4(0, 2, 2, 0), m.m4(1, 2, 2, 1)};
    t.triple = m.m6(0, 1, 2, 2, 1, 0);
    t.r88 = trace_product(rho_bare, dicke_basis().projector_bare(8, 8)).real();

    double cross = 0.0;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            if (j != l) cross = std::max(cross, std::abs(m.single(j, l)));
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2)
            for (int l2 = 0; l2 < n; ++l2)
                for (int l1 = 0; l1 < n; ++l1)
                    if (!same_multiset2(j1, j2, l1, l2))
                        cross = std::max(cross, std::abs(m.m4(j1, j2, l2, l1)));
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2)
            for (int j3 = 0; j3 < n; ++j3)
                for (int l3 = 0; l3 < n; ++l3)
                    for (int l2 = 0; l2 < n; ++l2)
                        for (int l1 = 0; l1 < n; ++l1)
                            if (!same_multiset3({j1, j2, j3}, {l1, l2, l3}))
                                cross = std::max(
                                    cross, std::abs(m.m6(j1, j2, j3, l3, l2, l1)));
    t.max_cross = cross;
    return t;
}

double scenario_g2_fig3(double x) {
    if (x < 0.0) {
        throw std::invalid_argument("scenario_g2_fig3: x must be nonnegative");
    }
    return (2.0 / 9.0) * (3.0 + std::cos(2.0 * x) + 2.0 * std::cos(x));
}

double scenario_g3_fig3(double x) {
    if (x < 0.0) {
        throw std::invalid_argument("scenario_g3_fig3: x must be nonnegative");
    }
    return (2.0 / 27.0) *
           (7.0 + 3.0 * std::cos(2.0 * x) + 6.0 * std::cos(x) + 2.0 * std::cos(3.0 * x));
}

std::array<Eigen::Vector3d, 2> symmetric_detector_pair(const EmitterGeometry& geom) {
    constexpr double pi = 3.14159265358979323846;
    return {inplane_direction(geom, pi / 6.0), inplane_direction(geom, 5.0 * pi / 6.0)};
}

std::array<Eigen::Vector3d, 3> symmetric_detector_triple(const EmitterGeometry& geom) {
    constexpr double pi = 3.14159265358979323846;
    return {inplane_direction(geom, pi / 6.0), inplane_direction(geom, 5.0 * pi / 6.0),
            inplane_direction(geom, 3.0 * pi / 2.0)};
}

namespace {

void require_positive_nbar(double nbar) {
    if (!(nbar > 0.0)) {
        throw std::domain_error(
            "normalized Dicke correlations are undefined at nbar = 0");
    }
}

double dicke_denominator(double nbar) {
    return 10.0 * nbar * nbar + 10.0 * nbar + 3.0;
}

} // namespace

double dicke_g2(double nbar) {
    require_positive_nbar(nbar);
    const double np = 1.0 + nbar;
    const double q = np * np + nbar * nbar;
    const double d = dicke_denominator(nbar);
    return 12.0 * (1.0 + 2.0 * nbar) * (1.0 + 2.0 * nbar) * q / (d * d);
}

double dicke_g3(double nbar) {
    require_positive_nbar(nbar);
    const double np = 1.0 + nbar;
    const double q = np * np + nbar * nbar;
    const double d = dicke_denominator(nbar);
    return 36.0 * (1.0 + 2.0 * nbar) * (1.0 + 2.0 * nbar) * q * q / (d * d * d);
}

double dicke_ratio(double nbar) {
    require_positive_nbar(nbar);
    const double np = 1.0 + nbar;
    return dicke_denominator(nbar) / (3.0 * (np * np + nbar * nbar));
}

double dicke_intensity(double nbar) {
    require_positive_nbar(nbar);
    const double np = 1.0 + nbar;
    return nbar * dicke_denominator(nbar) /
           ((1.0 + 2.0 * nbar) * (np * np + nbar * nbar));
}

std::vector<double> g2_batch(const Mat& rho_bare, const EmitterGeometry& geom,
                             const std::vector<std::array<Eigen::Vector3d, 2>>& pairs,
                             Exec exec) {
    const MomentTable table = build_moment_table(rho_bare);
    std::vector<double> out(pairs.size());
    parallel_for(pairs.size(), exec, [&](std::size_t i) {
        out[i] = g2_from_moments(table, geom, pairs[i][0], pairs[i][1]);
    });
    return out;
}

std::vector<double> g3_batch(const Mat& rho_bare, const EmitterGeometry& geom,
                             const std::vector<std::array<Eigen::Vector3d, 3>>& triples,
                             Exec exec) {
    const MomentTable table = build_moment_table(rho_bare);
    std::vector<double> out(triples.size());
    parallel_for(triples.size(), exec, [&](std::size_t i) {
        out[i] = g3_from_moments(table, geom, triples[i][0], triples[i][1],
                                 triples[i][2]);
    });
    return out;
}

} // namespace triemit
