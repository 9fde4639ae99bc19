#include <doctest.h>

#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "test_common.hpp"
#include "triemit/geometry.hpp"

using namespace triemit;
constexpr double pi = std::numbers::pi;

TEST_CASE("equilateral triangle has equal sides and exact pair closure") {
    const auto geom = make_equilateral(pi, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    for (const auto& pr : kPairOrder) {
        CHECK(geom.pair_distance(pr[0], pr[1]) == doctest::Approx(pi).epsilon(1e-13));
    }
    const Eigen::Vector3d res =
        geom.pair_vector(2, 1) + geom.pair_vector(3, 2) - geom.pair_vector(3, 1);
    CHECK(res.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pair closure survives arbitrary orientation") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Vector3d normal = test_common::random_unit(rng);
        const auto g = make_equilateral(0.3 + trial * 0.7, normal,
                                        test_common::random_unit(rng));
        const Eigen::Vector3d res =
            g.pair_vector(2, 1) + g.pair_vector(3, 2) - g.pair_vector(3, 1);
        CHECK(res.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("direction cosines on the canonical triangle") {
    const auto geom = make_equilateral(1.0, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    const Eigen::Vector3d edge = geom.pair_vector(2, 1).normalized();

    const auto along = direction_cosines(geom, edge);
    CHECK(along[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(along[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(along[2] == doctest::Approx(-0.5).epsilon(1e-14));

    const auto normal = direction_cosines(geom, Eigen::Vector3d::UnitZ());
    CHECK(std::abs(normal[0]) < 1e-14);
    CHECK(std::abs(normal[1]) < 1e-14);
    CHECK(std::abs(normal[2]) < 1e-14);

    const auto opposite = direction_cosines(geom, -edge);
    CHECK(opposite[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(opposite[1] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(opposite[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dipole pair angles") {
    const auto flat = make_equilateral(1.0, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    for (double xi : dipole_pair_angles(flat)) {
        CHECK(xi == doctest::Approx(pi / 2).epsilon(1e-14));
    }

    auto aligned = flat;
    aligned.dipole_direction = aligned.pair_vector(2, 1).normalized();
    const auto xi = dipole_pair_angles(aligned);
    CHECK(xi[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(xi[1] == doctest::Approx(pi / 3).epsilon(1e-13));
}

TEST_CASE("outputs are invariant under a common rotation") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto geom = make_equilateral(1.7, test_common::random_unit(rng),
                                           test_common::random_unit(rng));
        const Eigen::Vector3d det = test_common::random_unit(rng);
        std::uniform_real_distribution<double> angle(0.0, 2 * pi);
        const Eigen::Matrix3d rot =
            Eigen::AngleAxisd(angle(rng), test_common::random_unit(rng))
                .toRotationMatrix();
        const auto spun = rotated(geom, rot);

        const auto a = direction_cosines(geom, det);
        const auto b = direction_cosines(spun, rot * det);
        const auto xa = dipole_pair_angles(geom);
        const auto xb = dipole_pair_angles(spun);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(a[i] - b[i]) < 1e-12);
            CHECK(std::abs(xa[i] - xb[i]) < 1e-12);
            CHECK(std::abs(a[i]) <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(make_equilateral(0.0, Eigen::Vector3d::UnitZ(),
                                     Eigen::Vector3d::UnitZ()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_equilateral(1.0, Eigen::Vector3d::Zero(),
                                     Eigen::Vector3d::UnitZ()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_equilateral(1.0, Eigen::Vector3d::UnitZ(),
                                     Eigen::Vector3d::Zero()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_detectors({}), std::invalid_argument);
    CHECK_THROWS_AS(make_detectors({Eigen::Vector3d::Zero()}), std::invalid_argument);
}

TEST_CASE("detector sets normalize their directions") {
    const auto dets = make_detectors({Eigen::Vector3d(0, 0, 2.5)});
    CHECK(dets.directions.size() == 1);
    CHECK(dets.directions[0].norm() == doctest::Approx(1.0).epsilon(1e-14));
}
