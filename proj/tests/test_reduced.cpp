#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "triemit/dynamics.hpp"

using namespace triemit;

namespace {

ReducedState random_reduced(std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 6.28);
    ReducedState s;
    double total = 0.0;
    for (auto& p : s.populations) {
        p = unif(rng);
        total += p;
    }
    for (auto& p : s.populations) p /= total;
    s.r32 = std::polar(0.9 * std::sqrt(s.populations[1] * s.populations[2]) * unif(rng),
                       phase(rng));
    s.r65 = std::polar(0.9 * std::sqrt(s.populations[4] * s.populations[5]) * unif(rng),
                       phase(rng));
    return s;
}

} // namespace

TEST_CASE("population derivatives conserve probability") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const ReducedState s = random_reduced(rng);
        const ReducedState d = reduced_rhs(s, 1.0, 1.3, 0.4, 2.0);
        double sum = 0.0;
        for (double v : d.populations) sum += v;
        CHECK(std::abs(sum) < 1e-14);
    }
}

TEST_CASE("analytic steady values are fixed points") {
    for (double chi : {0.2, 0.6, 0.95}) {
        for (double delta : {0.0, 1.0, 7.0}) {
            for (double gamma : {0.5, 2.0}) {
                for (double nbar : {0.1, 1.0, 6.0}) {
                    ReducedState s;
                    const auto pops = analytic_steady_extended(nbar);
                    std::copy(pops.begin(), pops.end(), s.populations.begin());
                    const ReducedState d = reduced_rhs(s, gamma, nbar, chi, delta);
                    for (double v : d.populations) {
                        CHECK(std::abs(v) < 1e-12);
                    }
                    CHECK(std::abs(d.r32) < 1e-12);
                    CHECK(std::abs(d.r65) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("reduced right-hand side matches the projected full generator") {
    std::mt19937 rng(31);
    for (const auto& [chi, delta, nbar] :
         {std::array<double, 3>{0.5, 1.0, 1.0}, std::array<double, 3>{0.1, 5.0, 0.3},
          std::array<double, 3>{0.9, -2.0, 2.5}, std::array<double, 3>{1.0, 3.0, 1.0}}) {
        const auto lv = build_generator_collective(1.0, nbar, chi, delta);
        for (int trial = 0; trial < 25; ++trial) {
            const ReducedState s = random_reduced(rng);
            const ReducedState expect =
                project_reduced(unvectorize(lv.matrix * vectorize(embed_reduced(s)), 8));
            const ReducedState got = reduced_rhs(s, 1.0, nbar, chi, delta);
            for (std::size_t i = 0; i < 8; ++i) {
                CHECK(std::abs(got.populations[i] - expect.populations[i]) < 1e-12);
            }
            CHECK(std::abs(got.r32 - expect.r32) < 1e-12);
            CHECK(std::abs(got.r65 - expect.r65) < 1e-12);
        }
    }
}

TEST_CASE("reduced embedding round-trips") {
    std::mt19937 rng(37);
    const ReducedState s = random_reduced(rng);
    const ReducedState back = project_reduced(embed_reduced(s));
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(back.populations[i] == doctest::Approx(s.populations[i]).epsilon(1e-15));
    }
    CHECK(std::abs(back.r32 - s.r32) == 0.0);
    CHECK(std::abs(back.r65 - s.r65) == 0.0);
}

TEST_CASE("coherences rotate at 3 delta") {
    // With all couplings switched off except the dipole shift, the printed
    // equations make <R_32> precess at frequency 3 delta. Check the phase of
    // the linear part against the generator-projected derivative.
    const double delta = 4.0;
    ReducedState s;
    s.populations = {0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.05, 0.05};
    s.r32 = {0.05, 0.0};
    const auto lv = build_generator_collective(1.0, 1.0, 0.5, delta);
    const ReducedState proj =
        project_reduced(unvectorize(lv.matrix * vectorize(embed_reduced(s)), 8));
    const ReducedState anal = reduced_rhs(s, 1.0, 1.0, 0.5, delta);
    CHECK(std::abs(proj.r32 - anal.r32) < 1e-13);
    // The imaginary part of the derivative carries the +3 delta rotation.
    CHECK(proj.r32.imag() == doctest::Approx(3.0 * delta * 0.05).epsilon(1e-10));
}
