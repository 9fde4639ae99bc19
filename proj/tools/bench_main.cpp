// Benchmark comparing the serial reference kernels against the OpenMP
// batch kernels: steady-state solves over a parameter grid and correlation
// evaluations over many detector placements.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "triemit/algebra.hpp"
#include "triemit/correlations.hpp"
#include "triemit/dynamics.hpp"
#include "triemit/geometry.hpp"
#include "triemit/parallel.hpp"

using namespace triemit;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

struct GridPoint {
    double chi;
    double delta;
    double nbar;
};

double bench_steady(const std::vector<GridPoint>& grid, Exec exec,
                    std::vector<double>& out) {
    out.assign(grid.size(), 0.0);
    const auto start = std::chrono::steady_clock::now();
    parallel_for(grid.size(), exec, [&](std::size_t i) {
        const auto lv =
            build_generator_collective(1.0, grid[i].nbar, grid[i].chi, grid[i].delta);
        out[i] = steady_state(lv).rho(7, 7).real();
    });
    return seconds_since(start);
}

double bench_g3(const Eigen::MatrixXcd& rho, const EmitterGeometry& geom,
                const std::vector<std::array<Eigen::Vector3d, 3>>& triples, Exec exec,
                std::vector<double>& out) {
    const auto start = std::chrono::steady_clock::now();
    out = g3_batch(rho, geom, triples, exec);
    return seconds_since(start);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

int main() {
    std::printf("threads: %d (openmp %s)\n", max_threads(),
                openmp_enabled() ? "on" : "off");

    // Workload 1: kernel solves across a coupling/thermal grid.
    std::vector<GridPoint> grid;
    for (int ic = 0; ic < 12; ++ic) {
        for (int id = 0; id < 8; ++id) {
            for (int in = 0; in < 8; ++in) {
                grid.push_back({0.05 + 0.9 * ic / 11.0, 10.0 * id / 7.0,
                                0.1 + 9.9 * in / 7.0});
            }
        }
    }
    std::vector<double> serial_out, parallel_out;
    const double t_serial = bench_steady(grid, Exec::Serial, serial_out);
    const double t_parallel = bench_steady(grid, Exec::Parallel, parallel_out);
    std::printf("steady-state grid (%zu solves): serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  max|diff| %.1e\n",
                grid.size(), t_serial, t_parallel, t_serial / t_parallel,
                max_diff(serial_out, parallel_out));

    // Workload 2: third-order correlations over many detector triples.
    const auto geom = make_equilateral(2.5, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    const auto lv = build_generator_collective(1.0, 1.0, 0.5, 1.0);
    const Eigen::MatrixXcd rho = dicke_basis().to_bare(steady_state(lv).rho);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto unit = [&] {
        Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
        return v.normalized();
    };
    std::vector<std::array<Eigen::Vector3d, 3>> triples(20000);
    for (auto& t : triples) {
        t = {unit(), unit(), unit()};
    }
    std::vector<double> g3_serial, g3_parallel;
    const double g_serial = bench_g3(rho, geom, triples, Exec::Serial, g3_serial);
    const double g_parallel = bench_g3(rho, geom, triples, Exec::Parallel, g3_parallel);
    std::printf("g3 batch (%zu triples): serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  max|diff| %.1e\n",
                triples.size(), g_serial, g_parallel, g_serial / g_parallel,
                max_diff(g3_serial, g3_parallel));

    return 0;
}
