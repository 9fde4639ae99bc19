#include "triemit/cli_runner.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "triemit/algebra.hpp"
#include "triemit/correlations.hpp"
#include "triemit/couplings.hpp"
#include "triemit/csv.hpp"
#include "triemit/dynamics.hpp"
#include "triemit/geometry.hpp"
#include "triemit/validation.hpp"

namespace triemit {

namespace {

constexpr double kPi = std::numbers::pi;

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Validate: return "validate";
        case RunMode::Steady: return "steady";
        case RunMode::Evolve: return "evolve";
        case RunMode::SweepX: return "sweep-x";
        case RunMode::SweepNbar: return "sweep-nbar";
        case RunMode::Corr: return "corr";
    }
    return "?";
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# triemit mode=" << mode_name(cfg.mode)
        << " nbar=" << format_double(resolved_nbar(cfg))
        << " u=" << format_double(cfg.u)
        << " gamma=" << format_double(cfg.gamma)
        << " chi=" << (cfg.chi_override ? format_double(*cfg.chi_override) : "auto")
        << " delta=" << (cfg.delta_override ? format_double(*cfg.delta_override) : "auto")
        << " grid=" << format_double(cfg.grid.start) << ":"
        << format_double(cfg.grid.stop) << ":" << cfg.grid.count;
    out << " detectors=";
    for (std::size_t i = 0; i < cfg.detectors.size(); ++i) {
        if (i > 0) out << ";";
        out << format_double(cfg.detectors[i].x()) << ","
            << format_double(cfg.detectors[i].y()) << ","
            << format_double(cfg.detectors[i].z());
    }
    return out.str();
}

std::vector<double> grid_points(const GridSpec& grid) {
    if (grid.count < 2) {
        throw ConfigError("grid count must be at least 2");
    }
    std::vector<double> pts(static_cast<std::size_t>(grid.count));
    for (int i = 0; i < grid.count; ++i) {
        pts[static_cast<std::size_t>(i)] =
            grid.start + (grid.stop - grid.start) * i / (grid.count - 1);
    }
    return pts;
}

// chi and delta for the run: overrides win, otherwise derived from the
// canonical triangle with the dipole along the plane normal.
std::pair<double, double> resolved_couplings(const RunConfig& cfg) {
    const double chi =
        cfg.chi_override ? *cfg.chi_override : chi_pair(cfg.u, kPi / 2.0);
    const double delta = cfg.delta_override
                             ? *cfg.delta_override
                             : delta_pair(cfg.u, kPi / 2.0, cfg.gamma);
    return {chi, delta};
}

CouplingSet run_coupling_set(const RunConfig& cfg, double nbar) {
    if (cfg.chi_override || cfg.delta_override) {
        const auto [chi, delta] = resolved_couplings(cfg);
        return uniform_couplings(3, chi, delta, cfg.gamma, nbar);
    }
    const auto geom = make_equilateral(cfg.u, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    return build_couplings(geom, cfg.gamma, nbar);
}

void append_row(std::string& out, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(row[i]);
    }
    out += '\n';
}

} // namespace

double resolved_nbar(const RunConfig& cfg) {
    if (cfg.nbar && cfg.omega0_over_kt) {
        throw ConfigError("give either nbar or omega0-over-kt, not both");
    }
    if (cfg.omega0_over_kt) {
        if (!(*cfg.omega0_over_kt > 0.0)) {
            throw ConfigError("omega0-over-kt must be positive");
        }
        return thermal_occupation(*cfg.omega0_over_kt);
    }
    const double nbar = cfg.nbar.value_or(1.0);
    if (nbar < 0.0) {
        throw ConfigError("nbar must be nonnegative");
    }
    return nbar;
}

std::string run_sweep_x_csv(const RunConfig& cfg) {
    const auto pts = grid_points(cfg.grid);
    std::vector<std::array<double, 2>> rows(pts.size());
    parallel_for(pts.size(), cfg.exec, [&](std::size_t i) {
        const double x = pts[i] * kPi;
        rows[i] = {scenario_g2_fig3(x), scenario_g3_fig3(x)};
    });
    std::string out = config_echo(cfg) + "\n" + "x_over_pi,g2,g3\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        append_row(out, {pts[i], rows[i][0], rows[i][1]});
    }
    return out;
}

std::string run_sweep_nbar_csv(const RunConfig& cfg) {
    const auto pts = grid_points(cfg.grid);
    for (double nbar : pts) {
        if (!(nbar > 0.0)) {
            throw ConfigError("sweep-nbar grid must be strictly positive");
        }
    }
    std::vector<std::array<double, 4>> rows(pts.size());
    parallel_for(pts.size(), cfg.exec, [&](std::size_t i) {
        const double nbar = pts[i];
        rows[i] = {dicke_g2(nbar), dicke_g3(nbar), dicke_ratio(nbar),
                   dicke_intensity(nbar)};
    });
    std::string out = config_echo(cfg) + "\n" + "nbar,g2_dicke,g3_dicke,ratio,intensity\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        append_row(out, {pts[i], rows[i][0], rows[i][1], rows[i][2], rows[i][3]});
    }
    return out;
}

std::string run_corr_csv(const RunConfig& cfg) {
    if (cfg.detectors.size() < 2) {
        throw ConfigError("corr needs two or three detector directions");
    }
    const double nbar = resolved_nbar(cfg);
    if (!(nbar > 0.0)) {
        throw ConfigError("corr needs nbar > 0; normalized correlations are "
                          "undefined for an empty reservoir");
    }
    const auto geom = make_equilateral(cfg.u, Eigen::Vector3d::UnitZ(),
                                       Eigen::Vector3d::UnitZ());
    const auto lv = build_generator_bare(run_coupling_set(cfg, nbar));
    const Eigen::MatrixXcd rho = steady_state(lv).rho;

    const auto& d = cfg.detectors;
    const auto g2 = evaluate_correlation(CorrelationKind::G2, rho, geom,
                                         make_detectors({d[0], d[1]}), nbar);
    const double g2_closed = g2_thermal_closed(geom, d[0], d[1]);

    std::string out = config_echo(cfg) + "\n";
    if (d.size() == 2) {
        out += "u,nbar,g2,g2_closed,g2_abs_diff\n";
        append_row(out, {cfg.u, nbar, g2.value, g2_closed,
                         std::abs(g2.value - g2_closed)});
    } else {
        const auto g3 = evaluate_correlation(CorrelationKind::G3, rho, geom,
                                             make_detectors({d[0], d[1], d[2]}), nbar);
        const double g3_closed = g3_thermal_closed(geom, d[0], d[1], d[2]);
        out += "u,nbar,g2,g2_closed,g2_abs_diff,g3,g3_closed,g3_abs_diff\n";
        append_row(out, {cfg.u, nbar, g2.value, g2_closed,
                         std::abs(g2.value - g2_closed), g3.value, g3_closed,
                         std::abs(g3.value - g3_closed)});
    }
    return out;
}

std::string run_steady_csv(const RunConfig& cfg) {
    const double nbar = resolved_nbar(cfg);
    if (!(nbar > 0.0)) {
        throw ConfigError("steady needs nbar > 0");
    }
    const auto [chi, delta] = resolved_couplings(cfg);
    const auto lv = build_generator_collective(cfg.gamma, nbar, chi, delta);
    const auto ss = steady_state(lv);

    std::array<double, 8> analytic{};
    if (chi >= 1.0 - 1e-12) {
        const auto dicke = analytic_steady_dicke(nbar);
        analytic = {dicke[0], dicke[1], 0.0, 0.0, dicke[2], 0.0, 0.0, dicke[3]};
    } else {
        analytic = analytic_steady_extended(nbar);
    }

    std::string out = config_echo(cfg) + "\n" + "observable,value,analytic,abs_diff\n";
    for (int i = 0; i < 8; ++i) {
        const double v = ss.rho(i, i).real();
        const double a = analytic[static_cast<std::size_t>(i)];
        out += "p" + std::to_string(i + 1) + "," + format_double(v) + "," +
               format_double(a) + "," + format_double(std::abs(v - a)) + "\n";
    }
    const ReducedState red = project_reduced(ss.rho);
    const std::array<std::pair<const char*, double>, 4> coh{
        {{"re_r32", red.r32.real()},
         {"im_r32", red.r32.imag()},
         {"re_r65", red.r65.real()},
         {"im_r65", red.r65.imag()}}};
    for (const auto& [name, v] : coh) {
        out += std::string(name) + "," + format_double(v) + ",0," +
               format_double(std::abs(v)) + "\n";
    }
    return out;
}

std::string run_evolve_csv(const RunConfig& cfg) {
    if (cfg.grid.start < 0.0 || cfg.grid.stop < cfg.grid.start) {
        throw ConfigError("evolve needs a nonnegative, increasing time grid");
    }
    const double nbar = resolved_nbar(cfg);
    const auto [chi, delta] = resolved_couplings(cfg);
    const auto lv = build_generator_collective(cfg.gamma, nbar, chi, delta);
    const auto pts = grid_points(cfg.grid);

    std::vector<ReducedState> rows(pts.size());
    parallel_for(pts.size(), cfg.exec, [&](std::size_t i) {
        rows[i] = project_reduced(evolve(lv, ground_state(8), pts[i]));
    });

    std::string out = config_echo(cfg) + "\n" +
                      "t,p1,p2,p3,p4,p5,p6,p7,p8,re_r32,im_r32,re_r65,im_r65\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> row{pts[i]};
        row.insert(row.end(), rows[i].populations.begin(), rows[i].populations.end());
        row.push_back(rows[i].r32.real());
        row.push_back(rows[i].r32.imag());
        row.push_back(rows[i].r65.real());
        row.push_back(rows[i].r65.imag());
        append_row(out, row);
    }
    return out;
}

std::string run_validate_report(const RunConfig& cfg, bool& all_passed) {
    ValidationConfig vcfg;
    vcfg.nbar = resolved_nbar(cfg);
    vcfg.u = cfg.u;
    vcfg.gamma = cfg.gamma;
    vcfg.chi_override = cfg.chi_override;
    vcfg.delta_override = cfg.delta_override;
    vcfg.exec = cfg.exec;
    const auto results = run_validation(vcfg);

    nlohmann::ordered_json report;
    report["mode"] = "validate";
    report["config"] = {
        {"nbar", vcfg.nbar},
        {"u", vcfg.u},
        {"gamma", vcfg.gamma},
        {"chi", cfg.chi_override ? nlohmann::ordered_json(*cfg.chi_override)
                                 : nlohmann::ordered_json(nullptr)},
        {"delta", cfg.delta_override ? nlohmann::ordered_json(*cfg.delta_override)
                                     : nlohmann::ordered_json(nullptr)},
    };
    int failed = 0;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json item;
        item["name"] = r.name;
        item["pass"] = r.pass;
        item["max_abs_error"] = std::min(r.max_abs_error, 1e300);
        if (!r.detail.empty()) {
            item["detail"] = r.detail;
        }
        checks.push_back(std::move(item));
        if (!r.pass) ++failed;
    }
    report["checks"] = std::move(checks);
    report["passed"] = static_cast<int>(results.size()) - failed;
    report["failed"] = failed;
    all_passed = failed == 0;
    return report.dump(2) + "\n";
}

int run_command(const RunConfig& cfg) {
    try {
        std::string payload;
        bool ok = true;
        switch (cfg.mode) {
            case RunMode::Validate: payload = run_validate_report(cfg, ok); break;
            case RunMode::Steady: payload = run_steady_csv(cfg); break;
            case RunMode::Evolve: payload = run_evolve_csv(cfg); break;
            case RunMode::SweepX: payload = run_sweep_x_csv(cfg); break;
            case RunMode::SweepNbar: payload = run_sweep_nbar_csv(cfg); break;
            case RunMode::Corr: payload = run_corr_csv(cfg); break;
        }
        if (cfg.output_path.empty() || cfg.output_path == "-") {
            std::cout << payload;
        } else {
            std::ofstream file(cfg.output_path, std::ios::binary);
            if (!file) {
                throw IoError("cannot open output path: " + cfg.output_path);
            }
            file << payload;
            if (!file.good()) {
                throw IoError("write failed: " + cfg.output_path);
            }
        }
        return ok ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace triemit
