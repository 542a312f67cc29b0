// cvlc: design and simulation front end for cognitive VLC cells.
//
//   cvlc design        zone design + constraint report (JSON on stdout)
//   cvlc ase-map       ASE over (r0, n0)               -> ase_map.csv
//   cvlc limits        radius limits vs density        -> limits.csv
//   cvlc radius-range  feasible r0 vs primary users    -> radius_range.csv
//   cvlc simulate      Monte Carlo failure rates       -> failure.csv, failure_series.csv
//   cvlc validate      layout and band-assignment checks (JSON on stdout)
//
// Exit codes: 0 ok, 1 usage, 2 validation, 3 infeasible, 4 other failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvlc/commands.hpp"
#include "cvlc/errors.hpp"
#include "cvlc/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kInfeasible = 3, kFailure = 4 };

void report_error(const std::string& kind, const std::string& message,
                  const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json rec = {{"error", kind}, {"message", message}};
    rec.update(extra);
    std::cerr << rec.dump() << '\n';
}

/// "a,b,c" or "lo:step:hi".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, step = 0, hi = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || !(step > 0) || hi < lo) {
            throw cvlc::ValidationError("bad range grid '" + text + "', expected lo:step:hi");
        }
        const long n = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw cvlc::ValidationError("bad grid value '" + item + "'");
        }
    }
    if (out.empty()) throw cvlc::ValidationError("empty grid");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cognitive VLC cell design and mobility simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::string out_dir = ".";
    app.add_option("--scenario", scenario_path, "Scenario JSON (defaults apply when omitted)");
    app.add_option("--seed", seed, "Simulation seed");
    app.add_option("--out", out_dir, "Output directory for CSV files");
    app.add_option("--replications", replications, "Monte Carlo replications")->check(CLI::PositiveNumber);

    std::optional<double> d_eps, d_beta;
    std::optional<int> d_upu;
    auto* design = app.add_subcommand("design", "Zone design and constraint report");
    design->add_option("--epsilon", d_eps, "User density override (users/m^2)");
    design->add_option("--beta", d_beta, "Departing primary-user fraction override");
    design->add_option("--u-pu", d_upu, "Target primary users override");

    int r0_steps = 50;
    std::optional<int> n0_steps;
    auto* ase_map = app.add_subcommand("ase-map", "ASE over (r0, n0)");
    ase_map->add_option("--r0-steps", r0_steps, "Points on [0, r_cell]")->check(CLI::PositiveNumber);
    ase_map->add_option("--n0-steps", n0_steps, "Points on [0, N_cell] (default N_cell + 1)")->check(CLI::PositiveNumber);

    std::string lim_eps = "0.05:0.05:2", lim_beta = "0,0.2,0.4,0.6,0.8";
    auto* limits = app.add_subcommand("limits", "Handover and illumination radius limits");
    limits->add_option("--epsilon-grid", lim_eps, "Densities, 'a,b,...' or 'lo:step:hi'");
    limits->add_option("--beta-grid", lim_beta, "Beta values");

    std::string rr_eps = "0.2,0.5,1,1.5";
    int upu_max = 40;
    auto* radius = app.add_subcommand("radius-range", "Feasible Zone-0 radius vs primary users");
    radius->add_option("--epsilon-grid", rr_eps, "Densities");
    radius->add_option("--upu-max", upu_max, "Largest U_pu in the sweep")->check(CLI::NonNegativeNumber);

    std::string sim_beta = "0,0.2,0.4,0.6,0.8,1", sim_eps = "0.3,0.4,0.5";
    unsigned threads = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo failure rates over beta x epsilon");
    simulate->add_option("--beta-grid", sim_beta, "Beta values");
    simulate->add_option("--epsilon-grid", sim_eps, "Densities");
    simulate->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* validate = app.add_subcommand("validate", "Layout and band-assignment checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kUsage;
    }

    try {
        cvlc::Scenario s = scenario_path.empty() ? cvlc::Scenario{} : cvlc::load_scenario(scenario_path);
        if (seed) s.sim.seed = *seed;
        if (replications) s.sim.replications = *replications;
        s.sim.threads = threads;
        s.validate();
        const std::filesystem::path out(out_dir);

        if (*design) {
            if (d_eps) s.mob.epsilon = *d_eps;
            if (d_beta) s.mob.beta = *d_beta;
            if (d_upu) s.mob.u_pu = *d_upu;
            s.mob.validate();
            std::cout << cvlc::design_report(s).dump(2) << '\n';
            return kOk;
        }
        if (*validate) {
            const auto layout = s.build();
            const auto rep = cvlc::validate_layout(layout);
            std::cout << cvlc::validate_report(layout, rep).dump(2) << '\n';
            for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
            if (!rep.ok()) {
                report_error("validation", "layout invariants violated", {{"violations", rep.violations}});
                return kValidation;
            }
            return kOk;
        }

        std::filesystem::create_directories(out);
        if (*ase_map) {
            const auto sum = cvlc::write_ase_map(s, r0_steps, n0_steps.value_or(s.ap.n_cell + 1), out / "ase_map.csv");
            std::cout << nlohmann::json{{"file", (out / "ase_map.csv").string()},
                                        {"rows", sum.rows},
                                        {"peak", {{"r0_m", sum.best_r0},
                                                  {"n0", sum.best_n0},
                                                  {"eta_interpA", sum.best_eta_a},
                                                  {"eta_interpB", sum.best_eta_b}}}}
                             .dump(2)
                      << '\n';
        } else if (*limits) {
            const int rows = cvlc::write_limits(s, parse_grid(lim_eps), parse_grid(lim_beta), out / "limits.csv");
            std::cout << nlohmann::json{{"file", (out / "limits.csv").string()}, {"rows", rows}}.dump(2) << '\n';
        } else if (*radius) {
            const int rows = cvlc::write_radius_range(s, upu_max, parse_grid(rr_eps), out / "radius_range.csv");
            std::cout << nlohmann::json{{"file", (out / "radius_range.csv").string()}, {"rows", rows}}.dump(2) << '\n';
        } else if (*simulate) {
            const auto rows = cvlc::write_failure(s, parse_grid(sim_beta), parse_grid(sim_eps), out / "failure.csv",
                                                  out / "failure_series.csv");
            std::cout << nlohmann::json{{"file", (out / "failure.csv").string()},
                                        {"rows", rows.size()},
                                        {"replications", s.sim.replications},
                                        {"seed", s.sim.seed}}
                             .dump(2)
                      << '\n';
        }
        return kOk;
    } catch (const cvlc::InfeasibleError& e) {
        report_error("infeasible", e.what(), {{"bound", e.bound()}, {"value", e.value()}, {"limit", e.limit()}});
        return kInfeasible;
    } catch (const cvlc::ValidationError& e) {
        report_error("validation", e.what());
        return kValidation;
    } catch (const cvlc::DomainError& e) {
        report_error("validation", e.what());
        return kValidation;
    } catch (const cvlc::LayoutError& e) {
        report_error("validation", e.what());
        return kValidation;
    } catch (const std::exception& e) {
        report_error("failure", e.what());
        return kFailure;
    }
}
