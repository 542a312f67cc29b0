#pragma once

// Subcommand bodies shared by the CLI and the tests. Each writer emits one
// CSV with a header naming columns (unit suffixes where dimensional) and one
// row per grid point. Numbers use a fixed "%.10g" format so identical inputs
// give byte-identical files.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvlc/channel.hpp"
#include "cvlc/errors.hpp"
#include "cvlc/mobility_sim.hpp"
#include "cvlc/network.hpp"
#include "cvlc/scenario.hpp"
#include "cvlc/zone_design.hpp"

namespace cvlc {

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
        row_strings(header);
    }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    template <typename... Ts>
    void row(const Ts&... cells) {
        std::vector<std::string> s;
        (s.push_back(cell(cells)), ...);
        row_strings(s);
    }

private:
    static std::string cell(double v) { return format_number(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(unsigned long v) { return std::to_string(v); }
    static std::string cell(unsigned long long v) { return std::to_string(v); }

    std::ofstream out_;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n <= 0) return v;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    v.back() = hi;
    return v;
}

// ---------------------------------------------------------------------------

inline nlohmann::json design_report(const Scenario& s) {
    const AccessPoint ap = s.cell();
    const ZoneDesign z = design_zone(ap, s.rx, s.illum, s.mob);
    const ThresholdAngle th = illumination_threshold_angle(std::max(s.illum.ratio(), 1.0 + 1e-12));
    const ZoneRates rates = zone_rates(ap, s.rx, z.r0);

    nlohmann::json j;
    j["access_point"] = {{"theta_deg", rad_to_deg(ap.theta)},
                         {"lambertian_index", ap.lambertian()},
                         {"r_cell_m", ap.radius()},
                         {"i0_cd", ap.i0},
                         {"p_sub_w", ap.p_sub()},
                         {"b_sub_hz", ap.b_sub()},
                         {"center_snr", snr_per_subcarrier(ap, s.rx, 0.0)}};
    j["design"] = to_json(z);
    j["constraints"] = {
        {"illumination", {{"Lambda_m", z.big_lambda_cap}, {"binding", z.big_lambda_cap <= z.lambda_cap}}},
        {"handover", {{"lambda_m", z.lambda_cap}, {"binding", z.lambda_cap < z.big_lambda_cap}}},
        {"primary_users", {{"u_pu", s.mob.u_pu}, {"r0_min_m", z.r0_min}}},
        {"feasible_interval_m", {z.r0_min, z.r0_max}},
        {"illumination_threshold_angle_deg", th.found ? nlohmann::json(rad_to_deg(th.angle)) : nlohmann::json(nullptr)}};
    j["zone_rates_bit_s_hz"] = {{"zone0", rates.zone0}, {"zone1", rates.zone1}};
    j["ase"] = {{"eta_interpA", ase_from_rates(ap, rates, z.n0, BandwidthReading::PerSubcarrier)},
                {"eta_interpB", ase_from_rates(ap, rates, z.n0, BandwidthReading::CellWide)}};
    return j;
}

struct AseMapSummary {
    double best_r0 = 0.0;
    int best_n0 = 0;
    double best_eta_a = 0.0;
    double best_eta_b = 0.0;
    int rows = 0;
};

/// r0 over [0, r_k] (r0_steps points) by n0 over [0, N_cell] (n0_steps
/// points, rounded to integers).
inline AseMapSummary write_ase_map(const Scenario& s, int r0_steps, int n0_steps,
                                   const std::filesystem::path& file) {
    if (r0_steps < 1 || n0_steps < 1) throw ValidationError("grid step counts must be >= 1");
    const AccessPoint ap = s.cell();
    CsvWriter csv(file, {"r0_m", "n0", "eta_interpA_bit_s_hz_m2", "eta_interpB_bit_s_hz_m2"});
    AseMapSummary sum;
    sum.best_eta_a = -1.0;
    for (double r0 : linspace(0.0, ap.radius(), r0_steps)) {
        const ZoneRates rates = zone_rates(ap, s.rx, r0);
        for (double n0d : linspace(0.0, ap.n_cell, n0_steps)) {
            const int n0 = static_cast<int>(std::lround(n0d));
            const double a = ase_from_rates(ap, rates, n0, BandwidthReading::PerSubcarrier);
            const double b = ase_from_rates(ap, rates, n0, BandwidthReading::CellWide);
            csv.row(r0, n0, a, b);
            ++sum.rows;
            if (a > sum.best_eta_a) {
                sum = {r0, n0, a, b, sum.rows};
            }
        }
    }
    return sum;
}

/// Handover and illumination radius limits against user density for each
/// beta. Infeasible points are written as nan.
inline int write_limits(const Scenario& s, const std::vector<double>& eps_grid,
                        const std::vector<double>& beta_grid, const std::filesystem::path& file) {
    const AccessPoint ap = s.cell();
    const double big_lambda = illum_radius_limit(s.illum, ap.d_v, ap.lambertian());
    CsvWriter csv(file, {"epsilon_user_m2", "beta", "lambda_m", "lambda_clamped_m", "Lambda_m", "r_cell_m"});
    int rows = 0;
    for (double eps : eps_grid) {
        for (double beta : beta_grid) {
            MobilitySpec mob = s.mob;
            mob.epsilon = eps;
            mob.beta = beta;
            double raw = std::nan(""), clamped = std::nan("");
            try {
                const HandoverLimit h = handover_radius_limit(ap, mob);
                raw = h.lambda_raw;
                clamped = h.lambda_clamped;
            } catch (const InfeasibleError&) {
            }
            csv.row(eps, beta, raw, clamped, big_lambda, ap.radius());
            ++rows;
        }
    }
    return rows;
}

/// Feasible Zone-0 radius interval against the number of primary users.
inline int write_radius_range(const Scenario& s, int upu_max, const std::vector<double>& eps_grid,
                              const std::filesystem::path& file) {
    const AccessPoint ap = s.cell();
    const double big_lambda = illum_radius_limit(s.illum, ap.d_v, ap.lambertian());
    CsvWriter csv(file, {"u_pu", "epsilon_user_m2", "r0_min_m", "r0_max_m"});
    int rows = 0;
    for (double eps : eps_grid) {
        MobilitySpec mob = s.mob;
        mob.epsilon = eps;
        double r0_max = std::nan("");
        try {
            r0_max = std::min(big_lambda, handover_radius_limit(ap, mob).lambda_clamped);
        } catch (const InfeasibleError&) {
        }
        for (int u = 0; u <= upu_max; ++u) {
            const double r0_min = eps > 0.0 ? std::sqrt(u / (kPi * eps)) : (u == 0 ? 0.0 : std::nan(""));
            csv.row(u, eps, r0_min, r0_max);
            ++rows;
        }
    }
    return rows;
}

inline std::vector<SweepRow> write_failure(const Scenario& s, const std::vector<double>& beta_grid,
                                           const std::vector<double>& eps_grid,
                                           const std::filesystem::path& file,
                                           const std::filesystem::path& series_file = {}) {
    const auto rows = sweep(s.layout_template(), s.sim, beta_grid, eps_grid);
    CsvWriter csv(file, {"beta", "epsilon_user_m2", "delta0", "delta1", "eta_norm", "handovers", "out_of_coverage"});
    for (const auto& r : rows) {
        csv.row(r.beta, r.epsilon, r.stats.delta0, r.stats.delta1, r.eta_norm,
                static_cast<unsigned long long>(r.stats.handover_count), r.stats.out_of_coverage_fraction);
    }
    if (!series_file.empty()) {
        CsvWriter ser(series_file, {"beta", "epsilon_user_m2", "step", "time_s", "delta0_t", "delta1_t"});
        for (const auto& r : rows) {
            for (int t = 0; t < r.stats.steps; ++t) {
                ser.row(r.beta, r.epsilon, t + 1, (t + 1) * s.sim.t_s, r.stats.series0[t], r.stats.series1[t]);
            }
        }
    }
    return rows;
}

inline nlohmann::json validate_report(const NetworkLayout& layout, const LayoutReport& rep) {
    nlohmann::json j;
    j["ok"] = rep.ok();
    j["bands_disjoint"] = rep.bands_disjoint;
    j["partition_ok"] = rep.partition_ok;
    j["overlap_in_zone1_only"] = rep.overlap_in_zone1_only;
    j["violations"] = rep.violations;
    j["warnings"] = rep.warnings;
    j["layout"] = to_json(layout);
    return j;
}

}  // namespace cvlc
