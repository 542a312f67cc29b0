// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cvlc/commands.hpp"
#include "cvlc/mobility_sim.hpp"
#include "cvlc/network.hpp"
#include "cvlc/zone_design.hpp"

namespace {

using namespace cvlc;
namespace fs = std::filesystem;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << "  " << detail << std::endl;
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

AccessPoint reference_cell() {
    AccessPoint ap;
    ap.theta = deg_to_rad(60.0);
    ap.d_v = 3.5;
    ap.i0 = 800.0 * 3.5 * 3.5;
    return ap;
}

void ac1() {
    const double m = lambertian_index(deg_to_rad(60.0));
    const double r = cell_radius(3.5, deg_to_rad(60.0));
    const double r_ref = 3.5 * std::sqrt(3.0);
    const bool ok = std::abs(m - 1.0) <= 1e-12 && std::abs(r - r_ref) <= 1e-12 * r_ref;
    report("AC1 lambertian checkpoints", ok, fmt("m(60deg)=%.15g r_cell=%.15g m", m, r));
}

void ac2() {
    const double big = illum_radius_limit(IlluminationSpec{200.0, 800.0}, 3.5, 1.0);
    report("AC2 illumination limit", std::abs(big - 3.5) <= 1e-9, fmt("Lambda=%.12g m", big));
}

void ac3() {
    const auto th = illumination_threshold_angle(4.0);
    const double deg = rad_to_deg(th.angle);
    report("AC3 threshold angle", th.found && deg >= 36.5 && deg <= 37.5, fmt("theta*=%.4f deg", deg));
}

void ac4() {
    MobilitySpec mob;
    mob.epsilon = 1.5;
    mob.beta = 0.4;
    mob.b_ho = 1e4;
    const auto h = handover_radius_limit(reference_cell(), mob);
    report("AC4 handover limit", h.lambda_raw >= 2.95 && h.lambda_raw <= 3.05, fmt("lambda=%.4f m", h.lambda_raw));
}

void ac5() {
    const double eps[] = {0.2, 0.5, 1.0, 1.5};
    const int expected[] = {46, 45, 44, 43};
    bool ok = true;
    std::string got;
    for (int i = 0; i < 4; ++i) {
        MobilitySpec mob;
        mob.epsilon = eps[i];
        mob.beta = 0.4;
        const auto h = handover_radius_limit(reference_cell(), mob);
        const int n0 = max_zone0_subcarriers(mob, h.lambda_raw, 64);
        ok = ok && n0 == expected[i];
        got += (i ? "," : "") + std::to_string(n0);
    }
    report("AC5 subcarrier counts", ok, "n0={" + got + "}");
}

void ac6() {
    const AccessPoint ap = reference_cell();
    bool ok = true;
    int points = 0;
    for (double eps = 0.01; eps <= 0.3 + 1e-12; eps += 0.01) {
        for (double beta : {0.0, 0.2, 0.4, 0.6, 0.8}) {
            MobilitySpec mob;
            mob.epsilon = eps;
            mob.beta = beta;
            ok = ok && handover_radius_limit(ap, mob).lambda_clamped == ap.radius();
            ++points;
        }
    }
    report("AC6 flat region", ok, "clamped lambda == r_cell at " + std::to_string(points) + " points");
}

void ac7() {
    const AccessPoint ap = reference_cell();
    const ReceiverModel rx;
    const double center_db = 10.0 * std::log10(snr_per_subcarrier(ap, rx, 0.0));
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double r0 : linspace(0.35, 3.5, 10)) {
        worst = std::max(worst, compare_rate_routes(ap, rx, 0.0, r0).relative_error);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report("AC7 closed form vs quadrature", center_db >= 20.0 && worst <= 0.02 && secs < 1.0,
           fmt("Zone-0 splits r0 in [0.35,3.5] m: max rel err %.4f, center SNR %.2f dB, %.3f s", worst, center_db,
               secs));

    // Informational: the outer ring reaches the low-SNR cell edge.
    double worst1 = 0.0;
    for (double r0 : linspace(0.35, 3.5, 10)) {
        worst1 = std::max(worst1, compare_rate_routes(ap, rx, r0, ap.radius()).relative_error);
    }
    std::cout << "       note: outer-ring splits max rel err " << worst1 << " (edge SNR "
              << 10.0 * std::log10(snr_per_subcarrier(ap, rx, ap.radius())) << " dB)" << std::endl;
}

void ac8() {
    const AccessPoint ap = reference_cell();
    const ReceiverModel rx;
    const auto r0_grid = linspace(0.0, ap.radius(), 50);
    double best = -1.0, best_r0 = -1.0, best_b = 0.0;
    int best_n0 = -1;
    for (double r0 : r0_grid) {
        const ZoneRates rates = zone_rates(ap, rx, r0);
        for (int n0 = 0; n0 <= 64; ++n0) {
            const double eta = ase_from_rates(ap, rates, n0, BandwidthReading::PerSubcarrier);
            if (eta > best) {
                best = eta;
                best_r0 = r0;
                best_n0 = n0;
                best_b = ase_from_rates(ap, rates, n0, BandwidthReading::CellWide);
            }
        }
    }
    report("AC8 ASE shape", best_n0 == 64 && best_r0 == r0_grid.front(),
           fmt("argmax r0=%.3f m, n0=%.0f; eta_interpA=%.4g", best_r0, best_n0, best) +
               fmt(" eta_interpB=%.4g bit/s/Hz/m^2", best_b));
}

void ac9() {
    LayoutTemplate tmpl;
    tmpl.mob.b_ho = 1e4;
    SimConfig cfg;
    cfg.t_s = 0.5;
    cfg.duration = 120.0;
    cfg.replications = 200;
    cfg.seed = 20240601;
    const std::vector<double> betas = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    const std::vector<double> epss = {0.3, 0.4, 0.5};
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = sweep(tmpl, cfg, betas, epss);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto at = [&](std::size_t b, std::size_t e) -> const SweepRow& { return rows[b * epss.size() + e]; };

    bool a = true, b = true;
    for (std::size_t e = 0; e < epss.size(); ++e) {
        for (std::size_t i = 0; i + 1 < betas.size(); ++i) {
            const auto& lo = at(i, e).stats;
            const auto& hi = at(i + 1, e).stats;
            const double tol = 2.0 * std::hypot(lo.stderr0(), hi.stderr0());
            const double tol1 = 2.0 * std::hypot(lo.stderr1(), hi.stderr1());
            a = a && hi.delta0 >= lo.delta0 - tol;
            b = b && hi.delta1 <= lo.delta1 + tol1;
        }
    }
    const std::size_t b06 = 3;
    std::string d06;
    bool c = at(b06, epss.size() - 1).stats.delta0 > at(b06, 0).stats.delta0;
    for (std::size_t e = 0; e < epss.size(); ++e) {
        d06 += (e ? "," : "") + fmt("%.4f", at(b06, e).stats.delta0);
        if (e > 0) {
            const auto& lo = at(b06, e - 1).stats;
            const auto& hi = at(b06, e).stats;
            c = c && hi.delta0 >= lo.delta0 - 2.0 * std::hypot(lo.stderr0(), hi.stderr0());
        }
    }
    report("AC9a delta0 nondecreasing in beta", a, "within 2 SE, 200 replications");
    report("AC9b delta1 nonincreasing in beta", b, "within 2 SE");
    report("AC9c delta0 at beta=0.6 increases with epsilon", c, "delta0={" + d06 + "} for eps {0.3,0.4,0.5}");
    report("AC9 runtime", secs < 120.0, fmt("%.1f s", secs));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ac10() {
    const fs::path base = fs::temp_directory_path() / "cvlc_acceptance";
    fs::remove_all(base);
    bool ok = true;
    std::string runs[2];
    for (int i = 0; i < 2; ++i) {
        const fs::path dir = base / std::to_string(i);
        const std::string cmd = std::string("\"") + CVLC_CLI_PATH + "\" --seed 7 --out \"" + dir.string() +
                                "\" simulate >/dev/null";
        const int status = std::system(cmd.c_str());
        ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
        runs[i] = slurp(dir / "failure.csv");
    }
    ok = ok && !runs[0].empty() && runs[0] == runs[1];
    report("AC10 determinism", ok, std::to_string(runs[0].size()) + " bytes of failure.csv, identical across runs");
}

void ac11() {
    std::mt19937_64 gen(11);
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    int built = 0, rejected = 0, checked_pairs = 0, violations = 0;
    while (built < 1000) {
        const int k = std::uniform_int_distribution<int>(1, 6)(gen);
        const double theta = deg_to_rad(uni(35.0, 70.0));
        Hall hall;
        hall.height = uni(2.5, 4.0);
        hall.width = uni(5.0, 15.0);
        const double r = hall.height * std::tan(theta);
        const double overlap = uni(0.0, 1.9 * r);
        hall.length = (k - 1) * (2.0 * r - overlap) + uni(0.0, 2.5 * r) + 1e-6;
        AccessPoint ap;
        ap.n_cell = std::uniform_int_distribution<int>(8, 128)(gen);
        MobilitySpec mob;
        mob.epsilon = uni(0.0, 2.0);
        mob.beta = uni(0.0, 1.0);
        NetworkLayout layout;
        try {
            layout = build_layout(hall, k, theta, overlap, ap, ReceiverModel{}, IlluminationSpec{}, mob);
        } catch (const InfeasibleError&) {
            ++rejected;
            continue;
        }
        ++built;
        // Independent check: every pair of intersecting discs, every index.
        for (std::size_t i = 0; i < layout.aps.size(); ++i) {
            for (std::size_t j = i + 1; j < layout.aps.size(); ++j) {
                const auto& a = layout.aps[i];
                const auto& b = layout.aps[j];
                const double dx = a.center.x - b.center.x, dy = a.center.y - b.center.y;
                const double reach = a.radius() + b.radius();
                if (dx * dx + dy * dy >= reach * reach) continue;
                ++checked_pairs;
                std::set<int> used;
                const auto& za = layout.bands.per_ap[i].zone1;
                const auto& zb = layout.bands.per_ap[j].zone1;
                for (int x = za.first; x < za.first + za.count; ++x) used.insert(x);
                for (int x = zb.first; x < zb.first + zb.count; ++x) violations += used.count(x) ? 1 : 0;
            }
        }
    }
    report("AC11 CCI safety", violations == 0 && checked_pairs > 0,
           std::to_string(built) + " layouts, " + std::to_string(checked_pairs) + " overlapping pairs, " +
               std::to_string(violations) + " shared Zone-1 indices (" + std::to_string(rejected) +
               " draws rejected as infeasible)");
}

}  // namespace

int main() {
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();
    ac11();
    std::cout << (failures ? "acceptance: FAILED (" + std::to_string(failures) + ")" : std::string("acceptance: all passed"))
              << std::endl;
    return failures ? 1 : 0;
}
