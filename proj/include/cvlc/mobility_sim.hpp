#pragma once

// Seeded Monte Carlo mobility simulation over a NetworkLayout. Users start
// uniformly in the hall; each step a Zone-0 user takes a slow random-direction
// move, while everyone else heads for the closest AP. After each step the
// network-wide Zone-0 and Zone-1 populations are compared against the
// subcarrier capacity reserved for each zone.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "cvlc/channel.hpp"
#include "cvlc/errors.hpp"
#include "cvlc/network.hpp"
#include "cvlc/zone_design.hpp"

namespace cvlc {

struct SimConfig {
    int users = -1;              ///< M; negative means round(epsilon * hall area)
    double epsilon = 0.4;        ///< users per m^2 when `users` is negative
    double beta = 0.4;           ///< dimensioning fraction used to build the layout
    double t_s = 0.5;            ///< step duration (s)
    double duration = 120.0;     ///< simulated time (s)
    double v_max_zone0 = 0.5;    ///< speed cap inside Zone 0 (m/s)
    double v_max_zone1 = 2.0;    ///< speed cap elsewhere (m/s)
    std::uint64_t seed = 1;
    int replications = 200;
    unsigned threads = 0;        ///< 0: hardware concurrency

    void validate() const {
        if (!(t_s > 0.0 && duration > 0.0)) throw ValidationError("simulation: t_s and duration must be positive");
        const double ratio = duration / t_s;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
            throw ValidationError("simulation: duration must be a multiple of t_s");
        }
        if (!(v_max_zone0 >= 0.0 && v_max_zone1 >= 0.0)) throw ValidationError("simulation: speed caps must be >= 0");
        if (replications < 1) throw ValidationError("simulation: replications must be >= 1");
        if (users < 0 && !(epsilon >= 0.0)) throw ValidationError("simulation: epsilon must be >= 0");
        if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("simulation: beta must lie in [0, 1]");
    }

    int steps() const { return static_cast<int>(std::lround(duration / t_s)); }
    int user_count(const Hall& hall) const {
        return users >= 0 ? users : static_cast<int>(std::lround(epsilon * hall.area()));
    }
};

/// Per-replication random stream. The engine and the seeding sequence are
/// fully specified by the standard, and variates are built from raw engine
/// bits, so streams are identical across standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t replication) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(replication),
                          static_cast<std::uint32_t>(replication >> 32)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

struct UserState {
    int id = 0;
    Vec2 position{};
    Zone zone = Zone::OutOfCoverage;
    int ap_id = 0;  ///< serving AP, 0 when out of coverage
};

inline void classify(const NetworkLayout& layout, UserState& u) {
    const Location loc = locate_unchecked(layout, u.position);
    u.zone = loc.zone;
    u.ap_id = loc.ap_id;
}

inline std::vector<UserState> init_users(const NetworkLayout& layout, const SimConfig& config,
                                         RngStream& rng) {
    const int m = config.user_count(layout.hall);
    std::vector<UserState> users;
    users.reserve(static_cast<std::size_t>(std::max(m, 0)));
    for (int i = 0; i < m; ++i) {
        UserState u;
        u.id = i;
        u.position.x = rng.uniform(0.0, layout.hall.length);
        u.position.y = rng.uniform(0.0, layout.hall.width);
        classify(layout, u);
        users.push_back(u);
    }
    return users;
}

/// Nearest AP centre to p (ties to the lowest id), regardless of coverage.
inline const AccessPoint& nearest_ap(const NetworkLayout& layout, Vec2 p) {
    const AccessPoint* best = &layout.aps.front();
    double best_d = distance(best->center, p);
    for (const auto& ap : layout.aps) {
        const double d = distance(ap.center, p);
        if (d < best_d || (d == best_d && ap.id < best->id)) {
            best = &ap;
            best_d = d;
        }
    }
    return *best;
}

/// Advances every user by one step and returns the number of serving-AP
/// changes (moves to or from out-of-coverage are not counted).
inline std::uint64_t step(const NetworkLayout& layout, std::vector<UserState>& users,
                          const SimConfig& config, RngStream& rng) {
    std::uint64_t handovers = 0;
    const Hall& hall = layout.hall;
    for (auto& u : users) {
        if (u.zone == Zone::Zone0) {
            const double move = config.t_s * rng.uniform(0.0, config.v_max_zone0);
            const double dir = rng.uniform(0.0, 2.0 * kPi);
            u.position.x += move * std::cos(dir);
            u.position.y += move * std::sin(dir);
        } else {
            const double move = config.t_s * rng.uniform(0.0, config.v_max_zone1);
            const Vec2 target = nearest_ap(layout, u.position).center;
            const double d = distance(u.position, target);
            if (move >= d) {
                u.position = target;
            } else if (d > 0.0) {
                const double f = move / d;
                u.position.x += f * (target.x - u.position.x);
                u.position.y += f * (target.y - u.position.y);
            }
        }
        u.position.x = std::clamp(u.position.x, 0.0, hall.length);
        u.position.y = std::clamp(u.position.y, 0.0, hall.width);

        const int before = u.ap_id;
        classify(layout, u);
        if (before != 0 && u.ap_id != 0 && before != u.ap_id) ++handovers;
    }
    return handovers;
}

struct ZoneCapacity {
    long zone0 = 0;  ///< sum of n0 over APs
    long zone1 = 0;  ///< sum of N_cell over APs minus zone0
};

inline ZoneCapacity zone_capacity(const NetworkLayout& layout) {
    ZoneCapacity cap;
    long total = 0;
    for (std::size_t i = 0; i < layout.aps.size(); ++i) {
        cap.zone0 += layout.zone_designs[i].n0;
        total += layout.aps[i].n_cell;
    }
    cap.zone1 = total - cap.zone0;
    return cap;
}

struct Indicators {
    bool zone0 = false;  ///< more Zone-0 users than Zone-0 subcarriers
    bool zone1 = false;  ///< more non-Zone-0 users than remaining subcarriers
    long u0 = 0;
    long u1 = 0;  ///< includes out-of-coverage users
};

inline Indicators failure_indicators(const NetworkLayout& layout, const std::vector<UserState>& users) {
    Indicators ind;
    for (const auto& u : users) {
        if (u.zone == Zone::Zone0) ++ind.u0;
        else ++ind.u1;
    }
    const ZoneCapacity cap = zone_capacity(layout);
    ind.zone0 = ind.u0 > cap.zone0;
    ind.zone1 = ind.u1 > cap.zone1;
    return ind;
}

/// Raw outcome of one replication.
struct ReplicationResult {
    std::vector<std::uint8_t> i0;
    std::vector<std::uint8_t> i1;
    std::uint64_t handovers = 0;
    std::uint64_t out_of_coverage_user_steps = 0;
};

inline ReplicationResult run_replication(const NetworkLayout& layout, const SimConfig& config,
                                         std::uint64_t replication) {
    RngStream rng(config.seed, replication);
    auto users = init_users(layout, config, rng);
    const int n = config.steps();
    ReplicationResult res;
    res.i0.resize(static_cast<std::size_t>(n));
    res.i1.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        res.handovers += step(layout, users, config, rng);
        const Indicators ind = failure_indicators(layout, users);
        res.i0[t] = ind.zone0;
        res.i1[t] = ind.zone1;
        for (const auto& u : users) res.out_of_coverage_user_steps += u.zone == Zone::OutOfCoverage;
    }
    return res;
}

struct FailureStats {
    double delta0 = 0.0;
    double delta1 = 0.0;
    std::vector<double> series0;  ///< per step, fraction of replications failing
    std::vector<double> series1;
    std::vector<double> replication_delta0;
    std::vector<double> replication_delta1;
    std::uint64_t handover_count = 0;  ///< summed over replications
    double out_of_coverage_fraction = 0.0;
    int replications = 0;
    int steps = 0;

    /// Standard error of delta from the spread of per-replication means.
    static double standard_error(const std::vector<double>& xs) {
        const std::size_t n = xs.size();
        if (n < 2) return 0.0;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    double stderr0() const { return standard_error(replication_delta0); }
    double stderr1() const { return standard_error(replication_delta1); }
};

/// Runs all replications (concurrently when allowed) and reduces them in
/// replication order, so results do not depend on scheduling.
inline FailureStats run(const NetworkLayout& layout, const SimConfig& config) {
    config.validate();
    if (layout.aps.empty()) throw ValidationError("simulation: layout has no APs");
    const int reps = config.replications;
    std::vector<ReplicationResult> results(static_cast<std::size_t>(reps));

    unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(reps));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int r = next++; r < reps; r = next++) {
            results[static_cast<std::size_t>(r)] = run_replication(layout, config, static_cast<std::uint64_t>(r));
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    FailureStats st;
    st.replications = reps;
    st.steps = config.steps();
    st.series0.assign(static_cast<std::size_t>(st.steps), 0.0);
    st.series1.assign(static_cast<std::size_t>(st.steps), 0.0);
    std::uint64_t fail0 = 0, fail1 = 0, ooc = 0;
    for (const auto& res : results) {
        std::uint64_t r0 = 0, r1 = 0;
        for (int t = 0; t < st.steps; ++t) {
            r0 += res.i0[t];
            r1 += res.i1[t];
            st.series0[t] += res.i0[t];
            st.series1[t] += res.i1[t];
        }
        st.replication_delta0.push_back(static_cast<double>(r0) / st.steps);
        st.replication_delta1.push_back(static_cast<double>(r1) / st.steps);
        fail0 += r0;
        fail1 += r1;
        st.handover_count += res.handovers;
        ooc += res.out_of_coverage_user_steps;
    }
    for (auto& v : st.series0) v /= reps;
    for (auto& v : st.series1) v /= reps;
    const double samples = static_cast<double>(reps) * st.steps;
    st.delta0 = static_cast<double>(fail0) / samples;
    st.delta1 = static_cast<double>(fail1) / samples;
    const int m = config.user_count(layout.hall);
    st.out_of_coverage_fraction = m > 0 ? static_cast<double>(ooc) / (samples * m) : 0.0;
    return st;
}

/// Everything needed to rebuild a layout for a different (epsilon, beta).
struct LayoutTemplate {
    Hall hall;
    int k = 3;
    double theta = deg_to_rad(60.0);
    double overlap_width = 1.2;
    AccessPoint ap;
    ReceiverModel rx;
    IlluminationSpec illum;
    MobilitySpec mob;

    NetworkLayout build(double epsilon, double beta) const {
        MobilitySpec m = mob;
        m.epsilon = epsilon;
        m.beta = beta;
        return build_layout(hall, k, theta, overlap_width, ap, rx, illum, m);
    }
};

struct SweepRow {
    double beta = 0.0;
    double epsilon = 0.0;
    int users = 0;
    ZoneDesign design;  ///< design of the first AP (all APs are identical)
    FailureStats stats;
    double eta = 0.0;
    double eta_norm = 0.0;
};

/// One simulation per (beta, epsilon) grid point, beta-major. Every point
/// reuses the same seed. eta_norm is the cell ASE at each point's design
/// divided by its maximum over the grid.
inline std::vector<SweepRow> sweep(const LayoutTemplate& tmpl, const SimConfig& config,
                                   const std::vector<double>& beta_grid,
                                   const std::vector<double>& epsilon_grid) {
    if (beta_grid.empty() || epsilon_grid.empty()) throw ValidationError("sweep: grids must be non-empty");
    std::vector<SweepRow> rows;
    for (double beta : beta_grid) {
        for (double eps : epsilon_grid) {
            const NetworkLayout layout = tmpl.build(eps, beta);
            SimConfig cfg = config;
            cfg.beta = beta;
            cfg.epsilon = eps;
            cfg.users = static_cast<int>(std::lround(eps * tmpl.hall.area()));
            SweepRow row;
            row.beta = beta;
            row.epsilon = eps;
            row.users = cfg.users;
            row.design = layout.zone_designs.front();
            row.stats = run(layout, cfg);
            row.eta = ase(layout.aps.front(), tmpl.rx, row.design.r0, row.design.n0);
            rows.push_back(std::move(row));
        }
    }
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r.eta);
    for (auto& r : rows) r.eta_norm = best > 0.0 ? r.eta / best : 0.0;
    return rows;
}

}  // namespace cvlc
