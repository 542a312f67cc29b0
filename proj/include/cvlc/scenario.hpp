#pragma once

// Scenario file: a single JSON document with one object per section. Missing
// keys take the reference defaults, unknown keys are rejected. Angles are
// written in degrees and held in radians.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cvlc/channel.hpp"
#include "cvlc/errors.hpp"
#include "cvlc/mobility_sim.hpp"
#include "cvlc/network.hpp"
#include "cvlc/zone_design.hpp"

namespace cvlc {

struct LayoutOptions {
    int k = 3;
    double overlap_width = 1.2;
};

struct Scenario {
    Hall hall;
    AccessPoint ap;  ///< template: id, centre, d_v and i0 are set per layout
    ReceiverModel rx;
    IlluminationSpec illum;
    MobilitySpec mob;
    SimConfig sim;
    LayoutOptions layout;

    /// AP as seen by a single-cell analysis: d_v from the hall, centre
    /// driven at E_max.
    AccessPoint cell() const {
        AccessPoint a = ap;
        a.d_v = hall.height;
        a.i0 = illum.e_max * hall.height * hall.height;
        return a;
    }

    LayoutTemplate layout_template() const {
        LayoutTemplate t;
        t.hall = hall;
        t.k = layout.k;
        t.theta = ap.theta;
        t.overlap_width = layout.overlap_width;
        t.ap = ap;
        t.rx = rx;
        t.illum = illum;
        t.mob = mob;
        return t;
    }

    NetworkLayout build() const {
        return build_layout(hall, layout.k, ap.theta, layout.overlap_width, ap, rx, illum, mob);
    }

    void validate() const {
        hall.validate();
        cell().validate();
        rx.validate();
        illum.validate();
        mob.validate();
        sim.validate();
        if (layout.k < 1) throw ValidationError("layout: k must be >= 1");
        if (!(layout.overlap_width >= 0.0)) throw ValidationError("layout: overlap_width must be >= 0");
    }
};

namespace detail {

using nlohmann::json;

inline const json& section(const json& doc, std::string_view name,
                           std::initializer_list<std::string_view> keys) {
    static const json empty = json::object();
    const auto it = doc.find(std::string(name));
    if (it == doc.end()) return empty;
    if (!it->is_object()) throw ValidationError("section '" + std::string(name) + "' must be an object");
    for (const auto& [key, _] : it->items()) {
        bool known = false;
        for (auto k : keys) known = known || key == k;
        if (!known) throw ValidationError("unknown key '" + key + "' in section '" + std::string(name) + "'");
    }
    return *it;
}

inline void read(const json& sec, const char* key, double& out) {
    const auto it = sec.find(key);
    if (it == sec.end()) return;
    if (!it->is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
    out = it->get<double>();
}

inline void read(const json& sec, const char* key, int& out) {
    const auto it = sec.find(key);
    if (it == sec.end()) return;
    if (!it->is_number_integer()) throw ValidationError(std::string("'") + key + "' must be an integer");
    out = it->get<int>();
}

inline void read(const json& sec, const char* key, std::uint64_t& out) {
    const auto it = sec.find(key);
    if (it == sec.end()) return;
    const bool ok = it->is_number_unsigned() || (it->is_number_integer() && it->get<std::int64_t>() >= 0);
    if (!ok) throw ValidationError(std::string("'") + key + "' must be a non-negative integer");
    out = it->get<std::uint64_t>();
}

inline void read_deg(const json& sec, const char* key, double& out_rad) {
    double deg = rad_to_deg(out_rad);
    const auto it = sec.find(key);
    if (it == sec.end()) return;
    read(sec, key, deg);
    out_rad = deg_to_rad(deg);
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& doc) {
    using detail::read;
    if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        static constexpr std::string_view known[] = {"hall", "access_point", "receiver", "illumination",
                                                     "mobility", "simulation", "layout"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw ValidationError("unknown section '" + key + "'");
        }
    }
    Scenario s;
    const auto& hall = detail::section(doc, "hall", {"length", "width", "height"});
    read(hall, "length", s.hall.length);
    read(hall, "width", s.hall.width);
    read(hall, "height", s.hall.height);

    const auto& ap = detail::section(doc, "access_point", {"theta_deg", "p_cell", "b_cell", "n_cell"});
    detail::read_deg(ap, "theta_deg", s.ap.theta);
    read(ap, "p_cell", s.ap.p_cell);
    read(ap, "b_cell", s.ap.b_cell);
    read(ap, "n_cell", s.ap.n_cell);

    const auto& rx = detail::section(
        doc, "receiver", {"a_d", "gamma", "psi_c_deg", "g", "n_noise", "sigma_ratio", "c_const"});
    read(rx, "a_d", s.rx.a_d);
    read(rx, "gamma", s.rx.gamma);
    detail::read_deg(rx, "psi_c_deg", s.rx.psi_c);
    read(rx, "g", s.rx.g);
    read(rx, "n_noise", s.rx.n_noise);
    read(rx, "sigma_ratio", s.rx.sigma_ratio);
    read(rx, "c_const", s.rx.c_const);

    const auto& il = detail::section(doc, "illumination", {"e_min", "e_max"});
    read(il, "e_min", s.illum.e_min);
    read(il, "e_max", s.illum.e_max);

    const auto& mob = detail::section(doc, "mobility", {"epsilon", "beta", "b_ho", "u_pu"});
    read(mob, "epsilon", s.mob.epsilon);
    read(mob, "beta", s.mob.beta);
    read(mob, "b_ho", s.mob.b_ho);
    read(mob, "u_pu", s.mob.u_pu);

    const auto& sim = detail::section(doc, "simulation",
                                      {"users", "t_s", "duration", "v_max_zone0", "v_max_zone1", "seed",
                                       "replications"});
    read(sim, "users", s.sim.users);
    read(sim, "t_s", s.sim.t_s);
    read(sim, "duration", s.sim.duration);
    read(sim, "v_max_zone0", s.sim.v_max_zone0);
    read(sim, "v_max_zone1", s.sim.v_max_zone1);
    read(sim, "seed", s.sim.seed);
    read(sim, "replications", s.sim.replications);
    s.sim.epsilon = s.mob.epsilon;
    s.sim.beta = s.mob.beta;

    const auto& lay = detail::section(doc, "layout", {"k", "overlap_width"});
    read(lay, "k", s.layout.k);
    read(lay, "overlap_width", s.layout.overlap_width);

    s.validate();
    return s;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["hall"] = {{"length", s.hall.length}, {"width", s.hall.width}, {"height", s.hall.height}};
    j["access_point"] = {{"theta_deg", rad_to_deg(s.ap.theta)},
                         {"p_cell", s.ap.p_cell},
                         {"b_cell", s.ap.b_cell},
                         {"n_cell", s.ap.n_cell}};
    j["receiver"] = {{"a_d", s.rx.a_d},         {"gamma", s.rx.gamma},
                     {"psi_c_deg", rad_to_deg(s.rx.psi_c)}, {"g", s.rx.g},
                     {"n_noise", s.rx.n_noise}, {"sigma_ratio", s.rx.sigma_ratio},
                     {"c_const", s.rx.c_const}};
    j["illumination"] = {{"e_min", s.illum.e_min}, {"e_max", s.illum.e_max}};
    j["mobility"] = {{"epsilon", s.mob.epsilon}, {"beta", s.mob.beta}, {"b_ho", s.mob.b_ho}, {"u_pu", s.mob.u_pu}};
    j["simulation"] = {{"t_s", s.sim.t_s},
                       {"duration", s.sim.duration},
                       {"v_max_zone0", s.sim.v_max_zone0},
                       {"v_max_zone1", s.sim.v_max_zone1},
                       {"seed", s.sim.seed},
                       {"replications", s.sim.replications}};
    if (s.sim.users >= 0) j["simulation"]["users"] = s.sim.users;
    j["layout"] = {{"k", s.layout.k}, {"overlap_width", s.layout.overlap_width}};
    return j;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return scenario_from_json(doc);
}

inline nlohmann::json to_json(const ZoneDesign& z) {
    return {{"r0_m", z.r0},
            {"r1_width_m", z.r1_width},
            {"n0", z.n0},
            {"n1", z.n1},
            {"lambda_raw_m", std::isfinite(z.lambda_raw) ? nlohmann::json(z.lambda_raw) : nlohmann::json(nullptr)},
            {"lambda_m", z.lambda_cap},
            {"Lambda_m", z.big_lambda_cap},
            {"r0_min_m", z.r0_min},
            {"r0_max_m", z.r0_max},
            {"r_cell_m", z.r_cell}};
}

inline nlohmann::json to_json(const NetworkLayout& layout) {
    nlohmann::json j;
    j["hall"] = {{"length", layout.hall.length}, {"width", layout.hall.width}, {"height", layout.hall.height}};
    j["aps"] = nlohmann::json::array();
    for (std::size_t i = 0; i < layout.aps.size(); ++i) {
        const auto& ap = layout.aps[i];
        nlohmann::json a = {{"id", ap.id},
                            {"center", {ap.center.x, ap.center.y}},
                            {"radius_m", ap.radius()},
                            {"design", to_json(layout.zone_designs[i])}};
        if (i < layout.bands.per_ap.size()) {
            const auto& b = layout.bands.per_ap[i];
            a["zone0_band"] = {b.zone0.first, b.zone0.count};
            a["zone1_band"] = {b.zone1.first, b.zone1.count};
        }
        j["aps"].push_back(a);
    }
    j["adjacency"] = nlohmann::json::array();
    for (const auto& [a, b] : layout.adjacency) j["adjacency"].push_back({a, b});
    j["uncovered_fraction"] = layout.uncovered_fraction;
    return j;
}

}  // namespace cvlc
