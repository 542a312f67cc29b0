#pragma once

// Multi-AP layout in a rectangular hall. APs sit on the long-axis midline;
// cells that overlap are adjacent and must keep their Zone-1 subcarrier
// blocks disjoint so the overlap lens is free of co-channel interference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cvlc/channel.hpp"
#include "cvlc/errors.hpp"
#include "cvlc/zone_design.hpp"

namespace cvlc {

struct Hall {
    double length = 30.0;  ///< extent along x (m)
    double width = 10.0;   ///< extent along y (m)
    double height = 3.5;   ///< transmitter-to-receiver plane distance d_v (m)

    void validate() const {
        if (!(length > 0.0 && width > 0.0 && height > 0.0)) {
            throw ValidationError("hall: length, width and height must be positive");
        }
    }
    double area() const { return length * width; }
    bool contains(Vec2 p) const { return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width; }
};

/// Half-open subcarrier index range [first, first + count).
struct IndexRange {
    int first = 0;
    int count = 0;

    int end() const { return first + count; }
    bool empty() const { return count == 0; }
    bool contains(int idx) const { return idx >= first && idx < end(); }
    bool overlaps(const IndexRange& o) const {
        return !empty() && !o.empty() && first < o.end() && o.first < end();
    }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ApBands {
    int ap_id = 0;
    IndexRange zone0;
    IndexRange zone1;
};

struct SubcarrierAssignment {
    std::vector<ApBands> per_ap;
};

struct NetworkLayout {
    Hall hall;
    std::vector<AccessPoint> aps;
    std::vector<std::pair<int, int>> adjacency;  ///< AP-id pairs (lower id first)
    std::vector<ZoneDesign> zone_designs;        ///< parallel to aps
    SubcarrierAssignment bands;
    std::vector<std::string> diagnostics;        ///< non-fatal findings, e.g. uncovered corners
    double uncovered_fraction = 0.0;

    std::size_t index_of(int ap_id) const {
        for (std::size_t i = 0; i < aps.size(); ++i) {
            if (aps[i].id == ap_id) return i;
        }
        throw ValidationError("unknown AP id " + std::to_string(ap_id));
    }
};

/// Adjacent iff the two discs share a region of positive area.
inline std::vector<std::pair<int, int>> compute_adjacency(const std::vector<AccessPoint>& aps) {
    std::vector<std::pair<int, int>> adj;
    for (std::size_t i = 0; i < aps.size(); ++i) {
        for (std::size_t j = i + 1; j < aps.size(); ++j) {
            if (distance(aps[i].center, aps[j].center) < aps[i].radius() + aps[j].radius()) {
                adj.emplace_back(std::min(aps[i].id, aps[j].id), std::max(aps[i].id, aps[j].id));
            }
        }
    }
    return adj;
}

/// Blocks of Zone-1 subcarriers placed at either end of each AP's index
/// space, greedily along the AP order, so that adjacent blocks never
/// intersect. Zone 0 receives the contiguous complement.
inline SubcarrierAssignment assign_zone1_bands(const NetworkLayout& layout) {
    const auto& aps = layout.aps;
    if (layout.zone_designs.size() != aps.size()) {
        throw ValidationError("layout: one zone design per AP required");
    }
    auto n1_of = [&](std::size_t i) { return layout.zone_designs[i].n1; };
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const int n1 = n1_of(i);
        if (n1 < 0 || n1 > aps[i].n_cell) throw ValidationError("layout: n1 outside [0, n_cell]");
    }

    for (const auto& [a, b] : layout.adjacency) {
        const std::size_t i = layout.index_of(a);
        const std::size_t j = layout.index_of(b);
        const int n_max = std::max(aps[i].n_cell, aps[j].n_cell);
        if (n1_of(i) + n1_of(j) > n_max) {
            std::ostringstream msg;
            msg << "adjacent APs " << a << " and " << b << " need " << n1_of(i) + n1_of(j)
                << " disjoint Zone-1 subcarriers but only " << n_max << " exist";
            throw InfeasibleError("band-disjointness", n1_of(i) + n1_of(j), n_max, msg.str());
        }
    }

    SubcarrierAssignment out;
    out.per_ap.resize(aps.size());
    std::vector<bool> assigned(aps.size(), false);
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const int n = aps[i].n_cell;
        const int n1 = n1_of(i);
        const IndexRange high{n - n1, n1};
        const IndexRange low{0, n1};

        int blocker = 0;
        auto collides = [&](const IndexRange& cand) {
            for (const auto& [a, b] : layout.adjacency) {
                int other = 0;
                if (a == aps[i].id) other = b;
                else if (b == aps[i].id) other = a;
                else continue;
                const std::size_t j = layout.index_of(other);
                if (assigned[j] && out.per_ap[j].zone1.overlaps(cand)) {
                    blocker = other;
                    return true;
                }
            }
            return false;
        };

        ApBands bands{aps[i].id, {}, {}};
        if (!collides(high)) {
            bands.zone1 = high;
            bands.zone0 = {0, n - n1};
        } else if (!collides(low)) {
            bands.zone1 = low;
            bands.zone0 = {n1, n - n1};
        } else {
            std::ostringstream msg;
            msg << "no end-aligned Zone-1 block for AP " << aps[i].id
                << " avoids adjacent AP " << blocker;
            throw InfeasibleError("band-disjointness", n1, n, msg.str());
        }
        out.per_ap[i] = bands;
        assigned[i] = true;
    }
    return out;
}

enum class Zone { Zone0, Zone1, OutOfCoverage };

inline const char* to_string(Zone z) {
    switch (z) {
        case Zone::Zone0: return "zone0";
        case Zone::Zone1: return "zone1";
        case Zone::OutOfCoverage: return "out-of-coverage";
    }
    return "?";
}

struct Location {
    int ap_id = 0;  ///< 0 when out of coverage
    Zone zone = Zone::OutOfCoverage;
};

/// Serving AP is the nearest centre among the discs containing the point
/// (ties to the lowest id). Zone 0 iff within that AP's r0.
inline Location locate_unchecked(const NetworkLayout& layout, Vec2 p) {
    Location loc;
    double best = 0.0;
    for (std::size_t i = 0; i < layout.aps.size(); ++i) {
        const auto& ap = layout.aps[i];
        const double d = distance(ap.center, p);
        if (d > layout.zone_designs[i].r_cell) continue;
        if (loc.ap_id == 0 || d < best || (d == best && ap.id < loc.ap_id)) {
            best = d;
            loc.ap_id = ap.id;
            loc.zone = d <= layout.zone_designs[i].r0 ? Zone::Zone0 : Zone::Zone1;
        }
    }
    return loc;
}

inline Location locate(const NetworkLayout& layout, Vec2 p) {
    if (!layout.hall.contains(p)) throw DomainError("position outside the hall");
    return locate_unchecked(layout, p);
}

inline bool covered(const NetworkLayout& layout, Vec2 p) {
    return locate_unchecked(layout, p).ap_id != 0;
}

/// Records uncovered hall corners and the uncovered area fraction
/// (midpoint sampling on a 0.1 m grid).
inline void add_coverage_diagnostics(NetworkLayout& layout) {
    const Hall& h = layout.hall;
    const Vec2 corners[] = {{0, 0}, {h.length, 0}, {0, h.width}, {h.length, h.width}};
    for (const Vec2 c : corners) {
        if (!covered(layout, c)) {
            std::ostringstream msg;
            msg << "hall corner (" << c.x << ", " << c.y << ") is not covered by any cell";
            layout.diagnostics.push_back(msg.str());
        }
    }
    const int nx = std::max(1, static_cast<int>(std::ceil(h.length / 0.1)));
    const int ny = std::max(1, static_cast<int>(std::ceil(h.width / 0.1)));
    long miss = 0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const Vec2 p{(ix + 0.5) * h.length / nx, (iy + 0.5) * h.width / ny};
            if (!covered(layout, p)) ++miss;
        }
    }
    layout.uncovered_fraction = static_cast<double>(miss) / (static_cast<double>(nx) * ny);
}

/// Places k identical APs on the hall midline with spacing 2 r_k - overlap,
/// centred along the long axis, designs every cell and assigns Zone-1 bands.
/// The template's d_v is replaced by the hall height and i0 by E_max d_v^2.
inline NetworkLayout build_layout(const Hall& hall, int k, double theta, double overlap_width,
                                  const AccessPoint& ap_template, const ReceiverModel& rx,
                                  const IlluminationSpec& illum, const MobilitySpec& mob) {
    hall.validate();
    if (k < 1) throw ValidationError("layout: k must be >= 1");
    const double rk = cell_radius(hall.height, theta);
    if (!(overlap_width >= 0.0)) throw LayoutError("overlap width must be >= 0");
    if (overlap_width >= 2.0 * rk) {
        throw LayoutError("overlap width must be smaller than the cell diameter");
    }
    const double spacing = 2.0 * rk - overlap_width;
    const double span = (k - 1) * spacing;
    if (span > hall.length) {
        std::ostringstream msg;
        msg << k << " APs at spacing " << spacing << " m span " << span
            << " m, longer than the hall (" << hall.length << " m)";
        throw LayoutError(msg.str());
    }

    NetworkLayout layout;
    layout.hall = hall;
    const double x0 = 0.5 * (hall.length - span);
    for (int i = 0; i < k; ++i) {
        AccessPoint ap = ap_template;
        ap.id = i + 1;
        ap.theta = theta;
        ap.d_v = hall.height;
        ap.i0 = illum.e_max * hall.height * hall.height;
        ap.center = {x0 + i * spacing, 0.5 * hall.width};
        ap.validate();
        layout.zone_designs.push_back(design_zone(ap, rx, illum, mob));
        layout.aps.push_back(ap);
    }
    layout.adjacency = compute_adjacency(layout.aps);
    layout.bands = assign_zone1_bands(layout);
    add_coverage_diagnostics(layout);
    return layout;
}

struct LayoutReport {
    bool bands_disjoint = true;
    bool partition_ok = true;
    bool overlap_in_zone1_only = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return bands_disjoint && partition_ok && overlap_in_zone1_only; }
};

/// Checks every layout invariant by brute force over subcarrier indices and
/// by the closed-form lens distance test.
inline LayoutReport validate_layout(const NetworkLayout& layout) {
    LayoutReport rep;
    rep.warnings = layout.diagnostics;
    const auto& aps = layout.aps;
    if (layout.bands.per_ap.size() != aps.size()) {
        rep.partition_ok = false;
        rep.violations.push_back("band assignment missing for some APs");
        return rep;
    }

    for (std::size_t i = 0; i < aps.size(); ++i) {
        const auto& b = layout.bands.per_ap[i];
        const int n = aps[i].n_cell;
        std::vector<int> hits(static_cast<std::size_t>(n), 0);
        bool in_bounds = b.zone0.first >= 0 && b.zone1.first >= 0 && b.zone0.end() <= n &&
                         b.zone1.end() <= n;
        if (in_bounds) {
            for (int s = 0; s < n; ++s) hits[s] = b.zone0.contains(s) + b.zone1.contains(s);
        }
        const bool sizes = b.zone0.count == layout.zone_designs[i].n0 &&
                           b.zone1.count == layout.zone_designs[i].n1;
        if (!in_bounds || !sizes || std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
            rep.partition_ok = false;
            rep.violations.push_back("AP " + std::to_string(aps[i].id) +
                                     ": zone ranges do not partition its subcarriers");
        }
    }

    for (const auto& [a, bid] : layout.adjacency) {
        const std::size_t i = layout.index_of(a);
        const std::size_t j = layout.index_of(bid);
        const int n = std::max(aps[i].n_cell, aps[j].n_cell);
        for (int s = 0; s < n; ++s) {
            if (layout.bands.per_ap[i].zone1.contains(s) && layout.bands.per_ap[j].zone1.contains(s)) {
                rep.bands_disjoint = false;
                rep.violations.push_back("APs " + std::to_string(a) + " and " + std::to_string(bid) +
                                         " share Zone-1 subcarrier " + std::to_string(s));
                break;
            }
        }
        const double d = distance(aps[i].center, aps[j].center);
        const auto& zi = layout.zone_designs[i];
        const auto& zj = layout.zone_designs[j];
        if (d - zj.r_cell < zi.r0 || d - zi.r_cell < zj.r0) {
            rep.overlap_in_zone1_only = false;
            std::ostringstream msg;
            msg << "overlap of APs " << a << " and " << bid << " reaches into Zone 0";
            rep.violations.push_back(msg.str());
        }
    }
    return rep;
}

}  // namespace cvlc
