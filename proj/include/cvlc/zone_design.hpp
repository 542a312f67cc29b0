#pragma once

// Zone 0 / Zone 1 sizing of a lighting cell. Zone 0 is the disc of radius r0
// around the AP axis that holds primary users; Zone 1 is the ring out to the
// cell edge that holds secondary users and absorbs handovers. A zone is fully
// described by its radius and its share of the cell's equal-power subcarriers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cvlc/channel.hpp"
#include "cvlc/errors.hpp"

namespace cvlc {

struct IlluminationSpec {
    double e_min = 200.0;  ///< lx, required at the Zone-0 edge
    double e_max = 800.0;  ///< lx, cap at the cell centre

    void validate() const {
        if (!(e_min > 0.0 && e_min <= e_max)) {
            throw ValidationError("illumination: need 0 < e_min <= e_max");
        }
    }
    double ratio() const { return e_max / e_min; }
};

/// User density and handover dimensioning inputs.
struct MobilitySpec {
    double epsilon = 0.4;  ///< users per m^2; 0 is accepted as a degenerate case
    double beta = 0.4;     ///< fraction of primary users assumed to leave Zone 0
    double b_ho = 1e4;     ///< bandwidth-equivalent cost of one handover
    int u_pu = 0;          ///< primary users Zone 0 must hold

    void validate() const {
        if (!(epsilon >= 0.0)) throw ValidationError("mobility: epsilon must be >= 0");
        if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("mobility: beta must lie in [0, 1]");
        if (!(b_ho >= 0.0)) throw ValidationError("mobility: b_ho must be >= 0");
        if (u_pu < 0) throw ValidationError("mobility: u_pu must be >= 0");
    }
};

struct ZoneDesign {
    double r0 = 0.0;              ///< chosen Zone-0 radius (m)
    double r1_width = 0.0;        ///< Zone-1 ring width r_k - r0 (m)
    int n0 = 0;                   ///< Zone-0 subcarriers
    int n1 = 0;                   ///< Zone-1 subcarriers
    double lambda_raw = 0.0;      ///< handover radius limit before clamping (m)
    double lambda_cap = 0.0;      ///< handover radius limit clamped to r_k (m)
    double big_lambda_cap = 0.0;  ///< illumination radius limit (m)
    double r0_min = 0.0;          ///< smallest radius holding u_pu users (m)
    double r0_max = 0.0;          ///< min(illumination, handover) limit (m)
    double r_cell = 0.0;

    double zone0_power(const AccessPoint& ap) const { return n0 * ap.p_cell / ap.n_cell; }
    double zone1_power(const AccessPoint& ap) const { return n1 * ap.p_cell / ap.n_cell; }
    double zone0_bandwidth(const AccessPoint& ap) const { return n0 * ap.b_cell / ap.n_cell; }
    double zone1_bandwidth(const AccessPoint& ap) const { return n1 * ap.b_cell / ap.n_cell; }
};

// ---------------------------------------------------------------------------
// Illumination

/// Illuminance (lx) on the receiver plane at horizontal distance r.
inline double illuminance_at(double i0, double d_v, double m, double r) {
    if (!(d_v > 0.0)) throw DomainError("d_v must be positive");
    if (!(r >= 0.0)) throw DomainError("r must be >= 0");
    if (!(i0 >= 0.0)) throw DomainError("i0 must be >= 0");
    return i0 * std::pow(d_v, m + 1.0) / std::pow(r * r + d_v * d_v, (m + 3.0) / 2.0);
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Admissible peak luminous intensity [E_min d_v^2, E_max d_v^2].
inline Interval luminous_intensity_bounds(const IlluminationSpec& spec, double d_v) {
    spec.validate();
    return {spec.e_min * d_v * d_v, spec.e_max * d_v * d_v};
}

/// Largest r0 whose edge still sees E_min, for an arbitrary peak intensity.
/// Returns 0 when even the centre is darker than E_min.
inline double illum_radius_limit_for_intensity(double i0, double e_min, double d_v, double m) {
    const double sq = std::pow(i0 * std::pow(d_v, m + 1.0) / e_min, 2.0 / (m + 3.0)) - d_v * d_v;
    return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

/// Illumination radius limit with the centre driven at E_max:
/// d_v * sqrt((E_max/E_min)^(2/(m+3)) - 1).
inline double illum_radius_limit(const IlluminationSpec& spec, double d_v, double m) {
    spec.validate();
    if (!(d_v > 0.0)) throw DomainError("d_v must be positive");
    if (!(m > 0.0)) throw DomainError("Lambertian index must be positive");
    const double sq = std::pow(spec.ratio(), 2.0 / (m + 3.0)) - 1.0;
    return d_v * std::sqrt(std::max(sq, 0.0));
}

struct ThresholdAngle {
    double angle = 0.0;  ///< rad
    bool found = false;  ///< false: no crossing in (0, pi/2), angle is the boundary 0
};

/// Largest half-angle for which the illumination limit still covers the
/// whole cell (Lambda >= r_k). For ratio <= 2 the limit binds at every angle
/// and the boundary 0 is returned with found = false.
inline ThresholdAngle illumination_threshold_angle(double ratio) {
    if (!(ratio > 1.0)) throw DomainError("illuminance ratio must exceed 1");
    auto margin = [ratio](double theta) {
        const double m = lambertian_index(theta);
        return std::sqrt(std::max(std::pow(ratio, 2.0 / (m + 3.0)) - 1.0, 0.0)) - std::tan(theta);
    };

    // Scan downward from pi/2 for the last sign change, then polish.
    constexpr int kScan = 4000;
    const double lo_edge = 1e-4;
    const double hi_edge = kPi / 2 - 1e-6;
    const double step = (hi_edge - lo_edge) / kScan;
    double hi = hi_edge;
    double f_hi = margin(hi);
    for (int i = kScan - 1; i >= 0; --i) {
        const double lo = lo_edge + i * step;
        const double f_lo = margin(lo);
        if (f_lo > 0.0 && f_hi <= 0.0) {
            boost::uintmax_t iters = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(50);
            const auto root = boost::math::tools::toms748_solve(margin, lo, hi, f_lo, f_hi, tol, iters);
            return {0.5 * (root.first + root.second), true};
        }
        hi = lo;
        f_hi = f_lo;
    }
    return {0.0, false};
}

// ---------------------------------------------------------------------------
// Average per-subcarrier rate over an annulus

namespace detail {

inline void require_annulus(const AccessPoint& ap, double r_min, double r_max) {
    if (!(r_min >= 0.0)) throw DomainError("r_min must be >= 0");
    if (!(r_min < r_max)) throw DomainError("zone has zero area (r_min >= r_max)");
    if (r_max > ap.radius() * (1.0 + 1e-12)) throw DomainError("r_max exceeds the cell radius");
}

/// (1/2) log2(1 + c^2 SNR) at horizontal distance r, in bits/s/Hz.
inline double normalized_rate_at(const AccessPoint& ap, const ReceiverModel& rx, double r) {
    const double snr = snr_per_subcarrier(ap, rx, std::min(r, ap.radius()));
    return 0.5 * std::log2(1.0 + rx.c_const * rx.c_const * snr);
}

}  // namespace detail

/// High-SNR closed form for the mean per-subcarrier rate (bits/s/Hz) of
/// users spread uniformly over the annulus [r_min, r_max]. Here d_min and
/// d_max are squared slant distances.
inline double avg_subcarrier_rate_closed(const AccessPoint& ap, const ReceiverModel& rx,
                                         double r_min, double r_max) {
    detail::require_annulus(ap, r_min, r_max);
    const double m = ap.lambertian();
    const double dv2 = ap.d_v * ap.d_v;
    const double d_max = r_max * r_max + dv2;
    const double d_min = r_min * r_min + dv2;
    const double c2 = rx.c_const * rx.c_const;
    const double rho = c2 * ap.p_sub() * ap.p_sub() * rx.gamma * rx.gamma /
                       (rx.sigma_ratio * rx.n_noise * ap.b_sub());
    const double amp = rx.a_d * rx.g * (m + 1.0) * std::pow(ap.d_v, m + 1.0);
    const double k0 = amp * amp / (4.0 * kPi * kPi);
    const double kappa_min = k0 / std::pow(d_max, m + 3.0);
    const double kappa_max = k0 / std::pow(d_min, m + 3.0);
    const double num = d_max * (std::log(rho * kappa_min) + m + 3.0) -
                       d_min * (std::log(rho * kappa_max) + m + 3.0);
    return num / (2.0 * std::log(2.0) * (r_max * r_max - r_min * r_min));
}

/// Same mean evaluated by adaptive Gauss-Kronrod quadrature in u = r^2 + d_v^2
/// (uniform area measure is uniform in u), relative tolerance 1e-8.
inline double avg_subcarrier_rate_numeric(const AccessPoint& ap, const ReceiverModel& rx,
                                          double r_min, double r_max) {
    detail::require_annulus(ap, r_min, r_max);
    const double dv2 = ap.d_v * ap.d_v;
    const double a = r_min * r_min + dv2;
    const double b = r_max * r_max + dv2;
    auto integrand = [&](double u) {
        const double r = std::min(std::sqrt(std::max(u - dv2, 0.0)), r_max);
        return detail::normalized_rate_at(ap, rx, r);
    };
    double err = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 20, 1e-8, &err);
    return integral / (b - a);
}

struct RateAgreement {
    double closed = 0.0;
    double numeric = 0.0;
    double relative_error = 0.0;
    bool diagnostic = false;  ///< relative disagreement above 10%
};

/// Cross-checks the closed form against quadrature on one annulus.
inline RateAgreement compare_rate_routes(const AccessPoint& ap, const ReceiverModel& rx,
                                         double r_min, double r_max) {
    RateAgreement out;
    out.closed = avg_subcarrier_rate_closed(ap, rx, r_min, r_max);
    out.numeric = avg_subcarrier_rate_numeric(ap, rx, r_min, r_max);
    out.relative_error = std::abs(out.closed - out.numeric) / std::abs(out.numeric);
    out.diagnostic = !(out.relative_error <= 0.10);
    return out;
}

// ---------------------------------------------------------------------------
// Area spectral efficiency

/// Which bandwidth multiplies the normalized per-subcarrier rate.
enum class BandwidthReading {
    PerSubcarrier,  ///< B_sub (default)
    CellWide,       ///< B_cell
};

enum class RateMethod { Numeric, ClosedForm };

/// Mean per-subcarrier rate (bits/s/Hz) of a zone, with the zero-area
/// zones at r0 = 0 and r0 = r_k taken as their limits.
inline double zone_mean_rate(const AccessPoint& ap, const ReceiverModel& rx, double r_min,
                             double r_max, RateMethod method = RateMethod::Numeric) {
    if (r_max - r_min <= 1e-12 * std::max(1.0, r_max)) {
        return detail::normalized_rate_at(ap, rx, r_min);
    }
    return method == RateMethod::Numeric ? avg_subcarrier_rate_numeric(ap, rx, r_min, r_max)
                                         : avg_subcarrier_rate_closed(ap, rx, r_min, r_max);
}

/// Per-zone mean rates for a split, so callers sweeping n0 need not redo
/// the quadrature.
struct ZoneRates {
    double zone0 = 0.0;
    double zone1 = 0.0;
};

inline ZoneRates zone_rates(const AccessPoint& ap, const ReceiverModel& rx, double r0,
                            RateMethod method = RateMethod::Numeric) {
    const double rk = ap.radius();
    if (!(r0 >= 0.0 && r0 <= rk * (1.0 + 1e-12))) throw DomainError("r0 must lie in [0, r_k]");
    r0 = std::min(r0, rk);
    return {zone_mean_rate(ap, rx, 0.0, r0, method), zone_mean_rate(ap, rx, r0, rk, method)};
}

inline double ase_from_rates(const AccessPoint& ap, const ZoneRates& rates, int n0,
                             BandwidthReading reading = BandwidthReading::PerSubcarrier) {
    if (n0 < 0 || n0 > ap.n_cell) throw DomainError("n0 must lie in [0, n_cell]");
    const double rk = ap.radius();
    const double w = reading == BandwidthReading::PerSubcarrier ? ap.b_sub() : ap.b_cell;
    const double total = n0 * rates.zone0 + (ap.n_cell - n0) * rates.zone1;
    return total * w / (kPi * ap.b_cell * rk * rk);
}

/// Area spectral efficiency of one cell for the split (r0, n0).
inline double ase(const AccessPoint& ap, const ReceiverModel& rx, double r0, int n0,
                  BandwidthReading reading = BandwidthReading::PerSubcarrier,
                  RateMethod method = RateMethod::Numeric) {
    if (n0 < 0 || n0 > ap.n_cell) throw DomainError("n0 must lie in [0, n_cell]");
    return ase_from_rates(ap, zone_rates(ap, rx, r0, method), n0, reading);
}

// ---------------------------------------------------------------------------
// Handover dimensioning

struct HandoverLimit {
    double lambda_sq = 0.0;
    double lambda_raw = 0.0;      ///< +inf when epsilon == 0
    double lambda_clamped = 0.0;  ///< min(lambda_raw, r_k)
    double zone0_budget = 0.0;    ///< epsilon*pi*lambda^2, finite also at epsilon == 0
};

/// Largest Zone-0 radius whose primary users, their departing fraction and
/// the Zone-1 handover load still fit in N_cell subcarriers.
inline HandoverLimit handover_radius_limit(const AccessPoint& ap, const MobilitySpec& mob) {
    mob.validate();
    const double rk = ap.radius();
    const double ho_subcarriers = mob.b_ho * ap.n_cell / ap.b_cell;  // B_HO / B_sub
    const double bracket = 1.0 + mob.beta - ho_subcarriers;
    if (!(bracket > 0.0)) {
        throw InfeasibleError("handover", ho_subcarriers, 1.0 + mob.beta,
                              "handover cost per user exceeds the per-user subcarrier budget");
    }
    if (mob.epsilon == 0.0) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf, rk, ap.n_cell / bracket};
    }
    const double num = ap.n_cell - kPi * mob.epsilon * rk * rk * ho_subcarriers;
    const double den = kPi * mob.epsilon * bracket;
    const double sq = num / den;
    if (sq < 0.0) {
        std::ostringstream msg;
        msg << "handover load of Zone 1 alone (" << ap.n_cell - num
            << " subcarriers) exceeds N_cell = " << ap.n_cell;
        throw InfeasibleError("handover", ap.n_cell - num, ap.n_cell, msg.str());
    }
    const double raw = std::sqrt(sq);
    return {sq, raw, std::min(raw, rk), num / bracket};
}

/// Zone-0 subcarrier budget epsilon*pi*lambda^2, rounded to the nearest
/// integer and kept within [0, n_cell].
inline int round_subcarrier_budget(double budget, int n_cell) {
    if (!std::isfinite(budget)) return budget > 0 ? n_cell : 0;
    return static_cast<int>(std::clamp<long>(std::lround(budget), 0, n_cell));
}

inline int max_zone0_subcarriers(const MobilitySpec& mob, double lambda_raw, int n_cell) {
    if (!(lambda_raw >= 0.0)) throw DomainError("lambda must be >= 0");
    if (mob.epsilon == 0.0) return std::isinf(lambda_raw) ? n_cell : 0;
    return round_subcarrier_budget(mob.epsilon * kPi * lambda_raw * lambda_raw, n_cell);
}

/// Sizes Zone 0 of `ap` so that it holds u_pu users while meeting both the
/// illumination span and the handover budget. The chosen r0 is the upper end
/// of the feasible interval; [r0_min, r0_max] is reported for callers that
/// prefer the ASE-maximizing lower end.
inline ZoneDesign design_zone(const AccessPoint& ap, const ReceiverModel& rx,
                              const IlluminationSpec& illum, const MobilitySpec& mob) {
    ap.validate();
    rx.validate();
    illum.validate();
    mob.validate();

    ZoneDesign z;
    z.r_cell = ap.radius();
    if (mob.epsilon == 0.0) {
        if (mob.u_pu > 0) throw DomainError("u_pu > 0 requires a positive user density");
        z.r0_min = 0.0;
    } else {
        z.r0_min = std::sqrt(mob.u_pu / (kPi * mob.epsilon));
    }
    z.big_lambda_cap = illum_radius_limit(illum, ap.d_v, ap.lambertian());
    const HandoverLimit ho = handover_radius_limit(ap, mob);
    z.lambda_raw = ho.lambda_raw;
    z.lambda_cap = ho.lambda_clamped;
    z.r0_max = std::min(z.big_lambda_cap, z.lambda_cap);

    if (z.r0_min > z.r0_max) {
        const bool illum_binds = z.big_lambda_cap <= z.lambda_cap;
        std::ostringstream msg;
        msg << "need r0 >= " << z.r0_min << " m for " << mob.u_pu << " primary users but the "
            << (illum_binds ? "illumination" : "handover") << " limit allows at most " << z.r0_max
            << " m";
        throw InfeasibleError(illum_binds ? "illumination" : "handover", z.r0_min, z.r0_max,
                              msg.str());
    }

    z.r0 = z.r0_max;
    z.r1_width = z.r_cell - z.r0;
    z.n0 = round_subcarrier_budget(ho.zone0_budget, ap.n_cell);
    z.n1 = ap.n_cell - z.n0;
    return z;
}

}  // namespace cvlc
