#pragma once

// Lambertian line-of-sight channel for a single AP-to-user link. Transmitter
// and receiver planes are parallel, the LED faces down and the photodiode
// faces up, so the irradiance and incidence angles coincide.

#include <cmath>
#include <numbers>
#include <string>

#include "cvlc/errors.hpp"

namespace cvlc {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Point on the receiver plane (m).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace detail {

inline void require_half_angle(double theta) {
    if (!(theta > 0.0 && theta < kPi / 2)) {
        throw DomainError("half-intensity angle must lie in (0, pi/2), got " +
                          std::to_string(theta) + " rad");
    }
}

}  // namespace detail

/// m = -1 / log2(cos theta).
inline double lambertian_index(double theta) {
    detail::require_half_angle(theta);
    return -1.0 / std::log2(std::cos(theta));
}

inline double cell_radius(double d_v, double theta) {
    detail::require_half_angle(theta);
    if (!(d_v > 0.0)) throw DomainError("vertical separation d_v must be positive");
    return d_v * std::tan(theta);
}

/// One LED luminaire: geometry, optics and the resource budget shared
/// equally by its subcarriers.
struct AccessPoint {
    int id = 1;
    Vec2 center{};
    double theta = deg_to_rad(60.0);  ///< half-intensity viewing angle (rad)
    double d_v = 3.5;                 ///< transmitter-to-receiver plane distance (m)
    double p_cell = 9.0;              ///< total optical power (W)
    double b_cell = 20e6;             ///< total bandwidth (Hz)
    int n_cell = 64;                  ///< subcarrier count
    double i0 = 0.0;                  ///< peak luminous intensity (cd)

    void validate() const {
        detail::require_half_angle(theta);
        if (!(d_v > 0.0)) throw ValidationError("access point: d_v must be positive");
        if (!(p_cell > 0.0)) throw ValidationError("access point: p_cell must be positive");
        if (!(b_cell > 0.0)) throw ValidationError("access point: b_cell must be positive");
        if (n_cell < 1) throw ValidationError("access point: n_cell must be >= 1");
        if (!(i0 >= 0.0)) throw ValidationError("access point: i0 must be >= 0");
    }

    double lambertian() const { return lambertian_index(theta); }
    double radius() const { return cell_radius(d_v, theta); }
    double p_sub() const { return p_cell / n_cell; }
    double b_sub() const { return b_cell / n_cell; }
};

/// Photodiode and noise model shared by every user. Defaults are the
/// reference receiver used throughout the toolkit.
struct ReceiverModel {
    double a_d = 1e-4;            ///< photodiode area (m^2)
    double gamma = 0.53;          ///< responsivity (A/W)
    double psi_c = kPi / 2;       ///< field-of-view half-angle (rad)
    double g = 1.0;               ///< concentrator gain inside the FOV
    double n_noise = 1e-21;       ///< noise PSD (A^2/Hz)
    double sigma_ratio = 1.0;     ///< optical-to-electrical power ratio
    double c_const = 1.0;         ///< capacity-bound constant

    void validate() const {
        if (!(a_d >= 0 && gamma >= 0 && g >= 0 && n_noise >= 0 && sigma_ratio >= 0)) {
            throw ValidationError("receiver: fields must be non-negative");
        }
        if (!(psi_c > 0.0 && psi_c <= kPi / 2)) {
            throw ValidationError("receiver: psi_c must lie in (0, pi/2]");
        }
        if (!(c_const > 0.0 && c_const <= 1.0)) {
            throw ValidationError("receiver: c_const must lie in (0, 1]");
        }
    }

    /// Concentrator gain at incidence angle psi: g inside the FOV, 0 outside.
    double concentrator_gain(double psi) const { return psi <= psi_c ? g : 0.0; }
};

/// DC gain h at a horizontal distance from the AP axis. Zero outside the
/// hard cell boundary or outside the receiver FOV.
inline double channel_gain(const AccessPoint& ap, const ReceiverModel& rx,
                           double horizontal_distance) {
    if (!(horizontal_distance >= 0.0)) throw DomainError("horizontal distance must be >= 0");
    if (horizontal_distance > ap.radius()) return 0.0;
    const double m = ap.lambertian();
    const double d = std::hypot(horizontal_distance, ap.d_v);
    const double psi = std::acos(ap.d_v / d);
    const double gain = rx.concentrator_gain(psi);
    if (gain == 0.0) return 0.0;
    return (m + 1.0) * rx.a_d * gain * std::pow(ap.d_v, m + 1.0) /
           (2.0 * kPi * std::pow(d, m + 3.0));
}

/// Electrical SNR of one subcarrier: (gamma P_sub h)^2 / (sigma N_n B_sub).
inline double snr_per_subcarrier(const AccessPoint& ap, const ReceiverModel& rx,
                                 double horizontal_distance) {
    const double noise = rx.sigma_ratio * rx.n_noise * ap.b_sub();
    if (!(noise > 0.0)) throw DomainError("noise power sigma*N_n*B_sub must be positive");
    const double h = channel_gain(ap, rx, horizontal_distance);
    if (h == 0.0) return 0.0;
    const double signal = rx.gamma * ap.p_sub() * h;
    return signal * signal / noise;
}

/// Achievable rate (bits/s) of one subcarrier occupying `bandwidth` Hz:
/// (bandwidth/2) log2(1 + c^2 snr).
inline double rate_per_subcarrier(double snr, double bandwidth, double c = 1.0) {
    if (!(snr >= 0.0)) throw DomainError("snr must be >= 0");
    if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
    return 0.5 * bandwidth * std::log2(1.0 + c * c * snr);
}

}  // namespace cvlc
