#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cvlc/channel.hpp"

namespace cvlc {
namespace {

AccessPoint reference_ap(int n_cell = 64) {
    AccessPoint ap;
    ap.theta = deg_to_rad(60.0);
    ap.d_v = 3.5;
    ap.p_cell = 9.0;
    ap.b_cell = 20e6;
    ap.n_cell = n_cell;
    return ap;
}

TEST(LambertianIndex, KnownAngles) {
    EXPECT_NEAR(lambertian_index(deg_to_rad(60.0)), 1.0, 1e-12);
    EXPECT_NEAR(lambertian_index(deg_to_rad(45.0)), 2.0, 1e-12);
    // mpmath, 30 digits
    EXPECT_NEAR(lambertian_index(deg_to_rad(30.0)), 4.818841679306418, 1e-12);
}

TEST(LambertianIndex, RejectsOutOfRange) {
    EXPECT_THROW(lambertian_index(0.0), DomainError);
    EXPECT_THROW(lambertian_index(kPi / 2), DomainError);
    EXPECT_THROW(lambertian_index(-0.1), DomainError);
}

TEST(LambertianIndex, StrictlyIncreasingAndPositive) {
    double prev = 0.0;
    for (int deg = 1; deg < 90; ++deg) {
        const double m = lambertian_index(deg_to_rad(deg));
        EXPECT_GT(m, 0.0);
        if (deg > 1) EXPECT_LT(m, prev) << "m decreases as the beam widens";
        prev = m;
    }
}

TEST(CellRadius, Checkpoints) {
    EXPECT_NEAR(cell_radius(3.5, deg_to_rad(60.0)), 3.5 * std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(cell_radius(1.0, deg_to_rad(45.0)), 1.0, 1e-12);
    EXPECT_LT(cell_radius(3.5, 1e-9), 1e-8);
    EXPECT_THROW(cell_radius(0.0, 0.5), DomainError);
    EXPECT_THROW(cell_radius(1.0, kPi / 2), DomainError);
}

TEST(ChannelGain, NadirValue) {
    const AccessPoint ap = reference_ap();
    const ReceiverModel rx;
    const double expected = 2e-4 / (2.0 * kPi * 3.5 * 3.5);
    EXPECT_NEAR(channel_gain(ap, rx, 0.0), expected, expected * 1e-12);
    EXPECT_NEAR(channel_gain(ap, rx, 0.0), 2.5984480504799238e-06, 1e-18);
}

TEST(ChannelGain, ZeroOutsideCell) {
    const AccessPoint ap = reference_ap();
    const ReceiverModel rx;
    EXPECT_GT(channel_gain(ap, rx, ap.radius()), 0.0);
    EXPECT_EQ(channel_gain(ap, rx, ap.radius() + 1e-9), 0.0);
    EXPECT_EQ(channel_gain(ap, rx, 100.0), 0.0);
}

TEST(ChannelGain, ZeroOutsideFieldOfView) {
    const AccessPoint ap = reference_ap();
    ReceiverModel rx;
    rx.psi_c = deg_to_rad(30.0);
    const double r_edge = ap.d_v * std::tan(rx.psi_c);
    EXPECT_GT(channel_gain(ap, rx, r_edge * 0.99), 0.0);
    EXPECT_EQ(channel_gain(ap, rx, r_edge * 1.01), 0.0);
}

TEST(ChannelGain, DecreasingInsideCell) {
    const AccessPoint ap = reference_ap();
    const ReceiverModel rx;
    EXPECT_LT(channel_gain(ap, rx, 3.0), channel_gain(ap, rx, 0.0));
    double prev = channel_gain(ap, rx, 0.0);
    for (int i = 1; i <= 600; ++i) {
        const double h = channel_gain(ap, rx, ap.radius() * i / 600.0);
        EXPECT_LT(h, prev);
        prev = h;
    }
}

TEST(Snr, NadirReferenceValue) {
    const AccessPoint ap = reference_ap();
    const ReceiverModel rx;
    EXPECT_NEAR(snr_per_subcarrier(ap, rx, 0.0), 120.02034357016596, 1e-9);
    EXPECT_NEAR(10.0 * std::log10(snr_per_subcarrier(ap, rx, 0.0)), 20.79, 0.01);
}

TEST(Snr, ZeroWhenNoGain) {
    const AccessPoint ap = reference_ap();
    EXPECT_EQ(snr_per_subcarrier(ap, ReceiverModel{}, ap.radius() * 2.0), 0.0);
}

TEST(Snr, QuadraticInSubcarrierPower) {
    AccessPoint ap = reference_ap();
    const ReceiverModel rx;
    const double base = snr_per_subcarrier(ap, rx, 2.0);
    ap.p_cell *= 2.0;
    EXPECT_NEAR(snr_per_subcarrier(ap, rx, 2.0), 4.0 * base, 4.0 * base * 1e-12);
}

TEST(Snr, ZeroNoiseIsDomainError) {
    const AccessPoint ap = reference_ap();
    ReceiverModel rx;
    rx.n_noise = 0.0;
    EXPECT_THROW(snr_per_subcarrier(ap, rx, 0.0), DomainError);
}

TEST(Snr, InvariantUnderJointPowerNoiseScaling) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> scale(0.1, 10.0), dist(0.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        AccessPoint ap = reference_ap();
        ReceiverModel rx;
        const double r = dist(gen);
        const double a = scale(gen);
        const double base = snr_per_subcarrier(ap, rx, r);
        ap.p_cell *= a;
        rx.n_noise *= a * a;
        EXPECT_NEAR(snr_per_subcarrier(ap, rx, r), base, std::abs(base) * 1e-12 + 1e-300);
    }
}

TEST(Rate, Checkpoints) {
    EXPECT_EQ(rate_per_subcarrier(0.0, 312.5e3), 0.0);
    EXPECT_NEAR(rate_per_subcarrier(3.0, 2.0, 1.0), 2.0, 1e-15);
    EXPECT_NEAR(rate_per_subcarrier(120.4, 312.5e3, 1.0), 1081816.3455263, 1e-4);
    EXPECT_THROW(rate_per_subcarrier(-1.0, 1.0), DomainError);
    EXPECT_THROW(rate_per_subcarrier(1.0, 0.0), DomainError);
}

TEST(Rate, ConstantFoldsIntoSnr) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> snr(0.0, 1e4), c(0.05, 1.0), bw(1.0, 1e7);
    for (int i = 0; i < 500; ++i) {
        const double s = snr(gen), cc = c(gen), b = bw(gen);
        const double lhs = rate_per_subcarrier(s, b, cc);
        EXPECT_NEAR(lhs, rate_per_subcarrier(cc * cc * s, b, 1.0), lhs * 1e-12);
    }
}

TEST(Rate, IncreasingInSnr) {
    double prev = -1.0;
    for (double s = 0.0; s < 1000.0; s += 7.3) {
        const double r = rate_per_subcarrier(s, 1e6);
        EXPECT_GT(r, prev);
        prev = r;
    }
}

TEST(AccessPoint, DerivedQuantitiesAndValidation) {
    const AccessPoint ap = reference_ap();
    EXPECT_DOUBLE_EQ(ap.p_sub(), 9.0 / 64.0);
    EXPECT_DOUBLE_EQ(ap.b_sub(), 312.5e3);
    EXPECT_NO_THROW(ap.validate());
    AccessPoint bad = ap;
    bad.n_cell = 0;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = ap;
    bad.theta = kPi / 2;
    EXPECT_THROW(bad.validate(), DomainError);
    ReceiverModel rx;
    rx.c_const = 1.5;
    EXPECT_THROW(rx.validate(), ValidationError);
}

}  // namespace
}  // namespace cvlc
