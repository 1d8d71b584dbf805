#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "surfride/error.hpp"
#include "surfride/hydro.hpp"

using namespace surfride;

namespace {

constexpr double kPi = std::numbers::pi;

HullSectionTable box_hull(double length, double area, double draught, int stations) {
    HullSectionTable h;
    for (int i = 0; i < stations; ++i) {
        h.stations.push_back({-0.5 * length + length * i / (stations - 1), area, draught});
    }
    h.block_coefficient = 1.0;
    h.midship_coefficient = 1.0;
    return h;
}

// Fore-aft symmetric hull with random smooth sections.
HullSectionTable random_symmetric_hull(std::mt19937& rng, int stations) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    const double length = 20.0 + 100.0 * u(rng);
    const double amid = 20.0 * u(rng);
    const double dmid = 2.0 + 6.0 * u(rng);
    const double p = 1.0 + 3.0 * u(rng);
    HullSectionTable h;
    for (int i = 0; i < stations; ++i) {
        const double x = -0.5 * length + length * i / (stations - 1);
        const double shape = std::max(0.0, 1.0 - std::pow(std::abs(2.0 * x / length), p));
        h.stations.push_back({x, amid * shape, dmid * (0.5 + 0.5 * shape)});
    }
    h.block_coefficient = 0.6;
    h.midship_coefficient = 0.95;
    return h;
}

}  // namespace

TEST(DiffractionMu, ContinuousAtBreakpoints) {
    for (double cb : {0.3, 0.5137, 0.7, 0.85, 1.0}) {
        EXPECT_DOUBLE_EQ(diffraction_mu(cb, 0.86), 1.46 * cb - 0.05);
        EXPECT_NEAR(diffraction_mu(cb, std::nextafter(0.86, 0.0)), diffraction_mu(cb, 0.86), 1e-12);
        EXPECT_NEAR(diffraction_mu(cb, 0.94), 1.06 * cb - 0.05, 1e-15);
        EXPECT_NEAR(diffraction_mu(cb, std::nextafter(0.94, 1.0)), diffraction_mu(cb, 0.94), 1e-12);
    }
}

TEST(DiffractionMu, MiddleBranchValue) {
    EXPECT_NEAR(diffraction_mu(0.5137, 0.9), (5.76 - 4.5) * 0.5137 - 0.05, 1e-14);
    EXPECT_NEAR(diffraction_mu(0.5137, 0.9), 0.5973, 1e-4);
}

TEST(DiffractionMu, OutOfRange) {
    EXPECT_THROW(diffraction_mu(0.0, 0.9), ValidationError);
    EXPECT_THROW(diffraction_mu(1.1, 0.9), ValidationError);
    EXPECT_THROW(diffraction_mu(0.5, 0.0), ValidationError);
    EXPECT_THROW(diffraction_mu(0.5, 1.01), ValidationError);
}

TEST(FroudeKrylov, BoxHullSymmetryAndTrapezoidIdentity) {
    // For a box the trapezoid sum of cos(kx) is exactly the closed form
    // times (kh/2) cot(kh/2), whatever the length-to-wavelength ratio.
    const double length = 30.0, area = 13.0, draught = 1.6;
    const WaveCase wave(40.0, 2.0, 0.0);
    const int n = 200;
    const auto hull = box_hull(length, area, draught, n);
    const auto r = froude_krylov_amplitude(hull, wave, MuSpec::unity());
    const double k = wave.wave_number();
    const double h = length / (n - 1);
    const double closed = area * std::exp(-k * draught / 2.0) * (2.0 / k) * std::sin(k * length / 2.0);
    const double factor = (k * h / 2.0) / std::tan(k * h / 2.0);
    EXPECT_NEAR(r.sine_integral, 0.0, 1e-12 * std::abs(closed));
    EXPECT_NEAR(r.cosine_integral, closed * factor, 1e-12 * std::abs(closed));
}

TEST(FroudeKrylov, BoxHullFineResolution) {
    const double length = 10.0, area = 5.0, draught = 1.0;
    const WaveCase wave(100.0, 4.0, 0.0);
    const auto r = froude_krylov_amplitude(box_hull(length, area, draught, 200), wave, MuSpec::unity());
    const double k = wave.wave_number();
    const double closed = area * std::exp(-k * draught / 2.0) * (2.0 / k) * std::sin(k * length / 2.0);
    EXPECT_LT(std::abs(r.cosine_integral - closed) / closed, 1e-6);
}

TEST(FroudeKrylov, AmplitudeFormula) {
    const auto hull = box_hull(30.0, 13.0, 1.6, 31);
    const WaveCase wave(40.0, 2.0, 0.0);
    const auto r = froude_krylov_amplitude(hull, wave, MuSpec::explicit_value(0.7));
    EXPECT_NEAR(r.amplitude,
                0.7 * kPi * kSeaWaterDensity * kStandardGravity * 0.05 * std::hypot(r.sine_integral, r.cosine_integral),
                1e-9 * r.amplitude);
    EXPECT_NEAR(r.displaced_mass, kSeaWaterDensity * 13.0 * 30.0, 1e-6);
}

TEST(FroudeKrylov, LinearInHeight) {
    std::mt19937 rng(5);
    const auto hull = random_symmetric_hull(rng, 41);
    const WaveCase wave(80.0, 2.0, 0.0);
    const double f1 = froude_krylov_amplitude(hull, wave, MuSpec::unity()).amplitude;
    const double f2 = froude_krylov_amplitude(hull, wave.with_height(4.0), MuSpec::unity()).amplitude;
    EXPECT_DOUBLE_EQ(f2, 2.0 * f1);
}

TEST(FroudeKrylov, SymmetricHullsHaveNoSineIntegral) {
    std::mt19937 rng(6);
    for (int t = 0; t < 30; ++t) {
        const auto hull = random_symmetric_hull(rng, 21 + 2 * t);
        const WaveCase wave(30.0 + 10.0 * t, 1.0, 0.0);
        const auto r = froude_krylov_amplitude(hull, wave, MuSpec::unity());
        EXPECT_NEAR(r.sine_integral, 0.0, 1e-10 * (std::abs(r.cosine_integral) + r.displaced_mass / kSeaWaterDensity));
    }
}

TEST(FroudeKrylov, UpperBoundOnRandomHulls) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        HullSectionTable hull;
        const double length = 20.0 + 150.0 * u(rng);
        const int n = 11 + t % 40;
        for (int i = 0; i < n; ++i) {
            hull.stations.push_back({-0.5 * length + length * i / (n - 1), 30.0 * u(rng), 8.0 * u(rng)});
        }
        hull.block_coefficient = 0.3 + 0.7 * u(rng);
        hull.midship_coefficient = 0.5 + 0.5 * u(rng);
        const WaveCase wave(20.0 + 300.0 * u(rng), 5.0 * u(rng), 0.0);
        FroudeKrylovOptions options;
        options.ship_mass = hull.displaced_mass(kSeaWaterDensity);
        const auto r = froude_krylov_amplitude(hull, wave, MuSpec::sgisc_formula(), options);
        EXPECT_TRUE(r.mass_consistent);
        const double bound = r.mu * kPi * wave.steepness() * *options.ship_mass * kStandardGravity;
        EXPECT_LE(r.amplitude, bound * (1.0 + 1e-12));
        EXPECT_NEAR(r.amplitude_upper_bound, bound, 1e-9 * bound + 1e-9);
    }
}

TEST(FroudeKrylov, MassMismatchIsAWarning) {
    const auto hull = box_hull(30.0, 13.0, 1.6, 31);
    FroudeKrylovOptions options;
    options.ship_mass = 1.2 * hull.displaced_mass(kSeaWaterDensity);
    const auto r = froude_krylov_amplitude(hull, WaveCase(40.0, 2.0, 0.0), MuSpec::unity(), options);
    EXPECT_FALSE(r.mass_consistent);
    ASSERT_EQ(r.warnings.size(), 1u);
    options.ship_mass = 1.01 * hull.displaced_mass(kSeaWaterDensity);
    EXPECT_TRUE(froude_krylov_amplitude(hull, WaveCase(40.0, 2.0, 0.0), MuSpec::unity(), options).mass_consistent);
}

TEST(FroudeKrylov, RefinementCheckShrinksWithResolution) {
    const WaveCase wave(40.0, 2.0, 0.0);
    FroudeKrylovOptions options;
    options.refinement_check = true;
    const auto coarse = froude_krylov_amplitude(box_hull(30.0, 13.0, 1.6, 11), wave, MuSpec::unity(), options);
    const auto fine = froude_krylov_amplitude(box_hull(30.0, 13.0, 1.6, 101), wave, MuSpec::unity(), options);
    ASSERT_TRUE(coarse.refinement_change && fine.refinement_change);
    EXPECT_LT(*fine.refinement_change, *coarse.refinement_change / 50.0);
}

TEST(HullSectionTable, Validation) {
    HullSectionTable empty;
    EXPECT_THROW(froude_krylov_amplitude(empty, WaveCase(40.0, 1.0, 0.0), MuSpec::unity()), ValidationError);
    auto h = box_hull(10.0, 1.0, 1.0, 5);
    std::swap(h.stations[1], h.stations[2]);
    EXPECT_THROW(h.validate(), ValidationError);
    h = box_hull(10.0, 1.0, 1.0, 5);
    h.stations[2].area = -1.0;
    EXPECT_THROW(h.validate(), ValidationError);
    h = box_hull(10.0, 1.0, 1.0, 5);
    h.stations[2].draught = -1.0;
    EXPECT_THROW(h.validate(), ValidationError);
}

TEST(StationTable, Parse) {
    std::istringstream in("# hull\n# units: m m^2 m\nx S d\n-5 0 0\n0 10 2\n5 0 0\n");
    const auto h = read_station_table(in);
    ASSERT_EQ(h.stations.size(), 3u);
    EXPECT_DOUBLE_EQ(h.stations[1].area, 10.0);
    std::istringstream bad_units("# units: ft ft^2 ft\n0 1 1\n1 1 1\n");
    EXPECT_THROW(read_station_table(bad_units), ValidationError);
    std::istringstream bad_row("0 1 1\n1 1\n");
    EXPECT_THROW(read_station_table(bad_row), ValidationError);
}

TEST(Validity, SteepnessProxyLimits) {
    EXPECT_NEAR(1.0 / u_positive_steepness_limit(1.0), 11.4, 0.05);
    EXPECT_NEAR(1.0 / mean_speed_steepness_limit(1.0), 4.63, 0.005);
    EXPECT_NEAR(1.0 / u_positive_steepness_limit(0.7), 8.00, 0.005);
    EXPECT_NEAR(1.0 / mean_speed_steepness_limit(0.7), 3.24, 0.005);
}

TEST(Validity, MaximumSgiscSteepness) {
    ShipPropulsion ship;
    ship.mass = 4e5;
    ship.added_mass = 4e4;
    ship.prop_diameter = 2.0;
    const WaveCase wave(100.0, 15.0, 0.1 * ship.total_mass() * kStandardGravity);
    const auto v = assess_validity(ship, wave, 1.0);
    EXPECT_FALSE(v.u_positive_proxy_ok);
    EXPECT_TRUE(v.mean_speed_proxy_ok);
    EXPECT_TRUE(v.rtcond_proxy);
    EXPECT_NEAR(v.u_positive_proxy, 4.0 * kPi / 1.1 * 0.15, 1e-12);
    EXPECT_NEAR(v.mean_speed_proxy, 16.0 / (1.1 * kPi) * 0.15, 1e-12);
    // Flags agree with the stored numbers.
    EXPECT_EQ(v.u_positive_bound, v.force_amplitude < v.u_positive_limit);
    EXPECT_EQ(v.mean_speed_bound, v.force_amplitude < v.mean_speed_limit);
}
