/**
 * @file random_cases.hpp
 * @brief Seeded generators of physically plausible ships, waves and curves
 *        for the property tests.
 */
#pragma once

#include <random>
#include <vector>

#include "surfride/core.hpp"
#include "surfride/melnikov.hpp"

namespace surfride::test_support {

struct PhysicalCase {
    ShipPropulsion ship;
    WaveCase wave;
    PolynomialCurve resistance;
    ThrustModel thrust;
};

class CaseGenerator {
public:
    explicit CaseGenerator(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    ShipPropulsion ship() {
        ShipPropulsion s;
        s.mass = uniform(1e5, 5e6);
        s.added_mass = uniform(0.05, 0.15) * s.mass;
        s.wake_fraction = uniform(0.0, 0.35);
        s.thrust_deduction = uniform(0.05, 0.3);
        s.prop_diameter = uniform(1.0, 5.0);
        s.water_density = uniform(1000.0, 1030.0);
        return s;
    }

    /// Quintic with non-negative coefficients: R >= 0 for u >= 0.
    PolynomialCurve resistance(double mass) {
        const double scale = mass / 4e5;
        return PolynomialCurve({0.0, uniform(500.0, 5000.0) * scale, uniform(200.0, 1500.0) * scale,
                                uniform(0.0, 20.0) * scale, uniform(0.0, 2.0) * scale,
                                uniform(0.01, 1.0) * scale});
    }

    /// kappa_0 > 0, kappa_2 < 0.
    ThrustModel quadratic_thrust() {
        return ThrustModel({uniform(0.2, 0.5), uniform(-0.4, 0.0), uniform(-0.3, -0.02)});
    }

    /// f a fraction of the u > 0 bound, so the orbit stays ahead.
    WaveCase wave(const ShipPropulsion& ship) {
        const double lambda = uniform(20.0, 250.0);
        const double f = uniform(0.005, 0.2) * ship.total_mass() * kStandardGravity;
        return WaveCase(lambda, uniform(0.01, 0.1) * lambda, f);
    }

    PhysicalCase physical_case() {
        PhysicalCase c;
        c.ship = ship();
        c.wave = wave(c.ship);
        c.resistance = resistance(c.ship.mass);
        c.thrust = quadratic_thrust();
        return c;
    }

private:
    std::mt19937_64 rng_;
};

/// Composite Simpson over [a, b] with `n` (even) panels.
template <typename F>
double simpson(F&& f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace surfride::test_support
