/**
 * @file manifold_oracle.hpp
 * @brief Test-only threshold oracle by shooting the saddle's unstable manifold.
 *
 * Follows the lower branch of the unstable manifold and bisects n on whether
 * it reaches the next saddle one wave behind (surging persists) or turns back
 * into the well (connection broken). Used to cross-check the capture-grid
 * oracle.
 */
#pragma once

#include <cmath>
#include <numbers>

#include "surfride/dynamics.hpp"
#include "surfride/error.hpp"

namespace surfride::test_support {

inline double manifold_threshold(const ShipPropulsion& ship, const WaveCase& wave,
                          const PolynomialCurve& resistance, const ThrustModel& thrust,
                          RateRange range, double relative_tolerance = 1e-10) {
    const double f = wave.force_amplitude();
    const double k = wave.wave_number();
    const double cw = wave.celerity();
    const double s = std::sqrt(f / (k * ship.total_mass()));

    // +1: the unstable manifold turns back inside the well, -1: it passes the next saddle.
    auto side = [&](double n) {
        const SurgeModel model(ship, wave, resistance, thrust, n);
        const double delta = model.static_forcing();
        if (delta <= -1.0 + 1e-9) return -1;
        if (delta >= 1.0) return 1;
        auto rhs = [&](double y, double v) {
            return model.net_force(cw + s * v) / f - std::sin(y);
        };
        const double yb = std::numbers::pi - std::asin(delta);
        const double h = 1e-7;
        const double a = (rhs(yb, h) - rhs(yb, -h)) / (2.0 * h);
        const double lp = 0.5 * (a + std::sqrt(a * a - 4.0 * std::cos(yb)));
        const double eps = 1e-9;
        double y = yb - eps;
        double v = -eps * lp;
        const double target = yb - 2.0 * std::numbers::pi;
        const double dt = 1e-3;
        for (int i = 0; i < 2'000'000; ++i) {
            const double k1y = v, k1v = rhs(y, v);
            const double k2y = v + 0.5 * dt * k1v, k2v = rhs(y + 0.5 * dt * k1y, v + 0.5 * dt * k1v);
            const double k3y = v + 0.5 * dt * k2v, k3v = rhs(y + 0.5 * dt * k2y, v + 0.5 * dt * k2v);
            const double k4y = v + dt * k3v, k4v = rhs(y + dt * k3y, v + dt * k3v);
            y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            if (v >= 0.0) return 1;
            if (y < target) return -1;
        }
        return 1;
    };

    double lo = range.lower;
    double hi = range.upper;
    if (side(lo) > 0 || side(hi) < 0) {
        throw OracleError("manifold oracle range does not bracket the heteroclinic connection");
    }
    while (hi - lo > relative_tolerance * hi) {
        const double mid = 0.5 * (lo + hi);
        (side(mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace surfride::test_support
