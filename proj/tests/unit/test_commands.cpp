#include <gtest/gtest.h>

#include <sstream>

#include "surfride/commands.hpp"
#include "surfride/error.hpp"
#include "surfride/report.hpp"

using namespace surfride;
using nlohmann::json;

namespace {

RunConfig reference_config() {
    return parse_config(json::parse(R"({
      "ship": {"mass": 4e5, "added_mass": 4e4, "wake_fraction": 0.15, "thrust_deduction": 0.2,
               "prop_diameter": 2.0},
      "resistance": {"coefficients": [0, 3000, 800, 0, 0, 0.5]},
      "propeller": {"kappa": [0.32, -0.25, -0.15]},
      "wave": {"wavelength": 40, "height": 2, "force_amplitude": 215820}
    })"));
}

}  // namespace

TEST(Threshold, QuadraticDispatchesToClosedForm) {
    const auto run = run_threshold(reference_config());
    EXPECT_EQ(run.report.method, SolveMethod::ClosedForm);
    ASSERT_TRUE(run.report.n_cr_positive);
    ASSERT_TRUE(run.report.validity);
    const auto doc = threshold_payload(reference_config(), run);
    EXPECT_EQ(doc["report"]["method"], "closed-form");
    EXPECT_FALSE(doc["report"]["roots"]["negative"]["physical"].get<bool>());
    EXPECT_TRUE(doc["report"]["certificate"]["rtcond"].get<bool>());
}

TEST(Threshold, CubicDispatchesToBisection) {
    auto c = reference_config();
    c.propeller.coefficients = {0.32, -0.25, -0.15, -0.01};
    const auto run = run_threshold(c);
    EXPECT_EQ(run.report.method, SolveMethod::Bisection);
    EXPECT_TRUE(run.report.n_cr_positive);
}

TEST(Threshold, SteepSeaValidityFlags) {
    auto c = reference_config();
    c.wave.height = 0.15 * c.wave.wavelength;
    const auto v = *run_threshold(c).report.validity;
    EXPECT_FALSE(v.u_positive_proxy_ok);
    EXPECT_TRUE(v.mean_speed_proxy_ok);
}

TEST(Threshold, PayloadIsReproducible) {
    const auto c = reference_config();
    EXPECT_EQ(threshold_payload(c, run_threshold(c)).dump(), threshold_payload(c, run_threshold(c)).dump());
    const auto doc = make_document("threshold", config_digest(c), json::object());
    EXPECT_EQ(doc["metadata"]["version"], tool_version());
    EXPECT_TRUE(doc["payload"].is_object());
}

TEST(Sweep, EmptyRangeIsUsageError) {
    const auto c = reference_config();
    EXPECT_THROW(run_sweep(c, {SweepParameter::Rate, 1.0, 5.0, 0}), ValidationError);
    EXPECT_THROW(run_sweep(c, {SweepParameter::Rate, 5.0, 5.0, 3}), ValidationError);
    EXPECT_THROW(run_sweep(c, {SweepParameter::Rate, 5.0, 1.0, 3}), ValidationError);
}

TEST(Sweep, RateResidualCrossesZeroOnce) {
    const auto c = reference_config();
    const auto table = run_sweep(c, {SweepParameter::Rate, 1.0, 12.0, 45});
    int crossings = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        ASSERT_TRUE(table.rows[i].residual && table.rows[i - 1].residual);
        if ((*table.rows[i - 1].residual < 0.0) != (*table.rows[i].residual < 0.0)) ++crossings;
    }
    EXPECT_EQ(crossings, 1);
    for (std::size_t i = 0; i < table.rows.size(); ++i) EXPECT_EQ(table.rows[i].index, static_cast<int>(i));
}

TEST(Sweep, SteepnessProxyFlipsAtLimit) {
    const auto c = reference_config();
    const double limit = u_positive_steepness_limit(1.0);
    const auto table = run_sweep(c, {SweepParameter::Steepness, 0.5 * limit, 1.5 * limit, 21});
    for (const auto& r : table.rows) {
        EXPECT_EQ(r.u_positive_proxy_ok, r.value < limit) << r.value;
        EXPECT_EQ(r.status, "ok");
    }
    // f scales with H when given explicitly.
    EXPECT_NEAR(table.rows.back().force_amplitude / table.rows.front().force_amplitude, 3.0, 1e-12);
}

TEST(Sweep, RowFailuresAreRecorded) {
    const auto c = reference_config();
    const auto table = run_sweep(c, {SweepParameter::Steepness, 0.1, 3.0, 12});
    ASSERT_EQ(table.rows.size(), 12u);
    EXPECT_EQ(table.rows.front().status, "ok");
    EXPECT_EQ(table.rows.back().status, "no-threshold");
    EXPECT_FALSE(table.rows.back().n_cr);
    std::ostringstream out;
    write_sweep_table(out, table, "sha256:x");
    EXPECT_NE(out.str().find("# config_digest: sha256:x"), std::string::npos);
}

TEST(Fit, QuinticRecovery) {
    std::vector<Sample> s;
    const PolynomialCurve q({0.0, 3000.0, 800.0, 0.0, 0.0, 0.5});
    for (int i = 1; i <= 12; ++i) s.push_back({i * 1.0, q(i * 1.0)});
    const auto doc = run_fit(s, FitKind::Resistance, 5);
    const auto coefficients = doc["curve"]["coefficients"].get<std::vector<double>>();
    EXPECT_NEAR(coefficients[1], 3000.0, 1e-6);
    EXPECT_NEAR(coefficients[5], 0.5, 1e-9);
}

TEST(Fit, ThrustSigns) {
    std::vector<Sample> good, bad;
    for (int i = 0; i <= 10; ++i) {
        const double j = 0.1 * i;
        good.push_back({j, 0.32 - 0.25 * j - 0.15 * j * j});
        bad.push_back({j, -0.01 - 0.25 * j - 0.15 * j * j});
    }
    const auto doc = run_fit(good, FitKind::Thrust, 2);
    EXPECT_TRUE(doc["sign_conditions"]["kappa2_negative"].get<bool>());
    try {
        run_fit(bad, FitKind::Thrust, 2);
        FAIL() << "expected a sign-condition error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("kappa_0 must be positive"), std::string::npos);
    }
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ValidationError("x")), kExitValidation);
    EXPECT_EQ(exit_code_for(FitError("x")), kExitValidation);
    EXPECT_EQ(exit_code_for(NoThresholdError("x")), kExitSolver);
    EXPECT_EQ(exit_code_for(NonMonotonicResidual("x")), kExitSolver);
    EXPECT_EQ(exit_code_for(OracleError("x")), kExitOracle);
}
