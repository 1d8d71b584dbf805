#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "surfride/config.hpp"
#include "surfride/error.hpp"

using namespace surfride;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_document() {
    return json::parse(R"({
      "ship": {"mass": {"value": 400, "unit": "t"}, "added_mass": "auto", "wake_fraction": 0.15,
               "thrust_deduction": 0.2, "prop_diameter": 2.0},
      "resistance": {"coefficients": [0, 3000, 800, 0, 0, 0.5]},
      "propeller": {"kappa": [0.32, -0.25, -0.15]},
      "wave": {"wavelength": 40, "height": 2, "force_amplitude": 215820}
    })");
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("surfride_test_" + name);
    fs::create_directories(dir);
    return dir;
}

std::string error_of(const json& doc, const fs::path& base = fs::current_path()) {
    try {
        parse_config(doc, base);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, ParsesWithUnits) {
    const auto c = parse_config(base_document());
    EXPECT_DOUBLE_EQ(c.ship.mass, 4e5);
    EXPECT_DOUBLE_EQ(c.ship.added_mass, 4e4);
    EXPECT_TRUE(c.ship.added_mass_estimated);
    EXPECT_DOUBLE_EQ(c.ship.water_density, kSeaWaterDensity);
    EXPECT_EQ(c.wave.force_source, ForceSource::Explicit);
    EXPECT_EQ(c.wave.mu.mode, MuMode::Unity);
    EXPECT_DOUBLE_EQ(c.wave.steepness(), 0.05);
}

TEST(Config, KnotsAndKilonewtons) {
    auto doc = base_document();
    doc["resistance"] = {{"coefficients", {0.0, 3.0, 0.8}}, {"speed_unit", "kn"}, {"force_unit", "kN"}};
    const auto c = parse_config(doc);
    const auto r = resolve_resistance(c);
    const double kn = 1852.0 / 3600.0;
    const double u = 6.0;
    EXPECT_NEAR(r(u), 1000.0 * (3.0 * (u / kn) + 0.8 * (u / kn) * (u / kn)), 1e-9);
}

TEST(Config, SteepnessInsteadOfHeight) {
    auto doc = base_document();
    doc["wave"].erase("height");
    doc["wave"]["steepness"] = 0.1;
    EXPECT_DOUBLE_EQ(parse_config(doc).wave.height, 4.0);
    doc["wave"]["height"] = 1.0;
    EXPECT_NE(error_of(doc).find("exactly one of 'height' and 'steepness'"), std::string::npos);
}

TEST(Config, FieldLevelErrors) {
    auto doc = base_document();
    doc.erase("resistance");
    EXPECT_NE(error_of(doc).find("config.resistance: missing"), std::string::npos);

    doc = base_document();
    doc["ship"]["mass"] = {{"value", 400}, {"unit", "lb"}};
    EXPECT_NE(error_of(doc).find("ship.mass.unit"), std::string::npos);

    doc = base_document();
    doc["ship"]["wake_fraction"] = "high";
    EXPECT_NE(error_of(doc).find("ship.wake_fraction"), std::string::npos);

    doc = base_document();
    doc["wave"]["force_amplitude"] = "compute";
    EXPECT_NE(error_of(doc).find("needs a hull block"), std::string::npos);

    doc = base_document();
    doc["resistance"] = {{"samples_file", "does_not_exist.txt"}, {"degree", 5}};
    EXPECT_NE(error_of(doc).find("does not exist"), std::string::npos);

    doc = base_document();
    doc["resistance"]["samples"] = json::array({json::array({1.0, 2.0})});
    EXPECT_NE(error_of(doc).find("exactly one of"), std::string::npos);

    doc = base_document();
    doc["oracle"] = {{"range", {5.0, 4.0}}};
    EXPECT_NE(error_of(doc).find("oracle.range"), std::string::npos);
}

TEST(Config, SampleFilesRelativeToConfig) {
    const auto dir = scratch_dir("samples");
    {
        std::ofstream out(dir / "kt.txt");
        out << "# J KT\n";
        for (int i = 0; i <= 10; ++i) {
            const double j = 0.1 * i;
            out << j << ' ' << 0.32 - 0.25 * j - 0.15 * j * j << '\n';
        }
    }
    auto doc = base_document();
    doc["propeller"] = {{"samples_file", "kt.txt"}, {"degree", 2}};
    const auto c = parse_config(doc, dir);
    ASSERT_EQ(c.propeller.samples.size(), 11u);
    const auto t = resolve_thrust(c);
    EXPECT_NEAR(t.kappa(0), 0.32, 1e-12);
    EXPECT_NEAR(t.kappa(2), -0.15, 1e-12);
}

TEST(Config, RoundTripIsIdentity) {
    auto doc = base_document();
    doc["hull"] = {{"stations", {{-10.0, 0.0, 0.0}, {0.0, 20.0, 2.0}, {10.0, 0.0, 0.0}}},
                   {"block_coefficient", 0.6},
                   {"midship_coefficient", 0.9}};
    doc["wave"]["mu"] = "sgisc";
    doc["propeller"] = {{"samples", {{0.0, 0.32}, {0.5, 0.16}, {1.0, -0.08}}}, {"degree", 2}};
    doc["sweep"] = {{"parameter", "rate"}, {"from", 1.0}, {"to", 10.0}, {"count", 5}};
    doc["oracle"] = {{"horizon", 300}, {"range", {1.0, 9.0}}, {"grid", {{"positions", 8}}}};
    doc["output"] = {{"report", "out.json"}};
    const auto a = parse_config(doc);
    const auto b = parse_config(serialize_config(a));
    EXPECT_EQ(a.ship, b.ship);
    EXPECT_EQ(a.resistance, b.resistance);
    EXPECT_EQ(a.propeller, b.propeller);
    EXPECT_EQ(a.wave, b.wave);
    EXPECT_EQ(a.hull, b.hull);
    EXPECT_EQ(a.sweep, b.sweep);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.oracle.capture.horizon, b.oracle.capture.horizon);
    EXPECT_EQ(a.oracle.grid.positions, b.oracle.grid.positions);
    EXPECT_EQ(a.oracle_range->lower, b.oracle_range->lower);
    EXPECT_EQ(serialize_config(a), serialize_config(b));
    EXPECT_EQ(config_digest(a), config_digest(b));
}

TEST(Config, DigestTracksContent) {
    const auto a = parse_config(base_document());
    auto doc = base_document();
    doc["wave"]["height"] = 2.5;
    const auto b = parse_config(doc);
    EXPECT_EQ(config_digest(a), config_digest(parse_config(base_document())));
    EXPECT_NE(config_digest(a), config_digest(b));
    EXPECT_EQ(config_digest(a).rfind("sha256:", 0), 0u);
    EXPECT_EQ(config_digest(a).size(), 7u + 64u);
}

TEST(Config, SearchPathFromEnvironment) {
    const auto dir = scratch_dir("search");
    {
        std::ofstream out(dir / "ship_from_env.json");
        out << base_document().dump();
    }
    ::setenv(kConfigPathVariable, ("/nonexistent:" + dir.string()).c_str(), 1);
    const auto c = load_config("ship_from_env.json");
    EXPECT_DOUBLE_EQ(c.ship.mass, 4e5);
    ::unsetenv(kConfigPathVariable);
    EXPECT_THROW(load_config("ship_from_env.json"), ValidationError);
}

TEST(SampleTable, Parse) {
    std::istringstream in("# u R\nspeed resistance\n1 2\n3 4\n");
    const auto s = read_sample_table(in);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s[1].y, 4.0);
    std::istringstream bad("1 2\n3\n");
    EXPECT_THROW(read_sample_table(bad), ValidationError);
}
