#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"

using namespace attodress;

TEST(Config, EmptyTextGivesDefaults) {
  const Config c = parse_config("");
  EXPECT_EQ(c.grid_dz, 0.1);
  EXPECT_EQ(c.grid_box, 819.2);
  EXPECT_EQ(c.soft_core_a, 0.3);
  EXPECT_EQ(c.n_states, 5);
  EXPECT_EQ(c.laser_omega, 0.06);
  EXPECT_EQ(c.laser_T, 126.78);
  EXPECT_EQ(c.probe_omega, 1.34);
  EXPECT_EQ(c.probe_T, 10.84);
  EXPECT_NEAR(c.laser().a_max(), 0.3333, 1e-4);
}

TEST(Config, OverrideTouchesOnlyThatKey) {
  const Config c = parse_config("# comment\nlaser.e_max = 0.03   # trailing\n\n");
  Config expected;
  expected.laser_e_max = 0.03;
  EXPECT_EQ(to_text(c), to_text(expected));
}

TEST(Config, ErrorsNameTheKey) {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("grid.dz = -1").find("grid.dz"), std::string::npos);
  EXPECT_NE(message("laser.omegaa = 1").find("laser.omegaa"), std::string::npos);
  EXPECT_NE(message("probe.T = fast").find("probe.T"), std::string::npos);
  EXPECT_NE(message("basis.n_states = 2.5").find("basis.n_states"), std::string::npos);
  EXPECT_NE(message("absorber.enabled = maybe").find("absorber.enabled"), std::string::npos);
  EXPECT_EQ(message("just text").find("no error"), std::string::npos);
}

TEST(Config, TextRoundTripIsExact) {
  Config c;
  c.laser_e_max = 0.1 + 0.2;
  c.probe_tau = -37.25;
  c.absorber_enabled = true;
  const Config back = parse_config(to_text(c));
  EXPECT_EQ(back.laser_e_max, c.laser_e_max);
  EXPECT_EQ(to_text(back), to_text(c));
}

TEST(Config, LoadsManifest) {
  Config c;
  c.laser_e_max = 0.04;
  const auto dir = std::filesystem::temp_directory_path() / "attodress_manifest_test";
  ensure_directory(dir.string());
  write_manifest(dir.string(), c, "test", 1.5, {{"stage", 0.5}});
  const Config back = load_config_file((dir / "manifest.json").string());
  EXPECT_EQ(to_text(back), to_text(c));

  std::ifstream in(dir / "manifest.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["command"], "test");
  EXPECT_EQ(j["code_version"], code_version());
  EXPECT_EQ(j["stages"][0]["stage"], "stage");
}

TEST(Config, TauGrid) {
  Config c;
  EXPECT_EQ(c.tau_grid().size(), 61u);
  EXPECT_EQ(c.tau_grid().front(), -150.0);
  EXPECT_EQ(c.tau_grid().back(), 150.0);
}

TEST(Units, Conversions) {
  EXPECT_NEAR(convert_units(1.34, Unit::hartree, Unit::electron_volt), 36.38, 0.003 * 36.38);
  EXPECT_NEAR(convert_units(126.78, Unit::au_time, Unit::femtosecond), 3.066, 1e-3);
  EXPECT_EQ(convert_units(0.0, Unit::au_field, Unit::volt_per_meter), 0.0);
  EXPECT_NEAR(convert_units(1.0, Unit::au_field, Unit::volt_per_meter), 5.412e11, 1.0);
  EXPECT_THROW(convert_units(1.0, Unit::hartree, Unit::femtosecond), ConfigError);
  EXPECT_EQ(parse_unit("eV"), Unit::electron_volt);
  EXPECT_THROW(parse_unit("furlong"), ConfigError);
}

TEST(Units, RoundTrip) {
  const std::pair<Unit, Unit> pairs[] = {{Unit::hartree, Unit::electron_volt},
                                         {Unit::au_time, Unit::femtosecond},
                                         {Unit::au_field, Unit::volt_per_meter}};
  for (auto [a, b] : pairs) {
    for (double x : {1e-7, 0.3, 42.0, -5.5}) {
      EXPECT_NEAR(convert_units(convert_units(x, a, b), b, a), x, 1e-12 * std::abs(x));
    }
  }
}

TEST(Report, ShortestRoundTripFormatting) {
  for (double x : {0.1, 1.0 / 3.0, -1.7466055093061996, 6.02e23, 2.2250738585072014e-308}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_optional(std::nullopt), "");
}

TEST(Report, CsvAndSvgAreWritten) {
  const auto dir = std::filesystem::temp_directory_path() / "attodress_report_test";
  ensure_directory(dir.string());
  Table t;
  t.header = {"x", "y"};
  t.add_numeric_row({1.0, 2.5});
  t.add_row({"3", ""});
  write_csv((dir / "t.csv").string(), t);
  std::ifstream in(dir / "t.csv");
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, "x,y\n1,2.5\n3,\n");
  write_svg_plot((dir / "p.svg").string(), "title", "x", "y", {{"s", {0, 1, 2}, {0, NAN, 1}}});
  EXPECT_TRUE(std::filesystem::exists(dir / "p.svg"));
}
