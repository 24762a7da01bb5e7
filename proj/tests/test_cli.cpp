#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "vacspec_cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vacspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = vacspec::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(CliGrid, ParsesAndPinsEnds) {
  const auto g = vacspec::cli::parse_grid("0:3:7");
  const auto v = g.values();
  ASSERT_EQ(v.size(), 7u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 3.0);
  EXPECT_DOUBLE_EQ(v[1], 0.5);
  const auto lg = vacspec::cli::parse_grid("1:1000:4:log").values();
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_EQ(lg.back(), 1000.0);
  EXPECT_THROW(vacspec::cli::parse_grid("1:1:2"), vacspec::ArgumentError);
  EXPECT_THROW(vacspec::cli::parse_grid("0:1:1"), vacspec::ArgumentError);
  EXPECT_THROW(vacspec::cli::parse_grid("0:1:5:log"), vacspec::ArgumentError);
  EXPECT_THROW(vacspec::cli::parse_grid("0:1"), vacspec::ArgumentError);
}

TEST(CliRegulator, Forms) {
  using vacspec::Regulator;
  EXPECT_EQ(vacspec::cli::parse_regulator("none").kind(), Regulator::Kind::None);
  EXPECT_DOUBLE_EQ(vacspec::cli::parse_regulator("exp:0.01").parameter(), 0.01);
  EXPECT_DOUBLE_EQ(vacspec::cli::parse_regulator("exp-q:1000").parameter(), 1e-3);
  EXPECT_EQ(vacspec::cli::parse_regulator("sharp:100").kind(), Regulator::Kind::Sharp);
  EXPECT_THROW(vacspec::cli::parse_regulator("gauss:1"), vacspec::ArgumentError);
  EXPECT_THROW(vacspec::cli::parse_regulator("exp:-1"), vacspec::ArgumentError);
}

TEST(CliEnergy, Circle) {
  const auto r = run_cli({"energy", "--geometry", "circle", "--L", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 20), "x,value,error_bound\n");
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0][1], -std::numbers::pi / 6.0, 1e-8);
  EXPECT_GE(rows[0][2], 0.0);
}

TEST(CliEnergy, SlabAndEsu) {
  auto r = run_cli({"energy", "--geometry", "slab", "--L", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse_csv(r.out)[0][1], -std::numbers::pi * std::numbers::pi / 90.0, 1e-6);
  r = run_cli({"energy", "--geometry", "esu", "--aR2", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse_csv(r.out)[0][1], 1.0 / (480.0 * std::numbers::pi * std::numbers::pi), 1e-6);
}

TEST(CliEnergy, FirstIntervalWindow) {
  const auto r = run_cli({"energy", "--geometry", "circle", "--window", "0:3.14159265358979"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse_csv(r.out)[0][1], -std::numbers::pi / 4.0, 1e-12);
}

TEST(CliSpectrum, CircleRowsAndFormat) {
  const auto r = run_cli({"spectrum", "--geometry", "circle", "--m", "3", "--grid", "0:2.5:6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0][1], 0.0);
  EXPECT_NEAR(rows[5][1], vacspec::circle::sigma_weight(3, 2.5, {1.0}), 1e-16);
  // 17 significant digits, no locale formatting
  EXPECT_EQ(r.out.find(';'), std::string::npos);
  EXPECT_EQ(r.out.find("\r"), std::string::npos);
}

TEST(CliSpectrum, SlabSawTooth) {
  const auto r = run_cli({"spectrum", "--geometry", "slab", "--grid", "0:18.84955592153876:31"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 31u);
  for (const auto& row : rows) EXPECT_NEAR(row[1], vacspec::slab::slab_sigma(row[0], {1.0}), 1e-12);
}

TEST(CliIntegrate, CircleExponential) {
  const auto r = run_cli({"integrate", "--geometry", "circle", "--reg", "exp-q:100", "--grid", "0:2000:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0][1], 0.0);
  EXPECT_NEAR(rows.back()[1], vacspec::circle::F2(100.0, 2000.0, {1.0}).value, 1e-12);
}

TEST(CliIntegrate, EsuScale) {
  const auto r = run_cli({"integrate", "--geometry", "esu", "--aR2", "0", "--reg", "exp-q:100", "--grid", "1:3000:3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_NEAR(rows.back()[1], vacspec::esu::esu_F(100.0, 0.0, 3000.0).value, 1e-10);
}

TEST(CliJson, Structure) {
  const auto r = run_cli({"energy", "--geometry", "circle", "--reg", "exp:0.1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["command"], "energy");
  EXPECT_EQ(j["config"]["geometry"], "circle");
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_TRUE(j["rows"][0].contains("x"));
  EXPECT_TRUE(j["rows"][0].contains("value"));
  EXPECT_GE(j["rows"][0]["error_bound"].get<double>(), 0.0);
}

TEST(CliExitCodes, UserErrors) {
  EXPECT_EQ(run_cli({"spectrum", "--geometry", "circle", "--m", "3", "--grid", "1:1:2"}).code, 2);
  EXPECT_EQ(run_cli({"spectrum", "--geometry", "esu", "--grid", "0:1:3"}).code, 2);
  EXPECT_EQ(run_cli({"integrate", "--geometry", "circle", "--reg", "bogus", "--grid", "0:1:3"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"energy", "--geometry", "circle", "--L", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"energy", "--geometry", "esu", "--aR2", "-2"}).code, 2);
  EXPECT_EQ(run_cli({"energy", "--geometry", "esu", "--aR2", "0", "--xi", "0.1"}).code, 2);
  const auto r = run_cli({"spectrum", "--geometry", "circle", "--grid", "0:1:3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliConfig, FileAndPrecedence) {
  const auto cfg = temp_file("vacspec_test.cfg",
                             "command=energy\ngeometry=circle\nL=2\nreg=exp:0.05\n");
  auto r = run_cli({"--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const double from_file = parse_csv(r.out)[0][1];
  EXPECT_NEAR(from_file, vacspec::circle::circle_energy({2.0}, 0.05).value, 1e-14);
  r = run_cli({"--config", cfg.string(), "--L", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse_csv(r.out)[0][1], vacspec::circle::circle_energy({1.0}, 0.05).value, 1e-14);
  const auto bad = temp_file("vacspec_bad.cfg", "command=energy\nwavelength=3\n");
  EXPECT_EQ(run_cli({"--config", bad.string()}).code, 2);
}

TEST(CliOutput, FileIsDeterministic) {
  const auto path = std::filesystem::temp_directory_path() / "vacspec_out.csv";
  std::vector<std::string> args = {"integrate", "--geometry", "circle", "--reg", "sharp:100",
                                   "--grid", "0:100:101", "--out", path.string()};
  ASSERT_EQ(run_cli(args).code, 0);
  std::stringstream a, b;
  a << std::ifstream(path, std::ios::binary).rdbuf();
  ASSERT_EQ(run_cli(args).code, 0);
  b << std::ifstream(path, std::ios::binary).rdbuf();
  EXPECT_FALSE(a.str().empty());
  EXPECT_EQ(a.str(), b.str());
}

TEST(CliZeroCrossing, RowContents) {
  const auto r = run_cli({"zero-crossing", "--geometry", "esu"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GT(rows[0][0], 0.49);
  EXPECT_LT(rows[0][0], 0.81);
  EXPECT_LT(rows[0][1], 1e-6);
}
