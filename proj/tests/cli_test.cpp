#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "leosim/scenario.hpp"
#include "support/synthetic_tle.hpp"

namespace leosim {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string output;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(LEOSIM_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("leosim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, RunWritesThreeFiles) {
  const auto out = dir_ / "out";
  const auto r = cli("run fig1-granularity-5 --duration 30 --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(out)) names.insert(e.path().filename().string());
  EXPECT_EQ(names, (std::set<std::string>{"scenario.toml", "summary.csv", "trace.csv"}));
  const auto trace = lines(slurp(out / "trace.csv"));
  EXPECT_EQ(trace.size(), 61u);
  EXPECT_EQ(trace[0], "t_s,rtt_ms,hop_count");
  EXPECT_EQ(lines(slurp(out / "summary.csv"))[0], "mean_ms,min_ms,max_ms,stddev_ms,outages,samples");

  // The echoed scenario reproduces the run byte for byte.
  const auto echo = parse_scenario(slurp(out / "scenario.toml"));
  EXPECT_EQ(echo.duration_s, 30.0);
  const auto again = dir_ / "again";
  ASSERT_EQ(cli("run " + (out / "scenario.toml").string() + " --out " + again.string()).status, 0);
  EXPECT_EQ(slurp(out / "trace.csv"), slurp(again / "trace.csv"));
  EXPECT_EQ(slurp(out / "scenario.toml"), slurp(again / "scenario.toml"));
}

TEST_F(CliTest, RefusesExistingOutputWithoutForce) {
  const auto out = dir_ / "out";
  fs::create_directories(out);
  std::ofstream(out / "keep.txt") << "x";
  auto r = cli("run fig1-granularity-15 --duration 5 --out " + out.string());
  EXPECT_EQ(r.status, 1) << r.output;
  EXPECT_NE(r.output.find("--force"), std::string::npos);
  r = cli("run fig1-granularity-15 --duration 5 --force --out " + out.string());
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "trace.csv"));
}

TEST_F(CliTest, BadTleReportsChecksum) {
  synthetic::TleFields f;
  f.catalog = 44001;
  f.mean_motion_rev_day = 15.05;
  std::string l2 = synthetic::line2(f);
  l2.back() = static_cast<char>('0' + (l2.back() - '0' + 1) % 10);
  const auto tle = dir_ / "bad.tle";
  std::ofstream(tle) << "BAD SAT\n" << synthetic::line1(f) << "\n" << l2 << "\n";
  const auto r = cli("run tle-relay --duration 5 --tle " + tle.string() + " --out " + (dir_ / "out").string());
  EXPECT_EQ(r.status, 1) << r.output;
  EXPECT_NE(r.output.find("checksum"), std::string::npos) << r.output;
}

TEST_F(CliTest, TleRunNeedsCatalogue) {
  const auto r = cli("run tle-relay --out " + (dir_ / "out").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("--tle"), std::string::npos) << r.output;
}

TEST_F(CliTest, GenerateSinglePlane) {
  const auto csv = dir_ / "pos.csv";
  const auto r = cli("generate --planes 1 --sats-per-plane 66 --out " + csv.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto rows = lines(slurp(csv));
  ASSERT_EQ(rows.size(), 67u);
  EXPECT_EQ(rows[0], "index,plane,slot,lat_deg,lon_deg,alt_km");
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_EQ(rows[k].substr(rows[k].rfind(',')), ",550.000000");
}

TEST_F(CliTest, GenerateFromSpecFile) {
  const auto spec = dir_ / "shell.toml";
  std::ofstream(spec) << R"(
[constellation]
planes = 22
sats_per_plane = 72
inclination_deg = 53.0
altitude_km = 550.0
phase_offset = 1.0

[traffic]
source = "London"
destination = "New York"
duration_s = 1.0
)";
  const auto r = cli("generate --spec " + spec.string() + " --time 600");
  ASSERT_EQ(r.status, 0) << r.output;
  const auto rows = lines(r.output);
  ASSERT_EQ(rows.size(), 1585u);
  std::set<std::string> altitudes;
  double max_lat = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    altitudes.insert(rows[k].substr(rows[k].rfind(',') + 1));
    const auto c1 = rows[k].find(',', rows[k].find(',', rows[k].find(',') + 1) + 1);
    max_lat = std::max(max_lat, std::abs(std::stod(rows[k].substr(c1 + 1))));
  }
  EXPECT_EQ(altitudes, (std::set<std::string>{"550.000000"}));
  EXPECT_LE(max_lat, 53.0 + 1e-6);
}

TEST_F(CliTest, VersionAndUsage) {
  auto r = cli("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.output.find(LEOSIM_VERSION), std::string::npos);
  EXPECT_EQ(cli("").status, 1);
  EXPECT_EQ(cli("run").status, 1);
  EXPECT_EQ(cli("generate").status, 1);
  EXPECT_EQ(cli("generate --planes 3").status, 1);
  r = cli("run no-such-preset --out " + (dir_ / "o").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("exp1-isl"), std::string::npos);
}

TEST_F(CliTest, ShippedScenariosParse) {
  for (const auto& e : fs::directory_iterator(LEOSIM_SCENARIO_DIR)) {
    if (e.path().extension() != ".toml") continue;
    EXPECT_NO_THROW(load_scenario(e.path())) << e.path();
  }
}

}  // namespace
}  // namespace leosim
