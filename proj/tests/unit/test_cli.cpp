#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwqi/cli/commands.hpp"
#include "mwqi/errors.hpp"
#include "test_support.hpp"

using namespace mwqi;
using namespace mwqi::cli;
using mwqi::testing::close_rel;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto c = line.find(',', pos);
      fields.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
      if (c == std::string::npos) break;
      pos = c + 1;
    }
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mwqi_test_" + name);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string report_value(const std::string& report, const std::string& key) {
  const std::string needle = "  " + key + " = ";
  auto pos = report.find(needle);
  REQUIRE(pos != std::string::npos);
  pos += needle.size();
  return report.substr(pos, report.find_first_of(" \n", pos) - pos);
}

}  // namespace

TEST_CASE("csv numbers use 12 significant digits") {
  CHECK(csv_number(0.0) == "0");
  CHECK(csv_number(-0.0) == "0");
  CHECK(csv_number(1.0) == "1");
  CHECK(csv_number(1.0 / 3.0) == "0.333333333333");
  CHECK(csv_number(6.02214076e23) == "6.02214076e+23");
  CHECK(csv_number(-1.5e-300) == "-1.5e-300");
}

TEST_CASE("axis parsing") {
  const Axis a = parse_axis("x", "1:100:3:log");
  CHECK(a.log);
  const auto v = a.values();
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(v[2] == 100.0);
  CHECK(parse_axis("x", "0:1:5").values()[2] == 0.5);
  CHECK_THROWS_AS(parse_axis("x", "0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x", "0:1:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x", "1:0:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x", "0:1:3:log"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x", "0:1:2.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x", "0:1:3:cubic"), std::invalid_argument);
}

TEST_CASE("parallel map keeps index order and propagates errors") {
  const auto v = parallel_map<int>(1000, 8, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map<int>(100, 4,
                                    [](std::size_t i) {
                                      if (i == 37) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                  std::runtime_error);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("source sweep on a tiny grid") {
  const RunResult r = run_cli({"source", "--gamma-w", "1e-6:2e-6:2", "--gamma-o", "1e-6:2e-6:2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(r.out.rfind("Gamma_w,Gamma_o,stable,metric_E,E_N_per_photon,I_fwd_per_photon,I_rev_per_photon,"
                    "D_w_o_per_photon,D_o_w_per_photon\n",
                    0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    CHECK(rows[i][2] == "1");
    // Mechanical noise still reaches the microwave output, so the state is
    // mixed but separable and only weakly correlated.
    CHECK(std::stod(rows[i][3]) < 1.0);   // metric_E
    CHECK(std::stod(rows[i][4]) == 0.0);  // E_N
    CHECK(std::stod(rows[i][5]) <= 0.0);  // I_fwd
    for (int col : {7, 8}) {
      CHECK(std::stod(rows[i][col]) >= 0.0);
      CHECK(std::stod(rows[i][col]) < 1e-2);
    }
  }
  CHECK(rows[1][0] == "1e-06");
  CHECK(rows[2][1] == "2e-06");
  CHECK(rows[3][0] == "2e-06");
}

TEST_CASE("unstable grid points are flagged with empty measures") {
  const RunResult r = run_cli({"source", "--gamma-w", "0:1:2", "--gamma-o", "0:10:2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2][1] == "10");
  CHECK(rows[2][2] == "0");
  for (std::size_t k = 3; k < 9; ++k) CHECK(rows[2][k].empty());
}

TEST_CASE("detection curve without a return") {
  const RunResult r = run_cli({"detect", "--eta", "0", "--modes", "1e4:1e8:5:log"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(r.out.rfind("M,snr_qi,snr_coh,log10_p_qi,log10_p_coh,F\n", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) == doctest::Approx(std::log10(0.5)).epsilon(1e-11));
    CHECK(std::stod(rows[i][4]) == doctest::Approx(std::log10(0.5)).epsilon(1e-11));
    CHECK(rows[i][5].empty());
  }
}

TEST_CASE("detection row with coherent SNR of 8") {
  SimulationConfig c = fig2_preset();
  c.eta = 0.5;
  c.n_background = 0.0;
  const auto [gw, go] = config_cooperativities(c);
  const double n_w = evaluate_point(c, gw, go, false).state->n_w;
  const double m = 8.0 / (4.0 * c.eta * n_w);
  const auto rows = detection_curve(c, Axis{"M", m, 2.0 * m, 2, false});
  CHECK(rows[0].snr_coh == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(rows[0].log10_p_coh == doctest::Approx(std::log10(0.078649603525142565)).epsilon(1e-12));
}

TEST_CASE("detection at the preset point favours QI at every M") {
  const RunResult r = run_cli({"detect"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 52);
  double previous_gap = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double gap = std::stod(rows[i][4]) - std::stod(rows[i][3]);
    CHECK(gap > previous_gap);
    CHECK(std::stod(rows[i][5]) > 1.0);
    previous_gap = gap;
  }
}

TEST_CASE("advantage without optical coupling is zero") {
  const RunResult r = run_cli({"advantage", "--gamma-w", "100:200:2", "--gamma-o", "0:10:2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"Gamma_w", "Gamma_o", "F"});
  CHECK(rows[1][2] == "0");
  CHECK(rows[3][2] == "0");
  CHECK(std::stod(rows[2][2]) > 0.0);
}

TEST_CASE("eta sweep") {
  const RunResult r = run_cli({"advantage", "--eta-sweep", "1e-3:1e-1:5:log"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"eta", "F"});
  CHECK(rows[1][0] == "0.001");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > 1.0);
  CHECK(run_cli({"advantage", "--eta-sweep", "0.5:1:3"}).code == exit_usage);
}

TEST_CASE("point report agrees with the advantage sweep") {
  const SimulationConfig c = fig2_preset();
  const PointEvaluation e = evaluate_point(c, 5181.95, 668.43, true);
  const auto rows = sweep_advantage(c, Axis{"Gamma_w", 5181.95, 6000.0, 2, false},
                                    Axis{"Gamma_o", 668.43, 700.0, 2, false}, 2);
  REQUIRE(rows[0].f.has_value());
  CHECK(close_rel(*rows[0].f, e.receiver->advantage_f, 1e-12));

  const RunResult r = run_cli({"point"});
  REQUIRE(r.code == 0);
  CHECK(report_value(r.out, "F") == csv_number(e.receiver->advantage_f));
  CHECK(report_value(r.out, "n_o") == csv_number(e.state->n_o));
  CHECK(report_value(r.out, "n_B_thresh").substr(0, 6) == "0.0691");
  CHECK(report_value(r.out, "n_B").substr(0, 4) == "610.");
}

TEST_CASE("passthrough point report") {
  const RunResult r = run_cli({"point", "--gamma-w", "0", "--gamma-o", "0"});
  REQUIRE(r.code == 0);
  CHECK(report_value(r.out, "B") == "0");
  CHECK(report_value(r.out, "metric_E") == "0");
  CHECK(report_value(r.out, "E_N") == "0");
  CHECK(report_value(r.out, "D_w_given_o") == "0");
  CHECK(report_value(r.out, "F") == "0");
}

TEST_CASE("sweeps are byte-identical across thread counts") {
  const std::vector<std::string> base = {"source", "--gamma-w", "0:10000:9", "--gamma-o", "0:10000:9"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return run_cli(args);
  };
  const RunResult one = with_threads("1");
  const RunResult four = with_threads("4");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);

  const RunResult a1 = run_cli({"advantage", "--gamma-w", "0:10000:7", "--gamma-o", "0:10000:7", "--threads", "1"});
  const RunResult a4 = run_cli({"advantage", "--gamma-w", "0:10000:7", "--gamma-o", "0:10000:7", "--threads", "4"});
  CHECK(a1.out == a4.out);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == exit_usage);
  CHECK(run_cli({"frobnicate"}).code == exit_usage);
  CHECK(run_cli({"source", "--gamma-w", "1:0:3"}).code == exit_usage);
  CHECK(run_cli({"point", "--fidelity", "quantum"}).code == exit_usage);
  CHECK(run_cli({"source", "--help"}).code == exit_ok);
  CHECK(run_cli({"point", "--config", "/nonexistent/mwqi.cfg"}).code == exit_config);
  CHECK(run_cli({"point", "--eta", "1.5"}).code == exit_config);
  CHECK(run_cli({"detect", "--gamma-w", "1"}).code == exit_usage);

  const RunResult unstable = run_cli({"point", "--gamma-w", "1", "--gamma-o", "3"});
  CHECK(unstable.code == exit_unstable);
  CHECK(unstable.err.find("margin") != std::string::npos);
  CHECK(unstable.out.find("stable = no") != std::string::npos);

  const auto bad = temp_path("bad.cfg");
  {
    std::ofstream f(bad);
    f << "eta = 0.1\nunknown_key = 3\n";
  }
  const RunResult cfg = run_cli({"point", "--config", bad.string()});
  CHECK(cfg.code == exit_config);
  CHECK(cfg.err.find("line 2") != std::string::npos);
  std::filesystem::remove(bad);

  const RunResult unwritable = run_cli({"point", "--out", "/nonexistent/dir/out.txt"});
  CHECK(unwritable.code == exit_usage);
}

TEST_CASE("detect on an unstable configuration is a config error") {
  const auto path = temp_path("unstable.cfg");
  {
    std::ofstream f(path);
    f << "cooperativity_w = 1\ncooperativity_o = 3\n";
  }
  CHECK(run_cli({"detect", "--config", path.string()}).code == exit_config);
  std::filesystem::remove(path);
}

TEST_CASE("echoed configuration reproduces the report") {
  const auto echo = temp_path("echo.cfg");
  const RunResult first =
      run_cli({"point", "--gamma-w", "3000", "--gamma-o", "400", "--eta", "0.02", "--n-background", "55",
               "--fidelity", "lossy", "--echo-config", echo.string()});
  REQUIRE(first.code == 0);
  const RunResult second = run_cli({"point", "--config", echo.string()});
  REQUIRE(second.code == 0);
  CHECK(first.out == second.out);
  std::filesystem::remove(echo);
}

TEST_CASE("output file receives the csv") {
  const auto out = temp_path("grid.csv");
  const RunResult r = run_cli({"advantage", "--gamma-w", "0:100:2", "--gamma-o", "0:50:2", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_file(out).rfind("Gamma_w,Gamma_o,F\n", 0) == 0);
  std::filesystem::remove(out);
}
