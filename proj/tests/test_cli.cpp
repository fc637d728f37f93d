#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcc/scenario.hpp"

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output sim(const std::string& args) {
  const std::string cmd = std::string("\"") + DCC_SIM_PATH + "\" " + args + " 2>/dev/null";
  Output r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// First t at which column `col` drops below `threshold`.
double first_below(const std::string& csv, std::size_t col, double threshold) {
  const auto rows = lines(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream in(rows[i]);
    for (std::string x; std::getline(in, x, ',');) f.push_back(x);
    if (std::stod(f.at(col)) < threshold) return std::stod(f[0]);
  }
  return -1;
}

std::filesystem::path temp(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("run writes duration/0.1 + 1 CSV rows") {
  const auto r = sim("run --scenario cold300 --duration 5");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 1 + 51);
  CHECK(rows[0] == "t,cbr_raw,cbr_s,jain,g0_mean,g0_min,g0_max");

  const auto tiny = sim("run --scenario cold300 --duration 0.1");
  CHECK(tiny.code == 0);
  CHECK(lines(tiny.out).size() == 3);
}

TEST_CASE("run output is byte-identical across invocations") {
  const char* args = "run --scenario merge25x300 --algo dual --duration 10 --noise 0.05 --seed 9";
  const auto a = sim(args), b = sim(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(sim("run --scenario merge25x300 --algo dual --duration 10 --noise 0.05 --seed 10").out !=
        a.out);
}

TEST_CASE("Dual-alpha brings the cold start down faster than ETSI") {
  const auto etsi = sim("run --scenario cold300 --algo etsi --duration 20");
  const auto dual = sim("run --scenario cold300 --algo dual --duration 20");
  const double te = first_below(etsi.out, 1, 0.68), td = first_below(dual.out, 1, 0.68);
  CHECK(te == doctest::Approx(11.9));
  CHECK(td > 0);
  CHECK(td < te);
}

TEST_CASE("--set overrides reach the simulation") {
  const auto slow = sim("run --scenario cold300 --duration 20 --set alpha=0.1");
  CHECK(slow.code == 0);
  CHECK(first_below(slow.out, 1, 0.68) < 11.9);
}

TEST_CASE("run writes files and JSON") {
  const auto path = temp("dcc_cli_run.json");
  CHECK(sim("run --scenario cold50 --duration 2 --format json --out " + path.string()).code == 0);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["records"].size() == 21);
  CHECK(doc["algorithm"] == "etsi");
  std::filesystem::remove(path);
}

TEST_CASE("run reads scenario files") {
  const auto path = temp("dcc_cli_scenario.json");
  auto spec = dcc::merge_scenario(25, 100);
  spec.duration = 3.0;
  spec.algorithm = dcc::Algorithm::DualAlpha;
  {
    std::ofstream out(path);
    out << dcc::scenario_to_json(spec);
  }
  const auto r = sim("run --scenario " + path.string());
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 1 + 31);
  CHECK(rows[0] == "t,cbr_raw,cbr_s,jain,g0_mean,g0_min,g0_max,g1_mean,g1_min,g1_max");

  {
    std::ofstream out(path);
    out << R"({"groups":[{"count":3,"bogus":1}],"duration":4})";
  }
  CHECK(sim("run --scenario " + path.string()).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("fig1 writes both curves") {
  const auto r = sim("fig1");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows[0] == "alpha,k,predicted_cbr,kind");
  CHECK(rows.size() == 1 + 2 * 1400);
  bool saw_overload = false;
  for (const auto& row : rows)
    saw_overload = saw_overload || row.rfind("0.016,1200,0.72,", 0) == 0;
  CHECK(saw_overload);
}

TEST_CASE("analyze prints the closed-form quantities") {
  const auto r = sim("analyze 25");
  CHECK(r.code == 0);
  CHECK(r.out.find("conv_value          0.017739130434782608") != std::string::npos);
  CHECK(r.out.find("classification      interior") != std::string::npos);
  CHECK(r.out.find("capacity_threshold  1120") != std::string::npos);
  CHECK(sim("analyze 1200").out.find("clamped-min") != std::string::npos);
  CHECK(sim("analyze 0.5").code == 2);
}

TEST_CASE("table subcommands run") {
  const auto t3 = sim("table3");
  CHECK(t3.code == 0);
  CHECK(t3.out.find("PASS") != std::string::npos);
  CHECK(sim("table4").out.find("JI") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(sim("").code == 2);
  CHECK(sim("run").code == 2);
  CHECK(sim("run --scenario cold300 --bogus").code == 2);
  CHECK(sim("run --scenario warm300").code == 2);
  CHECK(sim("run --scenario cold300 --algo limeric").code == 2);
  CHECK(sim("run --scenario cold300 --set gamma=1").code == 2);
  CHECK(sim("run --scenario cold300 --set alpha").code == 2);
  CHECK(sim("run --scenario cold300 --set alpha=abc").code == 2);
  CHECK(sim("run --scenario cold300 --set delta_min=0.5").code == 2);
  CHECK(sim("run --scenario cold300 --noise 3").code == 2);
  CHECK(sim("run --scenario cold300 --duration 1 --out /nonexistent/dir/x.csv").code == 1);
  CHECK(sim("--help").code == 0);
}
