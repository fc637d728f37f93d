// dcc-sim: command-line front end for the adaptive DCC simulator.
//
//   dcc-sim run --scenario cold300 --algo dual --duration 40 --out run.csv
//   dcc-sim table3 | table4 | fig1 --out fig1.csv | analyze 300
//
// Exit codes: 0 success, 1 I/O error, 2 usage or configuration error.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcc/analysis.hpp"
#include "dcc/engine.hpp"
#include "dcc/reproduction.hpp"
#include "dcc/scenario.hpp"
#include "dcc/series_io.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw dcc::ConfigError("--set expects <param>=<value>, got '" + text + "'");
  const std::string value = text.substr(eq + 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw dcc::ConfigError("--set value for '" + text.substr(0, eq) + "' is not a number");
  return {text.substr(0, eq), v};
}

dcc::EffectiveParams params_from(const std::vector<std::string>& sets) {
  dcc::EffectiveParams p;
  for (const auto& s : sets) {
    const auto [name, value] = parse_assignment(s);
    dcc::set_param(p.dcc, p.dual, name, value);
  }
  p.dcc.validate();
  p.dual.validate();
  return p;
}

// Writes to `path`, or stdout when path is empty or "-".
template <typename Writer>
void emit(const std::string& path, Writer write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

dcc::ScenarioSpec load_source(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) {
    try {
      return dcc::load_scenario(source);
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    }
  }
  if (auto spec = dcc::builtin_scenario(source)) return *spec;
  throw dcc::ConfigError("scenario '" + source +
                         "' is neither a file nor a built-in name (cold<K>, merge<A>x<B>)");
}

struct RunArgs {
  std::string scenario;
  std::string algo;
  double duration = 0.0;
  std::string out;
  std::string format = "csv";
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
};

void cmd_run(const RunArgs& a) {
  auto spec = load_source(a.scenario);
  for (const auto& s : a.sets) {
    const auto [name, value] = parse_assignment(s);
    spec.params[name] = value;
  }
  if (!a.algo.empty()) {
    spec.algorithm = a.algo == "dual" ? dcc::Algorithm::DualAlpha : dcc::Algorithm::Etsi;
  }
  if (a.duration > 0.0) spec.duration = a.duration;

  const auto eff = dcc::effective_params(spec);
  std::vector<std::string> warnings;
  const auto resolved = dcc::resolve(spec, eff.dcc, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  dcc::RunOptions options;
  options.noise_amplitude = a.noise;
  options.seed = a.seed;
  const auto series = dcc::run(dcc::station_groups(resolved), eff.dcc,
                               dcc::make_variant(spec.algorithm, eff.dual), spec.duration,
                               options);
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "json")
      dcc::write_json(os, series);
    else
      dcc::write_csv(os, series);
  });
}

void cmd_analyze(double stations, const std::vector<std::string>& sets) {
  const auto p = params_from(sets).dcc;
  const auto r = dcc::classify_convergence(stations, p);
  std::cout << "stations            " << dcc::format_double(stations) << '\n'
            << "conv_value          " << dcc::format_double(dcc::conv_value(stations, p)) << '\n'
            << "classification      " << dcc::to_string(r.kind) << '\n'
            << "delta_conv          "
            << (r.delta_conv ? dcc::format_double(*r.delta_conv) : std::string("none")) << '\n'
            << "predicted_cbr       " << dcc::format_double(r.predicted_cbr) << '\n'
            << "capacity_threshold  " << dcc::format_double(dcc::capacity_threshold(p)) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive DCC (ETSI / Dual-alpha) channel-load simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write its time series");
  run->add_option("--scenario", run_args.scenario, "Scenario JSON file or built-in name")
      ->required();
  run->add_option("--algo", run_args.algo, "Control law (overrides the scenario)")
      ->check(CLI::IsMember({"etsi", "dual"}));
  run->add_option("--duration", run_args.duration, "Seconds to simulate (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_args.out, "Output path (default stdout)");
  run->add_option("--format", run_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--noise", run_args.noise, "Uniform measurement noise half-width")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--seed", run_args.seed, "Noise seed");
  run->add_option("--set", run_args.sets, "Parameter override <param>=<value>")
      ->take_all();

  std::vector<std::string> sets;
  std::string out;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--set", sets, "Parameter override <param>=<value>")->take_all();
  };

  auto* table3 = app.add_subcommand("table3", "Reproduce the cold-start convergence table");
  add_common(table3);
  auto* table4 = app.add_subcommand("table4", "Reproduce the group-merge fairness table");
  add_common(table4);
  auto* fig1 = app.add_subcommand("fig1", "Predicted steady-state CBR for alpha=0.016 and 0.1");
  add_common(fig1);
  fig1->add_option("--out", out, "Output CSV path (default stdout)");

  double stations = 0.0;
  auto* analyze = app.add_subcommand("analyze", "Closed-form convergence for K stations");
  analyze->add_option("K", stations, "Number of stations (real, >= 1)")->required();
  add_common(analyze);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      cmd_run(run_args);
    } else if (*table3) {
      const auto rows = dcc::repro::reproduce_cold_start(params_from(sets));
      dcc::repro::print_cold_start_report(std::cout, rows);
    } else if (*table4) {
      const auto rows = dcc::repro::reproduce_merge(params_from(sets));
      dcc::repro::print_merge_report(std::cout, rows);
    } else if (*fig1) {
      const auto p = params_from(sets).dcc;
      const double alphas[] = {p.alpha, 0.1};
      const auto samples = dcc::repro::convergence_curves(p, alphas);
      emit(out, [&](std::ostream& os) { dcc::repro::write_curves_csv(os, samples); });
    } else if (*analyze) {
      cmd_analyze(stations, sets);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const dcc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
