#include "dcc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcc/analysis.hpp"

namespace dcc {

using nlohmann::json;

std::string_view to_string(Algorithm a) {
  return a == Algorithm::Etsi ? "etsi" : "dual";
}

ScenarioSpec cold_start_scenario(std::size_t stations, const DccParams& p) {
  if (stations == 0) throw ConfigError("cold start needs at least one station");
  return ScenarioSpec{{GroupSpec{stations, p.delta_max, 0.0}}, 40.0, Algorithm::Etsi, {}};
}

ScenarioSpec merge_scenario(std::size_t small, std::size_t large, double merge_time) {
  if (small == 0 || large == 0) throw ConfigError("merge groups need at least one station");
  if (!(merge_time >= 0.0)) throw ConfigError("merge time must be >= 0");
  return ScenarioSpec{
      {GroupSpec{small, Converged{}, merge_time}, GroupSpec{large, Converged{}, 0.0}},
      merge_time + 40.0,
      Algorithm::Etsi,
      {}};
}

std::size_t designated_group(const ScenarioSpec& spec) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < spec.groups.size(); ++i) {
    if (spec.groups[i].count > spec.groups[best].count) best = i;
  }
  return best;
}

double merge_time(const ScenarioSpec& spec) {
  double t = 0.0;
  for (const auto& g : spec.groups) t = std::max(t, g.join_time);
  return t;
}

EffectiveParams effective_params(const ScenarioSpec& spec, const EffectiveParams& base) {
  EffectiveParams out = base;
  for (const auto& [name, value] : spec.params) set_param(out.dcc, out.dual, name, value);
  out.dcc.validate();
  out.dual.validate();
  return out;
}

Variant make_variant(Algorithm a, const DualAlphaParams& dual) {
  if (a == Algorithm::Etsi) return Etsi{};
  return DualAlpha{dual};
}

ScenarioSpec resolve(const ScenarioSpec& spec, const DccParams& p,
                     std::vector<std::string>* warnings) {
  if (spec.groups.empty()) throw ConfigError("scenario has no station groups");
  if (!(spec.duration > 0.0)) throw ConfigError("scenario duration must be > 0");

  ScenarioSpec out = spec;
  for (std::size_t i = 0; i < out.groups.size(); ++i) {
    auto& g = out.groups[i];
    if (g.count == 0) throw ConfigError("group " + std::to_string(i) + " has no stations");
    if (!(g.join_time >= 0.0)) throw ConfigError("group " + std::to_string(i) + " join_time < 0");

    if (std::holds_alternative<Converged>(g.initial_delta)) {
      const double conv = conv_value(static_cast<double>(g.count), p);
      const double clamped = std::clamp(conv, p.delta_min, p.delta_max);
      if (clamped != conv && warnings) {
        std::ostringstream msg;
        msg << "group " << i << ": convergence value " << conv << " for " << g.count
            << " stations clamped to " << clamped;
        warnings->push_back(msg.str());
      }
      g.initial_delta = clamped;
    } else {
      const double d = std::get<double>(g.initial_delta);
      if (!(d >= p.delta_min && d <= p.delta_max))
        throw ConfigError("group " + std::to_string(i) + " initial_delta outside bounds");
    }
  }
  return out;
}

std::vector<StationGroup> station_groups(const ScenarioSpec& resolved) {
  std::vector<StationGroup> out;
  out.reserve(resolved.groups.size());
  for (const auto& g : resolved.groups) {
    const auto* d = std::get_if<double>(&g.initial_delta);
    if (!d) throw ConfigError("scenario not resolved");
    out.push_back({g.count, *d, g.join_time});
  }
  return out;
}

TimeSeries run_scenario(const ScenarioSpec& spec, const EffectiveParams& base,
                        const RunOptions& options) {
  const EffectiveParams eff = effective_params(spec, base);
  const auto groups = station_groups(resolve(spec, eff.dcc));
  return run(groups, eff.dcc, make_variant(spec.algorithm, eff.dual), spec.duration, options);
}

namespace {

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<ScenarioSpec> builtin_scenario(std::string_view name, const DccParams& p) {
  if (name.starts_with("cold")) {
    if (auto k = parse_count(name.substr(4))) return cold_start_scenario(*k, p);
    return std::nullopt;
  }
  if (name.starts_with("merge")) {
    const auto rest = name.substr(5);
    const auto x = rest.find('x');
    if (x == std::string_view::npos) return std::nullopt;
    const auto a = parse_count(rest.substr(0, x));
    const auto b = parse_count(rest.substr(x + 1));
    if (a && b) return merge_scenario(*a, *b);
  }
  return std::nullopt;
}

// JSON -----------------------------------------------------------------------

std::string scenario_to_json(const ScenarioSpec& spec) {
  json groups = json::array();
  for (const auto& g : spec.groups) {
    json init = std::holds_alternative<Converged>(g.initial_delta)
                    ? json("converged")
                    : json(std::get<double>(g.initial_delta));
    groups.push_back({{"count", g.count}, {"initial_delta", init}, {"join_time", g.join_time}});
  }
  json doc = {{"groups", groups},
              {"duration", spec.duration},
              {"algorithm", std::string(to_string(spec.algorithm))}};
  if (!spec.params.empty()) doc["params"] = spec.params;
  return doc.dump(2) + "\n";
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

double number(const json& v, std::string_view what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(std::string(what) + " must be finite");
  return d;
}

}  // namespace

ScenarioSpec scenario_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  reject_unknown(doc, {"groups", "duration", "algorithm", "params"}, "scenario");

  ScenarioSpec spec;
  spec.groups.clear();
  if (!doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty())
    throw ConfigError("scenario needs a non-empty 'groups' array");
  for (const auto& g : doc["groups"]) {
    if (!g.is_object()) throw ConfigError("each group must be an object");
    reject_unknown(g, {"count", "initial_delta", "join_time"}, "group");
    if (!g.contains("count") || !g["count"].is_number_unsigned())
      throw ConfigError("group 'count' must be a positive integer");
    GroupSpec gs;
    gs.count = g["count"].get<std::size_t>();
    if (gs.count == 0) throw ConfigError("group 'count' must be a positive integer");
    if (g.contains("initial_delta")) {
      const auto& init = g["initial_delta"];
      if (init.is_string()) {
        if (init.get<std::string>() != "converged")
          throw ConfigError("initial_delta must be a number or \"converged\"");
        gs.initial_delta = Converged{};
      } else {
        gs.initial_delta = number(init, "initial_delta");
      }
    }
    if (g.contains("join_time")) gs.join_time = number(g["join_time"], "join_time");
    spec.groups.push_back(gs);
  }

  if (!doc.contains("duration")) throw ConfigError("scenario needs 'duration'");
  spec.duration = number(doc["duration"], "duration");
  if (doc.contains("algorithm")) {
    if (!doc["algorithm"].is_string()) throw ConfigError("algorithm must be a string");
    const auto name = doc["algorithm"].get<std::string>();
    if (name == "etsi") spec.algorithm = Algorithm::Etsi;
    else if (name == "dual") spec.algorithm = Algorithm::DualAlpha;
    else throw ConfigError("unknown algorithm '" + name + "'");
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw ConfigError("params must be an object");
    DccParams probe;
    DualAlphaParams probe_dual;
    for (const auto& [key, value] : doc["params"].items()) {
      const double v = number(value, key);
      set_param(probe, probe_dual, key, v);  // rejects unknown names
      spec.params[key] = v;
    }
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace dcc
