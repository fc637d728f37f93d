#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcc/engine.hpp"
#include "dcc/params.hpp"

namespace dcc {

/// Placeholder for "the standalone convergence value of this group's size".
struct Converged {
  friend bool operator==(const Converged&, const Converged&) = default;
};

using InitialDelta = std::variant<double, Converged>;

struct GroupSpec {
  std::size_t count = 1;
  InitialDelta initial_delta = Converged{};
  double join_time = 0.0;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

enum class Algorithm { Etsi, DualAlpha };

struct ScenarioSpec {
  std::vector<GroupSpec> groups;
  double duration = 40.0;
  Algorithm algorithm = Algorithm::Etsi;
  /// Named constant overrides applied on top of the caller's parameters.
  std::map<std::string, double> params;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

std::string_view to_string(Algorithm a);

/// One group of K stations at delta_max.
ScenarioSpec cold_start_scenario(std::size_t stations, const DccParams& p = {});

/// Two separately converged groups. merge_time == 0 puts both on the channel
/// from the start; otherwise the large group warms up alone and the small
/// group joins at merge_time. The run lasts 40 s past the merge.
ScenarioSpec merge_scenario(std::size_t small, std::size_t large, double merge_time = 0.0);

/// Group whose convergence time is tracked: the largest, first on ties.
std::size_t designated_group(const ScenarioSpec& spec);

/// Time at which the last group joins.
double merge_time(const ScenarioSpec& spec);

struct EffectiveParams {
  DccParams dcc;
  DualAlphaParams dual;
};

/// `base` with the spec's overrides applied, validated.
EffectiveParams effective_params(const ScenarioSpec& spec, const EffectiveParams& base = {});

Variant make_variant(Algorithm a, const DualAlphaParams& dual);

/// Replaces Converged placeholders with their numeric values, clamping to
/// [delta_min, delta_max] and appending a message to `warnings` when a clamp
/// happens. Explicit values outside the bounds are a ConfigError.
ScenarioSpec resolve(const ScenarioSpec& spec, const DccParams& p,
                     std::vector<std::string>* warnings = nullptr);

/// Numeric groups of a resolved spec; throws ConfigError if a placeholder
/// remains.
std::vector<StationGroup> station_groups(const ScenarioSpec& resolved);

/// Resolves and runs `spec` with its own algorithm, duration and overrides.
TimeSeries run_scenario(const ScenarioSpec& spec, const EffectiveParams& base = {},
                        const RunOptions& options = {});

/// "cold<K>" or "merge25x<K>" (more generally "merge<A>x<B>").
std::optional<ScenarioSpec> builtin_scenario(std::string_view name, const DccParams& p = {});

std::string scenario_to_json(const ScenarioSpec& spec);
/// Strict parse: unknown keys, non-integer counts and wrong types are
/// ConfigErrors.
ScenarioSpec scenario_from_json(std::string_view text);
ScenarioSpec load_scenario(const std::filesystem::path& path);

}  // namespace dcc
