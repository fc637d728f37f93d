#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dcc/control.hpp"

namespace dcc {

/// Channel measurement cadence; control steps run every second tick.
inline constexpr double kTickSeconds = 0.1;
inline constexpr int kTicksPerStep = 2;

/// A block of identical stations entering the channel together.
struct StationGroup {
  std::size_t count = 0;
  double initial_delta = 0.0;
  double join_time = 0.0;

  friend bool operator==(const StationGroup&, const StationGroup&) = default;
};

struct GroupStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

struct TickRecord {
  double t = 0.0;
  double cbr_raw = 0.0;
  /// Smoothed CBR of a noise-free station present since t=0. Echoes
  /// cbr_raw until the first control step.
  double cbr_s = 0.0;
  double jain = 1.0;
  /// Post-update duty-cycle statistics, indexed like the input groups;
  /// empty while a group has not joined yet.
  std::vector<std::optional<GroupStats>> groups;

  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct TimeSeries {
  DccParams params;
  Variant variant;
  std::vector<StationGroup> groups;
  std::vector<TickRecord> records;

  /// Index of the record nearest to time t (clamped to the series).
  std::size_t index_at(double t) const;
};

enum class Execution { Parallel, Serial };

struct RunOptions {
  /// Half-width of uniform per-station measurement noise; 0 disables it.
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;
  Execution execution = Execution::Parallel;
};

/// Ideal airtime aggregation: min(1, sum of duty cycles).
double measure_channel(std::span<const double> deltas);

/// Synchronous simulation over `duration` seconds: round(duration / 0.1) + 1
/// ticks starting at t = 0. Every tick measures the channel with the duty
/// cycles currently in force; every second tick from t = 0.2 all active
/// stations step with the last two measurements. New duty cycles reach the
/// channel on the following tick. Throws ConfigError for an invalid setup.
TimeSeries run(std::span<const StationGroup> groups, const DccParams& p, const Variant& variant,
               double duration, const RunOptions& options = {});

}  // namespace dcc
