#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "dcc/engine.hpp"

namespace dcc {

/// (sum d)^2 / (K * sum d^2). Throws std::domain_error on an empty input or
/// a non-positive duty cycle.
double jain_index(std::span<const double> deltas);

/// Which CBR trace a threshold crossing is measured on.
enum class CbrSignal { Smoothed, Raw };

/// Seconds from `from_t` to the first record at or after `from_t` whose CBR
/// is below `target`; nullopt if never. Throws std::domain_error if `from_t`
/// lies outside the series.
std::optional<double> time_below_target(const TimeSeries& series, double target, double from_t,
                                        CbrSignal signal = CbrSignal::Smoothed);

/// Minimum stay inside the band for time_to_band to count an entry.
inline constexpr double kBandDwellSeconds = 1.0;

/// Seconds from `from_t` until `group`'s mean duty cycle enters
/// [center (1 - band), center (1 + band)] and stays there for `dwell`
/// seconds; nullopt if that never happens within the series.
std::optional<double> time_to_band(const TimeSeries& series, std::size_t group, double center,
                                   double band, double from_t = 0.0,
                                   double dwell = kBandDwellSeconds);

/// Jain index recorded at the tick nearest to t.
double jain_at(const TimeSeries& series, double t);

struct MergeMetrics {
  double jain_at = 0.0;                  // JI at merge + jain_offset
  std::optional<double> t_conv;          // designated group into +/-band of center
  std::optional<double> t_below_target;  // first CBR < target after merge
};

struct MergeMetricsConfig {
  double merge_time = 0.0;
  double jain_offset = 10.0;
  std::size_t group = 0;
  double center = 0.0;
  double band = 0.10;
  double target = 0.68;
  CbrSignal below_signal = CbrSignal::Raw;
};

MergeMetrics merge_metrics(const TimeSeries& series, const MergeMetricsConfig& config);

}  // namespace dcc
