#include "dcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcc {

double jain_index(std::span<const double> deltas) {
  if (deltas.empty()) throw std::domain_error("Jain index of an empty allocation");
  double sum = 0.0;
  double sum_sq = 0.0;
  bool all_equal = true;
  for (double d : deltas) {
    if (!(d > 0.0)) throw std::domain_error("Jain index needs positive duty cycles");
    sum += d;
    sum_sq += d * d;
    all_equal = all_equal && d == deltas.front();
  }
  if (all_equal) return 1.0;
  return std::min(1.0, sum * sum / (static_cast<double>(deltas.size()) * sum_sq));
}

namespace {

std::size_t first_index_at_or_after(const TimeSeries& series, double from_t) {
  if (series.records.empty()) throw std::domain_error("empty time series");
  const double first = series.records.front().t;
  const double last = series.records.back().t;
  if (!(from_t >= first - 1e-9 && from_t <= last + 1e-9))
    throw std::domain_error("start time outside the series");
  const auto i = static_cast<long long>(std::ceil((from_t - first) / kTickSeconds - 1e-9));
  return static_cast<std::size_t>(std::max(0LL, i));
}

double elapsed(const TimeSeries& series, std::size_t i, double from_t) {
  // Tick arithmetic keeps results on the 0.1 s grid.
  return std::round((series.records[i].t - from_t) * 10.0) / 10.0;
}

}  // namespace

std::optional<double> time_below_target(const TimeSeries& series, double target, double from_t,
                                        CbrSignal signal) {
  for (std::size_t i = first_index_at_or_after(series, from_t); i < series.records.size(); ++i) {
    const auto& r = series.records[i];
    const double cbr = signal == CbrSignal::Smoothed ? r.cbr_s : r.cbr_raw;
    if (cbr < target) return elapsed(series, i, from_t);
  }
  return std::nullopt;
}

std::optional<double> time_to_band(const TimeSeries& series, std::size_t group, double center,
                                   double band, double from_t, double dwell) {
  if (group >= series.groups.size()) throw std::domain_error("unknown group");
  if (!(band > 0.0)) throw std::domain_error("band must be positive");

  const double lo = center * (1.0 - band);
  const double hi = center * (1.0 + band);
  const auto in_band = [&](std::size_t i) {
    const auto& g = series.records[i].groups[group];
    return g && g->mean >= lo && g->mean <= hi;
  };

  const auto dwell_ticks = static_cast<std::size_t>(std::llround(dwell / kTickSeconds));
  const std::size_t n = series.records.size();
  // run = number of consecutive in-band records ending at i.
  std::size_t run = 0;
  for (std::size_t i = first_index_at_or_after(series, from_t); i < n; ++i) {
    run = in_band(i) ? run + 1 : 0;
    if (run == dwell_ticks + 1) return elapsed(series, i - dwell_ticks, from_t);
  }
  return std::nullopt;
}

double jain_at(const TimeSeries& series, double t) {
  if (series.records.empty()) throw std::domain_error("empty time series");
  return series.records[series.index_at(t)].jain;
}

MergeMetrics merge_metrics(const TimeSeries& series, const MergeMetricsConfig& c) {
  return {
      jain_at(series, c.merge_time + c.jain_offset),
      time_to_band(series, c.group, c.center, c.band, c.merge_time),
      time_below_target(series, c.target, c.merge_time, c.below_signal),
  };
}

}  // namespace dcc
