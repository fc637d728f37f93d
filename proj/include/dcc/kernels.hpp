#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "dcc/control.hpp"

namespace dcc {

/// Summary of a set of duty cycles.
struct Moments {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = 0.0;
  double max = 0.0;

  /// Appends `other` after this one (order matters for rounding).
  void merge(const Moments& other);
  /// Exact when all values are equal; otherwise clamped to [min, max].
  double mean() const;
  /// (sum)^2 / (count * sum_sq), exactly 1 for equal values and never above 1.
  double jain() const;
};

/// Uniform draw in [-1, 1) from a counter-based stream keyed by
/// (seed, station, tick). Independent of evaluation order.
double noise_unit(std::uint64_t seed, std::uint64_t station, std::uint64_t tick);

// Per-station kernels over the active station prefix. `kernels` is the
// OpenMP path; `reference` holds the plain serial loops it is checked
// against. Both produce bit-identical station updates. Sums in `kernels`
// use a fixed block decomposition, so they do not depend on the thread
// count but may differ from `reference` in the last few ulps.

namespace kernels {

double channel_load(std::span<const StationState> stations);

Moments delta_moments(std::span<const StationState> stations);

/// Writes each station's observation of `cbr_raw` into `out`; station i has
/// id `first_id + i`. amplitude == 0 writes cbr_raw unchanged.
void observe(std::span<double> out, double cbr_raw, double amplitude, std::uint64_t seed,
             std::uint64_t first_id, std::uint64_t tick);

/// stations[i] = step_station(stations[i], {newest[i], older[i]}, p, variant).
void step_stations(std::span<StationState> stations, std::span<const double> newest,
                   std::span<const double> older, const DccParams& p, const Variant& variant);

}  // namespace kernels

namespace reference {

double channel_load(std::span<const StationState> stations);
Moments delta_moments(std::span<const StationState> stations);
void observe(std::span<double> out, double cbr_raw, double amplitude, std::uint64_t seed,
             std::uint64_t first_id, std::uint64_t tick);
void step_stations(std::span<StationState> stations, std::span<const double> newest,
                   std::span<const double> older, const DccParams& p, const Variant& variant);

}  // namespace reference

}  // namespace dcc
