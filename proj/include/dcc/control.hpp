#pragma once

#include "dcc/params.hpp"

namespace dcc {

/// The two most recent 100 ms channel-busy measurements, newest first.
struct CbrPair {
  double cbr_m = 0.0;
  double cbr_m_p = 0.0;
};

/// Per-station controller memory between 200 ms steps.
struct StationState {
  double delta = 0.0;
  double cbr_smoothed = 0.0;
  bool bootstrapped = false;

  friend bool operator==(const StationState&, const StationState&) = default;
};

// The control law. All functions are pure; domain violations throw
// std::domain_error.

/// CBR_s(n) = 0.5 * prev + 0.5 * mean(pair).
double smooth_cbr(double prev, CbrPair pair);

/// Additive correction toward the target, capped per step. The
/// target > cbr_s split is strict: cbr_s == target takes the negative branch.
double compute_offset(double cbr_s, const DccParams& p);

/// (1 - alpha) * prev_delta + offset, clamped to [delta_min, delta_max].
double update_delta(double prev_delta, double offset, double alpha, const DccParams& p);

/// alpha_high while the low-gain update would shrink delta by more than th,
/// alpha_low otherwise. The comparison uses the clamped low-gain delta.
double select_alpha(double prev_delta, double offset, const DccParams& p,
                    const DualAlphaParams& d);

/// One 200 ms control step. An un-bootstrapped station seeds its smoothed
/// CBR with the mean of `pair` instead of blending with its (undefined)
/// previous value.
StationState step_station(const StationState& state, CbrPair pair, const DccParams& p,
                          const Variant& variant);

}  // namespace dcc
