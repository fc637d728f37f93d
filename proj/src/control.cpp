#include "dcc/control.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace dcc {

namespace {

void check_fraction(double x, const char* what) {
  // Negated form also rejects NaN.
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(what) + " outside [0,1]");
}

}  // namespace

double smooth_cbr(double prev, CbrPair pair) {
  check_fraction(prev, "previous smoothed CBR");
  check_fraction(pair.cbr_m, "CBR measurement");
  check_fraction(pair.cbr_m_p, "CBR measurement");
  return 0.5 * prev + 0.5 * ((pair.cbr_m + pair.cbr_m_p) / 2.0);
}

double compute_offset(double cbr_s, const DccParams& p) {
  check_fraction(cbr_s, "smoothed CBR");
  const double raw = p.beta * (p.cbr_target - cbr_s);
  if (p.cbr_target > cbr_s) return std::min(raw, p.g_plus_max);
  return std::max(raw, p.g_minus_min);
}

double update_delta(double prev_delta, double offset, double alpha, const DccParams& p) {
  const double unbounded = (1.0 - alpha) * prev_delta + offset;
  if (unbounded >= p.delta_max) return p.delta_max;
  if (unbounded <= p.delta_min) return p.delta_min;
  return unbounded;
}

double select_alpha(double prev_delta, double offset, const DccParams& p,
                    const DualAlphaParams& d) {
  const double low_gain_delta = update_delta(prev_delta, offset, d.alpha_low, p);
  return (prev_delta - low_gain_delta) > d.th ? d.alpha_high : d.alpha_low;
}

StationState step_station(const StationState& state, CbrPair pair, const DccParams& p,
                          const Variant& variant) {
  StationState next;
  if (state.bootstrapped) {
    next.cbr_smoothed = smooth_cbr(state.cbr_smoothed, pair);
  } else {
    check_fraction(pair.cbr_m, "CBR measurement");
    check_fraction(pair.cbr_m_p, "CBR measurement");
    next.cbr_smoothed = (pair.cbr_m + pair.cbr_m_p) / 2.0;
  }
  next.bootstrapped = true;

  const double offset = compute_offset(next.cbr_smoothed, p);
  const double alpha = std::visit(
      [&](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, DualAlpha>) {
          return select_alpha(state.delta, offset, p, v.params);
        } else {
          return p.alpha;
        }
      },
      variant);
  next.delta = update_delta(state.delta, offset, alpha, p);
  return next;
}

}  // namespace dcc
