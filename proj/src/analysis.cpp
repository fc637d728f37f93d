#include "dcc/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcc {

std::string_view to_string(ConvergenceKind kind) {
  switch (kind) {
    case ConvergenceKind::Interior: return "interior";
    case ConvergenceKind::GainLimited: return "gain-limited";
    case ConvergenceKind::ClampedMax: return "clamped-max";
    case ConvergenceKind::ClampedMin: return "clamped-min";
    case ConvergenceKind::NoGuarantee: return "no-guarantee";
  }
  return "?";
}

namespace {

double load_share(double stations, const DccParams& p) {
  return p.beta * p.cbr_target / (p.alpha + stations * p.beta);
}

}  // namespace

double conv_value(double stations, const DccParams& p) {
  if (!(stations >= 1.0)) throw std::domain_error("station count must be >= 1");
  return std::min(p.g_plus_max / p.alpha, load_share(stations, p));
}

ConvergenceResult classify_convergence(double stations, const DccParams& p) {
  const double conv = conv_value(stations, p);
  const double gain_limit = p.g_plus_max / p.alpha;

  ConvergenceResult r;
  if (p.alpha + stations * p.beta < 2.0 && conv <= p.delta_max && conv >= p.delta_min) {
    r = {ConvergenceKind::Interior, conv};
  } else if (gain_limit <= load_share(stations, p) && gain_limit <= p.delta_max &&
             gain_limit >= p.delta_min) {
    r = {ConvergenceKind::GainLimited, gain_limit};
  } else if (conv > p.delta_max) {
    r = {ConvergenceKind::ClampedMax, p.delta_max};
  } else if (conv < p.delta_min) {
    r = {ConvergenceKind::ClampedMin, p.delta_min};
  } else {
    return {ConvergenceKind::NoGuarantee, std::nullopt, 0.0};
  }
  r.predicted_cbr = std::min(1.0, stations * *r.delta_conv);
  return r;
}

double capacity_threshold(const DccParams& p) {
  if (p.g_plus_max / p.alpha <= p.delta_min) return 1.0;
  return std::max(1.0, (p.beta * p.cbr_target / p.delta_min - p.alpha) / p.beta);
}

std::vector<CurvePoint> cbr_convergence_curve(std::span<const double> stations,
                                              const DccParams& p) {
  std::vector<CurvePoint> out;
  out.reserve(stations.size());
  for (double k : stations) out.push_back({k, classify_convergence(k, p).predicted_cbr});
  return out;
}

}  // namespace dcc
