#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dcc/params.hpp"

namespace dcc {

// Closed-form steady state of K stations sharing one channel. K is real-valued
// so fractional capacity thresholds can be evaluated directly.

enum class ConvergenceKind { Interior, GainLimited, ClampedMax, ClampedMin, NoGuarantee };

std::string_view to_string(ConvergenceKind kind);

struct ConvergenceResult {
  ConvergenceKind kind = ConvergenceKind::NoGuarantee;
  std::optional<double> delta_conv;  // empty iff kind == NoGuarantee
  double predicted_cbr = 0.0;        // min(1, K * delta_conv); 0 when no delta_conv
};

/// min{ G+max / alpha, beta * CBR_t / (alpha + K * beta) }. Throws
/// std::domain_error for K < 1.
double conv_value(double stations, const DccParams& p);

/// Five-way case split, evaluated in order; the first matching case wins.
ConvergenceResult classify_convergence(double stations, const DccParams& p);

/// Station count at which conv_value reaches delta_min:
/// (beta * CBR_t / delta_min - alpha) / beta.
double capacity_threshold(const DccParams& p);

struct CurvePoint {
  double stations;
  double predicted_cbr;
};

std::vector<CurvePoint> cbr_convergence_curve(std::span<const double> stations,
                                              const DccParams& p);

}  // namespace dcc
