#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace dcc {

/// Raised for invalid configuration: parameter sets, scenarios, CLI input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Control constants of the ETSI adaptive DCC loop. Defaults are the
/// standardised values.
struct DccParams {
  double alpha = 0.016;
  double beta = 0.0012;
  double cbr_target = 0.68;
  double delta_max = 0.03;
  double delta_min = 0.0006;
  double g_plus_max = 0.0005;
  double g_minus_min = -0.00025;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  friend bool operator==(const DccParams&, const DccParams&) = default;
};

/// Gains and threshold of the Dual-alpha selection rule.
struct DualAlphaParams {
  double alpha_low = 0.016;
  double alpha_high = 0.1;
  double th = 0.00001;

  void validate() const;

  friend bool operator==(const DualAlphaParams&, const DualAlphaParams&) = default;
};

struct Etsi {
  friend bool operator==(const Etsi&, const Etsi&) = default;
};

struct DualAlpha {
  DualAlphaParams params;
  friend bool operator==(const DualAlpha&, const DualAlpha&) = default;
};

/// Which control law a station runs.
using Variant = std::variant<Etsi, DualAlpha>;

std::string_view variant_name(const Variant& v);

/// Parses "etsi" or "dual"; throws ConfigError otherwise.
Variant parse_variant(std::string_view name, const DualAlphaParams& dual = {});

/// Sets one named constant ("alpha", "beta", "cbr_target", "delta_max",
/// "delta_min", "g_plus_max", "g_minus_min", "alpha_low", "alpha_high", "th").
/// Does not validate; callers validate once all overrides are applied.
void set_param(DccParams& p, DualAlphaParams& d, std::string_view name, double value);

}  // namespace dcc
