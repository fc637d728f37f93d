#include "dcc/params.hpp"

#include <cmath>

namespace dcc {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void DccParams::validate() const {
  require(finite(alpha) && finite(beta) && finite(cbr_target) && finite(delta_max) &&
              finite(delta_min) && finite(g_plus_max) && finite(g_minus_min),
          "DCC parameters must be finite");
  require(0.0 < delta_min && delta_min < delta_max && delta_max <= 1.0,
          "require 0 < delta_min < delta_max <= 1");
  require(g_minus_min < 0.0 && 0.0 < g_plus_max, "require g_minus_min < 0 < g_plus_max");
  require(0.0 < cbr_target && cbr_target <= 1.0, "require 0 < cbr_target <= 1");
  require(0.0 < alpha && alpha < 1.0, "require 0 < alpha < 1");
  require(beta > 0.0, "require beta > 0");
}

void DualAlphaParams::validate() const {
  require(finite(alpha_low) && finite(alpha_high) && finite(th),
          "Dual-alpha parameters must be finite");
  require(0.0 < alpha_low && alpha_low < alpha_high && alpha_high < 1.0,
          "require 0 < alpha_low < alpha_high < 1");
  require(th >= 0.0, "require th >= 0");
}

std::string_view variant_name(const Variant& v) {
  return std::holds_alternative<Etsi>(v) ? "etsi" : "dual";
}

Variant parse_variant(std::string_view name, const DualAlphaParams& dual) {
  if (name == "etsi") return Etsi{};
  if (name == "dual") return DualAlpha{dual};
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected etsi|dual)");
}

void set_param(DccParams& p, DualAlphaParams& d, std::string_view name, double value) {
  if (name == "alpha") p.alpha = value;
  else if (name == "beta") p.beta = value;
  else if (name == "cbr_target") p.cbr_target = value;
  else if (name == "delta_max") p.delta_max = value;
  else if (name == "delta_min") p.delta_min = value;
  else if (name == "g_plus_max") p.g_plus_max = value;
  else if (name == "g_minus_min") p.g_minus_min = value;
  else if (name == "alpha_low") d.alpha_low = value;
  else if (name == "alpha_high") d.alpha_high = value;
  else if (name == "th") d.th = value;
  else throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

}  // namespace dcc
