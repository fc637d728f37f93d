#include "dcc/series_io.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include <json.hpp>

namespace dcc {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << "t,cbr_raw,cbr_s,jain";
  for (std::size_t g = 0; g < series.groups.size(); ++g) {
    out << ",g" << g << "_mean,g" << g << "_min,g" << g << "_max";
  }
  out << '\n';
  for (const auto& r : series.records) {
    out << format_double(r.t) << ',' << format_double(r.cbr_raw) << ','
        << format_double(r.cbr_s) << ',' << format_double(r.jain);
    for (const auto& g : r.groups) {
      if (g) {
        out << ',' << format_double(g->mean) << ',' << format_double(g->min) << ','
            << format_double(g->max);
      } else {
        out << ",,,";
      }
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const TimeSeries& series) {
  using nlohmann::json;
  const auto& p = series.params;
  json doc;
  doc["params"] = {{"alpha", p.alpha},         {"beta", p.beta},
                   {"cbr_target", p.cbr_target}, {"delta_max", p.delta_max},
                   {"delta_min", p.delta_min}, {"g_plus_max", p.g_plus_max},
                   {"g_minus_min", p.g_minus_min}};
  doc["algorithm"] = std::string(variant_name(series.variant));
  if (const auto* dual = std::get_if<DualAlpha>(&series.variant)) {
    doc["dual_alpha"] = {{"alpha_low", dual->params.alpha_low},
                         {"alpha_high", dual->params.alpha_high},
                         {"th", dual->params.th}};
  }
  doc["groups"] = json::array();
  for (const auto& g : series.groups) {
    doc["groups"].push_back(
        {{"count", g.count}, {"initial_delta", g.initial_delta}, {"join_time", g.join_time}});
  }
  auto& records = doc["records"] = json::array();
  for (const auto& r : series.records) {
    json groups = json::array();
    for (const auto& g : r.groups) {
      groups.push_back(g ? json{{"mean", g->mean}, {"min", g->min}, {"max", g->max}}
                         : json(nullptr));
    }
    records.push_back({{"t", r.t},
                       {"cbr_raw", r.cbr_raw},
                       {"cbr_s", r.cbr_s},
                       {"jain", r.jain},
                       {"groups", std::move(groups)}});
  }
  out << doc.dump() << '\n';
}

}  // namespace dcc
