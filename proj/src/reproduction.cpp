#include "dcc/reproduction.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>

#include "dcc/series_io.hpp"

namespace dcc::repro {

bool within(std::optional<double> measured, double reference, double tol) {
  // The small slack absorbs decimal representation of 0.1 s grid values.
  return measured && std::abs(*measured - reference) <= tol + 1e-9;
}

std::optional<double> ColdStartRow::ratio() const {
  if (!etsi || !dual || *etsi <= 0.0) return std::nullopt;
  return *dual / *etsi;
}

namespace {

// Runs body(i) for i in [0, n) across OpenMP threads; rethrows the first
// failure after the loop.
template <typename Body>
void parallel_rows(std::size_t n, Body body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(dcc_repro_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

TimeSeries run_with(ScenarioSpec spec, Algorithm algorithm, const EffectiveParams& params,
                    double duration) {
  spec.algorithm = algorithm;
  spec.duration = duration;
  return run_scenario(spec, params);
}

}  // namespace

std::vector<ColdStartRow> reproduce_cold_start(const EffectiveParams& params, double duration) {
  std::vector<ColdStartRow> rows;
  for (const auto& ref : kColdStartReference) rows.push_back({ref, {}, {}, {}, {}});

  parallel_rows(rows.size() * 2, [&](std::size_t job) {
    auto& row = rows[job / 2];
    const bool dual = job % 2 == 1;
    const auto series =
        run_with(cold_start_scenario(row.reference.stations, params.dcc),
                 dual ? Algorithm::DualAlpha : Algorithm::Etsi, params, duration);
    const auto raw = time_below_target(series, kBelowTarget, 0.0, CbrSignal::Raw);
    const auto smoothed = time_below_target(series, kBelowTarget, 0.0, CbrSignal::Smoothed);
    (dual ? row.dual : row.etsi) = raw;
    (dual ? row.dual_smoothed : row.etsi_smoothed) = smoothed;
  });
  return rows;
}

std::vector<MergeRow> reproduce_merge(const EffectiveParams& params, double duration) {
  std::vector<MergeRow> rows;
  for (const auto& ref : kMergeReference) {
    const auto merged = classify_convergence(
        static_cast<double>(kMergeSmallGroup + ref.stations), params.dcc);
    rows.push_back({ref, merged.delta_conv.value_or(0.0), {}, {}});
  }

  parallel_rows(rows.size() * 2, [&](std::size_t job) {
    auto& row = rows[job / 2];
    const bool dual = job % 2 == 1;
    const auto spec = merge_scenario(kMergeSmallGroup, row.reference.stations);
    const auto series =
        run_with(spec, dual ? Algorithm::DualAlpha : Algorithm::Etsi, params, duration);
    MergeMetricsConfig cfg;
    cfg.merge_time = merge_time(spec);
    cfg.group = designated_group(spec);
    cfg.center = row.center;
    cfg.target = kBelowTarget;
    (dual ? row.dual : row.etsi) = merge_metrics(series, cfg);
  });
  return rows;
}

std::vector<CurveSample> convergence_curves(const DccParams& p, std::span<const double> alphas,
                                            int k_min, int k_max) {
  std::vector<CurveSample> out;
  for (double alpha : alphas) {
    DccParams q = p;
    q.alpha = alpha;
    q.validate();
    for (int k = k_min; k <= k_max; ++k) {
      const auto kk = static_cast<double>(k);
      out.push_back({alpha, kk, classify_convergence(kk, q)});
    }
  }
  return out;
}

void write_curves_csv(std::ostream& out, const std::vector<CurveSample>& samples) {
  out << "alpha,k,predicted_cbr,kind\n";
  for (const auto& s : samples) {
    out << format_double(s.alpha) << ',' << format_double(s.stations) << ','
        << format_double(s.result.predicted_cbr) << ',' << to_string(s.result.kind) << '\n';
  }
}

// Reports --------------------------------------------------------------------

namespace {

std::string fmt_time(std::optional<double> t) {
  if (!t) return "n/r";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *t);
  return buf;
}

std::string fmt_num(double x, const char* spec) {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string fmt_diff(std::optional<double> measured, double reference, const char* spec) {
  if (!measured) return "-";
  return fmt_num(std::abs(*measured - reference), spec);
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// Tracks whether every row of a column misses in the same direction.
struct ColumnDrift {
  int above = 0;
  int below = 0;
  int rows = 0;

  void add(std::optional<double> measured, double reference, bool pass) {
    ++rows;
    if (pass || !measured) return;
    (*measured > reference ? above : below) += 1;
  }
  bool systematic() const { return rows > 0 && (above == rows || below == rows); }
};

void line(std::ostream& out, const std::string& s) { out << s << '\n'; }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

bool print_cold_start_report(std::ostream& out, const std::vector<ColdStartRow>& rows,
                             const Tolerances& tol) {
  bool all = true;
  ColumnDrift drift_etsi, drift_dual;
  line(out, "Cold start at delta_max: time until channel CBR < 0.68 (tolerance +/-" +
                fmt_num(tol.cold_start_time, "%.1f") + " s; ratio in [" +
                fmt_num(tol.ratio_min, "%.2f") + ", " + fmt_num(tol.ratio_max, "%.2f") + "])");
  line(out, pad("K", 6) + pad("algo", 6) + pad("ref", 8) + pad("measured", 10) +
                pad("|diff|", 8) + pad("cbr_s", 7) + "result");
  for (const auto& r : rows) {
    for (const bool dual : {false, true}) {
      const double ref = dual ? r.reference.dual : r.reference.etsi;
      const auto got = dual ? r.dual : r.etsi;
      const bool ok = within(got, ref, tol.cold_start_time);
      (dual ? drift_dual : drift_etsi).add(got, ref, ok);
      all = all && ok;
      line(out, pad(std::to_string(r.reference.stations), 6) + pad(dual ? "dual" : "etsi", 6) +
                    pad(fmt_num(ref, "%.1f"), 8) + pad(fmt_time(got), 10) +
                    pad(fmt_diff(got, ref, "%.1f"), 8) +
                    pad(fmt_time(dual ? r.dual_smoothed : r.etsi_smoothed), 7) + verdict(ok));
    }
    const auto ratio = r.ratio();
    const bool ratio_ok = ratio && *ratio >= tol.ratio_min && *ratio <= tol.ratio_max;
    all = all && ratio_ok;
    line(out, pad(std::to_string(r.reference.stations), 6) + pad("ratio", 6) +
                  pad(fmt_num(r.reference.dual / r.reference.etsi, "%.3f"), 8) +
                  pad(ratio ? fmt_num(*ratio, "%.3f") : "n/r", 10) + pad("", 15) +
                  verdict(ratio_ok));
  }
  if (drift_etsi.systematic() || drift_dual.systematic()) {
    line(out, "WARNING: every row misses in the same direction: channel-model discrepancy");
  }
  line(out, std::string("overall: ") + verdict(all));
  return all;
}

bool print_merge_report(std::ostream& out, const std::vector<MergeRow>& rows,
                        const Tolerances& tol) {
  bool all = true;
  // [variant][metric]
  ColumnDrift drift[2][3];
  line(out, "Merge of 25 converged stations with K converged stations (JI +/-" +
                fmt_num(tol.jain, "%.2f") + ", t_conv +/-" + fmt_num(tol.t_conv, "%.1f") +
                " s, <68 +/-" + fmt_num(tol.below, "%.1f") + " s)");
  line(out, pad("K", 6) + pad("algo", 6) + pad("metric", 8) + pad("ref", 8) +
                pad("measured", 10) + pad("|diff|", 8) + "result");
  for (const auto& r : rows) {
    for (const bool dual : {false, true}) {
      const auto& ref = dual ? r.reference.dual : r.reference.etsi;
      const auto& got = dual ? r.dual : r.etsi;
      struct Item {
        const char* name;
        std::optional<double> measured;
        double reference;
        double tol;
        bool is_time;
      };
      const Item items[3] = {
          {"JI-10s", got.jain_at, ref.jain, tol.jain, false},
          {"t_conv", got.t_conv, ref.t_conv, tol.t_conv, true},
          {"<68", got.t_below_target, ref.below, tol.below, true},
      };
      for (int m = 0; m < 3; ++m) {
        const auto& it = items[m];
        const bool ok = within(it.measured, it.reference, it.tol);
        drift[dual][m].add(it.measured, it.reference, ok);
        all = all && ok;
        const char* spec = it.is_time ? "%.1f" : "%.3f";
        line(out, pad(std::to_string(r.reference.stations), 6) + pad(dual ? "dual" : "etsi", 6) +
                      pad(it.name, 8) + pad(fmt_num(it.reference, spec), 8) +
                      pad(it.measured ? fmt_num(*it.measured, spec) : "n/r", 10) +
                      pad(fmt_diff(it.measured, it.reference, spec), 8) + verdict(ok));
      }
    }
  }
  const char* names[3] = {"JI-10s", "t_conv", "<68"};
  for (int v = 0; v < 2; ++v) {
    for (int m = 0; m < 3; ++m) {
      if (drift[v][m].systematic()) {
        line(out, std::string("WARNING: ") + (v ? "dual " : "etsi ") + names[m] +
                      " misses in the same direction on every row: channel-model discrepancy");
      }
    }
  }
  line(out, std::string("overall: ") + verdict(all));
  return all;
}

}  // namespace dcc::repro
