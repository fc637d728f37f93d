// Acceptance runner: one PASS/FAIL line per criterion, detail above.
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcc/analysis.hpp"
#include "dcc/engine.hpp"
#include "dcc/reproduction.hpp"
#include "properties.hpp"

using namespace dcc;

namespace {

struct Verdict {
  int id;
  bool pass;
  std::string summary;
};

Verdict cold_start() {
  const auto rows = repro::reproduce_cold_start();
  std::ostringstream detail;
  const bool pass = repro::print_cold_start_report(detail, rows);
  std::cout << detail.str() << '\n';

  int smoothed_ok = 0;
  for (const auto& r : rows) {
    smoothed_ok += repro::within(r.etsi_smoothed, r.reference.etsi, 0.6);
    smoothed_ok += repro::within(r.dual_smoothed, r.reference.dual, 0.6);
  }
  return {1, pass,
          "cold-start time to CBR < 0.68 (channel CBR) within 0.6 s and ratio in [0.20, 0.40]; "
          "CBR_s crossing within 0.6 s on " +
              std::to_string(smoothed_ok) + "/12"};
}

Verdict merge(std::vector<repro::MergeRow>& rows) {
  rows = repro::reproduce_merge();
  std::ostringstream detail;
  const bool pass = repro::print_merge_report(detail, rows);
  std::cout << detail.str() << '\n';

  int failed = 0;
  for (const auto& r : rows) {
    for (const bool dual : {false, true}) {
      const auto& got = dual ? r.dual : r.etsi;
      const auto& ref = dual ? r.reference.dual : r.reference.etsi;
      failed += !repro::within(got.jain_at, ref.jain, 0.03);
      failed += !repro::within(got.t_conv, ref.t_conv, 1.0);
      failed += !repro::within(got.t_below_target, ref.below, 0.6);
    }
  }
  return {2, pass, "merge 25+K: JI-10s, t_conv, <68 within tolerance; " +
                       std::to_string(failed) + "/36 cells out of tolerance"};
}

Verdict oracle() {
  const DccParams p;
  const std::size_t ks[] = {25, 100, 300, 500, 700, 900, 1100};
  bool pass = true;
  double worst = 0.0;
  std::cout << "Steady state after 60 s vs closed form\n";
  for (const auto k : ks) {
    const auto expected = classify_convergence(static_cast<double>(k), p);
    const std::vector<StationGroup> g{{k, p.delta_max, 0.0}};
    const auto s = run(g, p, Etsi{}, 60.0);
    const std::size_t from = s.index_at(55.0);
    double sum = 0.0;
    for (std::size_t i = from; i < s.records.size(); ++i) sum += s.records[i].groups[0]->mean;
    const double mean = sum / static_cast<double>(s.records.size() - from);
    const double rel = expected.delta_conv ? std::abs(mean - *expected.delta_conv) / *expected.delta_conv
                                           : INFINITY;
    worst = std::max(worst, rel);
    pass = pass && rel <= 0.01;
    std::printf("K=%-5zu simulated %.6g  closed form %.6g  rel %.2e\n", k, mean,
                expected.delta_conv.value_or(NAN), rel);
  }
  std::cout << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  return {3, pass, std::string("steady-state delta within 1% of delta_conv; worst rel ") + buf};
}

Verdict curves() {
  const DccParams p;
  const double cap = capacity_threshold(p);
  bool dominance = true, below_target = true, clamped = true, overload = true;
  int first_miss = 0, last_miss = 0;
  for (int k = 1; k <= 1400; ++k) {
    const double kd = k;
    DccParams fast = p;
    fast.alpha = 0.1;
    const auto slow_r = classify_convergence(kd, p);
    const auto fast_r = classify_convergence(kd, fast);
    if (slow_r.kind == ConvergenceKind::Interior && fast_r.kind == ConvergenceKind::Interior) {
      dominance = dominance && slow_r.predicted_cbr >= fast_r.predicted_cbr;
    }
    for (const auto* r : {&slow_r, &fast_r}) {
      if (r->kind == ConvergenceKind::Interior)
        below_target = below_target && r->predicted_cbr <= p.cbr_target;
    }
    if (kd > cap) {
      clamped = clamped && slow_r.predicted_cbr == std::min(1.0, kd * p.delta_min);
      if (!(slow_r.predicted_cbr > 0.68)) {
        overload = false;
        if (first_miss == 0) first_miss = k;
        last_miss = k;
      }
    }
  }
  const double at_1200 = classify_convergence(1200, p).predicted_cbr;
  const bool pass =
      dominance && below_target && clamped && overload && std::abs(at_1200 - 0.72) < 1e-12;
  std::printf("Predicted CBR curves, K = 1..1400, capacity_threshold = %.6g\n", cap);
  std::printf("alpha=0.016 >= alpha=0.1 where both interior: %s\n", dominance ? "yes" : "no");
  std::printf("interior curves <= CBR target:               %s\n", below_target ? "yes" : "no");
  std::printf("alpha=0.016 equals K*delta_min past threshold: %s\n", clamped ? "yes" : "no");
  std::printf("alpha=0.016 above 0.68 past threshold:         %s\n", overload ? "yes" : "no");
  if (first_miss != 0)
    std::printf("  not above 0.68 for K = %d..%d (K*delta_min = %.4g..%.4g)\n", first_miss,
                last_miss, first_miss * p.delta_min, last_miss * p.delta_min);
  std::printf("K = 1200: %.17g\n\n", at_1200);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "dominance %s, interior <= target %s, clamped past %.6g %s, above 0.68 past it %s, "
                "K=1200 -> %.4g",
                dominance ? "ok" : "no", below_target ? "ok" : "no", cap, clamped ? "ok" : "no",
                overload ? "ok" : "no", at_1200);
  return {4, pass, buf};
}

Verdict properties() {
  struct Named {
    const char* name;
    props::Result r;
  };
  const Named all[] = {
      {"delta clamping", props::delta_clamping()},
      {"offset bounds", props::offset_bounds()},
      {"update monotone", props::update_monotone()},
      {"smoothing convexity", props::smoothing_convexity()},
      {"Jain scale invariance", props::jain_scale_invariance()},
      {"homogeneous symmetry", props::homogeneous_symmetry()},
      {"dual == etsi(alpha_low) under th", props::dual_alpha_reduces_to_etsi()},
      {"fixed-seed replay", props::replay_identical()},
  };
  bool pass = true;
  int total = 0;
  std::cout << "Randomized properties\n";
  for (const auto& n : all) {
    const bool ok = n.r.ok() && n.r.cases >= 1000;
    pass = pass && ok;
    total += n.r.cases;
    std::printf("%-34s %5d cases  %d failures  %s\n", n.name, n.r.cases, n.r.failures,
                ok ? "PASS" : "FAIL");
    if (!n.r.first_failure.empty()) std::cout << "  first: " << n.r.first_failure << '\n';
  }
  std::cout << '\n';
  return {5, pass, std::to_string(std::size(all)) + " properties, " + std::to_string(total) +
                       " randomized cases"};
}

Verdict dominance(const std::vector<repro::MergeRow>& rows) {
  bool pass = !rows.empty();
  std::string worst;
  double margin = INFINITY;
  for (const auto& r : rows) {
    const double d = r.dual.jain_at - r.etsi.jain_at;
    pass = pass && d >= 0;
    if (d < margin) {
      margin = d;
      worst = std::to_string(r.reference.stations);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "dual JI-10s >= etsi JI-10s for every K; smallest margin %.3f at K=%s",
                margin, worst.c_str());
  return {6, pass, buf};
}

}  // namespace

int main() {
  std::vector<repro::MergeRow> merge_rows;
  std::vector<Verdict> verdicts;
  verdicts.push_back(cold_start());
  verdicts.push_back(merge(merge_rows));
  verdicts.push_back(oracle());
  verdicts.push_back(curves());
  verdicts.push_back(properties());
  verdicts.push_back(dominance(merge_rows));

  bool all = true;
  for (const auto& v : verdicts) {
    std::cout << "criterion " << v.id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.summary
              << '\n';
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
