#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dcc/analysis.hpp"
#include "dcc/metrics.hpp"
#include "dcc/scenario.hpp"

namespace dcc::repro {

// Published reference values for the cold-start and merge experiments, and
// the tolerances each measured value is judged against.

inline constexpr std::array<std::size_t, 6> kTableStations{100, 300, 500, 700, 900, 1100};

struct ColdStartReference {
  std::size_t stations;
  double etsi;  // seconds until channel CBR < 0.68
  double dual;
};

inline constexpr std::array<ColdStartReference, 6> kColdStartReference{{
    {100, 9.4, 2.4},
    {300, 11.8, 3.8},
    {500, 12.4, 4.2},
    {700, 12.6, 4.4},
    {900, 12.8, 4.4},
    {1100, 13.0, 4.6},
}};

struct MergeCell {
  double jain;    // JI 10 s after merge
  double t_conv;  // seconds
  double below;   // seconds until CBR < 0.68
};

struct MergeReference {
  std::size_t stations;
  MergeCell etsi;
  MergeCell dual;
};

inline constexpr std::array<MergeReference, 6> kMergeReference{{
    {100, {0.86, 19.4, 2.0}, {0.998, 6.0, 0.6}},
    {300, {0.53, 22.2, 1.0}, {0.994, 3.8, 0.6}},
    {500, {0.39, 22.4, 1.2}, {0.988, 3.4, 0.4}},
    {700, {0.34, 20.6, 4.6}, {0.980, 3.4, 1.0}},
    {900, {0.39, 16.0, 8.4}, {0.974, 3.0, 2.0}},
    {1100, {0.70, 0.0, 17.8}, {1.0, 0.0, 4.8}},
}};

inline constexpr std::size_t kMergeSmallGroup = 25;

struct Tolerances {
  double cold_start_time = 0.6;
  double ratio_min = 0.20;
  double ratio_max = 0.40;
  double jain = 0.03;
  double t_conv = 1.0;
  double below = 0.6;
};

inline constexpr double kBelowTarget = 0.68;

/// |measured - reference| <= tol; a missing measurement never passes.
bool within(std::optional<double> measured, double reference, double tol);

// Cold start -----------------------------------------------------------------

struct ColdStartRow {
  ColdStartReference reference;
  std::optional<double> etsi;  // raw channel CBR crossing
  std::optional<double> dual;
  std::optional<double> etsi_smoothed;  // CBR_s crossing, informational
  std::optional<double> dual_smoothed;

  std::optional<double> ratio() const;
};

std::vector<ColdStartRow> reproduce_cold_start(const EffectiveParams& params = {},
                                               double duration = 40.0);

// Merge ----------------------------------------------------------------------

struct MergeRow {
  MergeReference reference;
  double center = 0.0;  // merged-group convergence delta
  MergeMetrics etsi;
  MergeMetrics dual;
};

/// merge_scenario(25, K) per row under both variants.
std::vector<MergeRow> reproduce_merge(const EffectiveParams& params = {},
                                      double duration = 40.0);

// Convergence curve ------------------------------------------------------------

struct CurveSample {
  double alpha;
  double stations;
  ConvergenceResult result;
};

/// Predicted steady-state CBR for each alpha over K = k_min..k_max (step 1).
std::vector<CurveSample> convergence_curves(const DccParams& p, std::span<const double> alphas,
                                            int k_min = 1, int k_max = 1400);

// Reports --------------------------------------------------------------------

/// Prints the table and returns true iff every criterion passes.
bool print_cold_start_report(std::ostream& out, const std::vector<ColdStartRow>& rows,
                             const Tolerances& tol = {});
bool print_merge_report(std::ostream& out, const std::vector<MergeRow>& rows,
                        const Tolerances& tol = {});

/// CSV `alpha,k,predicted_cbr,kind`.
void write_curves_csv(std::ostream& out, const std::vector<CurveSample>& samples);

}  // namespace dcc::repro
