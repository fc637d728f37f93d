#pragma once

#include <iosfwd>
#include <string>

#include "dcc/engine.hpp"

namespace dcc {

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

/// Header `t,cbr_raw,cbr_s,jain,g0_mean,g0_min,g0_max[,g1_mean,...]`, one
/// row per tick. Group columns are empty before the group joins.
void write_csv(std::ostream& out, const TimeSeries& series);

/// {"params": {...}, "algorithm": ..., "groups": [...], "records": [...]}.
/// Group stats are null before the group joins.
void write_json(std::ostream& out, const TimeSeries& series);

}  // namespace dcc
