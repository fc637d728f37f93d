#include "dcc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcc/kernels.hpp"

namespace dcc {

namespace {

struct Block {
  std::size_t group;
  std::size_t begin;
  std::size_t end;
  long long activation_tick;
};

long long activation_tick(double join_time) {
  return static_cast<long long>(std::ceil(join_time / kTickSeconds - 1e-9));
}

void validate(std::span<const StationGroup> groups, const DccParams& p, const Variant& variant,
              double duration, const RunOptions& options) {
  p.validate();
  if (const auto* dual = std::get_if<DualAlpha>(&variant)) dual->params.validate();
  if (groups.empty()) throw ConfigError("scenario has no station groups");
  bool present_at_start = false;
  for (const auto& g : groups) {
    if (g.count == 0) throw ConfigError("station group with zero stations");
    if (!(g.initial_delta >= p.delta_min && g.initial_delta <= p.delta_max))
      throw ConfigError("initial delta outside [delta_min, delta_max]");
    if (!(g.join_time >= 0.0) || !std::isfinite(g.join_time))
      throw ConfigError("join time must be finite and >= 0");
    present_at_start = present_at_start || activation_tick(g.join_time) == 0;
  }
  if (!present_at_start) throw ConfigError("no station group is present at t = 0");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be > 0");
  if (std::llround(duration / kTickSeconds) < 1)
    throw ConfigError("duration shorter than one 0.1 s tick");
  if (!(options.noise_amplitude >= 0.0 && options.noise_amplitude <= 1.0))
    throw ConfigError("noise amplitude must be in [0, 1]");
}

// Dispatches to the OpenMP kernels or the serial reference.
struct Kernels {
  Execution execution;

  double channel_load(std::span<const StationState> s) const {
    return execution == Execution::Parallel ? kernels::channel_load(s)
                                            : reference::channel_load(s);
  }
  Moments delta_moments(std::span<const StationState> s) const {
    return execution == Execution::Parallel ? kernels::delta_moments(s)
                                            : reference::delta_moments(s);
  }
  void observe(std::span<double> out, double raw, const RunOptions& o, std::uint64_t tick) const {
    if (execution == Execution::Parallel)
      kernels::observe(out, raw, o.noise_amplitude, o.seed, 0, tick);
    else
      reference::observe(out, raw, o.noise_amplitude, o.seed, 0, tick);
  }
  void step(std::span<StationState> s, std::span<const double> newest,
            std::span<const double> older, const DccParams& p, const Variant& v) const {
    if (execution == Execution::Parallel)
      kernels::step_stations(s, newest, older, p, v);
    else
      reference::step_stations(s, newest, older, p, v);
  }
};

}  // namespace

std::size_t TimeSeries::index_at(double t) const {
  if (records.empty()) return 0;
  const long long i = std::llround(t / kTickSeconds);
  return static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(records.size()) - 1));
}

double measure_channel(std::span<const double> deltas) {
  return std::min(1.0, std::accumulate(deltas.begin(), deltas.end(), 0.0));
}

TimeSeries run(std::span<const StationGroup> groups, const DccParams& p, const Variant& variant,
               double duration, const RunOptions& options) {
  validate(groups, p, variant, duration, options);
  const Kernels k{options.execution};

  // Stations are laid out in activation order so the active set is a prefix.
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return activation_tick(groups[a].join_time) < activation_tick(groups[b].join_time);
  });

  std::vector<Block> blocks;
  std::vector<StationState> stations;
  for (std::size_t g : order) {
    const std::size_t begin = stations.size();
    stations.insert(stations.end(), groups[g].count,
                    StationState{groups[g].initial_delta, 0.0, false});
    blocks.push_back({g, begin, stations.size(), activation_tick(groups[g].join_time)});
  }
  const std::size_t total = stations.size();

  std::vector<double> newest(total), older(total);
  const long long ticks = std::llround(duration / kTickSeconds);

  TimeSeries series{p, variant, {groups.begin(), groups.end()}, {}};
  series.records.reserve(static_cast<std::size_t>(ticks) + 1);

  std::size_t active = 0;
  std::size_t joined_blocks = 0;
  double ref_smoothed = 0.0;
  bool ref_bootstrapped = false;
  double prev_raw = 0.0;

  for (long long i = 0; i <= ticks; ++i) {
    // Only stations that also measured the previous tick can step.
    const std::size_t seasoned = active;
    while (joined_blocks < blocks.size() && blocks[joined_blocks].activation_tick <= i) {
      active = blocks[joined_blocks].end;
      ++joined_blocks;
    }
    const std::span<StationState> live(stations.data(), active);

    const double raw = std::min(1.0, k.channel_load(live));
    std::swap(newest, older);
    k.observe(newest, raw, options, static_cast<std::uint64_t>(i));

    if (i >= kTicksPerStep && i % kTicksPerStep == 0) {
      ref_smoothed = ref_bootstrapped ? smooth_cbr(ref_smoothed, {raw, prev_raw})
                                      : (raw + prev_raw) / 2.0;
      ref_bootstrapped = true;
      k.step(live.first(seasoned), std::span<const double>(newest).first(seasoned),
             std::span<const double>(older).first(seasoned), p, variant);
    }

    TickRecord rec;
    rec.t = static_cast<double>(i) / 10.0;
    rec.cbr_raw = raw;
    rec.cbr_s = ref_bootstrapped ? ref_smoothed : raw;
    rec.groups.resize(groups.size());
    Moments all;
    for (std::size_t b = 0; b < joined_blocks; ++b) {
      const Moments m = k.delta_moments(
          std::span<const StationState>(stations).subspan(blocks[b].begin,
                                                          blocks[b].end - blocks[b].begin));
      rec.groups[blocks[b].group] = GroupStats{m.mean(), m.min, m.max};
      all.merge(m);
    }
    rec.jain = all.jain();
    series.records.push_back(std::move(rec));
    prev_raw = raw;
  }
  return series;
}

}  // namespace dcc
