#include "dcc/kernels.hpp"

#include <algorithm>
#include <exception>
#include <vector>

namespace dcc {

namespace {

// Block size of the deterministic reductions, and the station count below
// which the OpenMP paths stay on the calling thread.
constexpr std::size_t kBlock = 256;
constexpr std::ptrdiff_t kParallelThreshold = 2048;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double observe_one(double cbr_raw, double amplitude, std::uint64_t seed, std::uint64_t id,
                   std::uint64_t tick) {
  if (amplitude == 0.0) return cbr_raw;
  return std::clamp(cbr_raw + amplitude * noise_unit(seed, id, tick), 0.0, 1.0);
}

Moments block_moments(std::span<const StationState> s) {
  Moments m;
  if (s.empty()) return m;
  m.count = s.size();
  m.min = m.max = s.front().delta;
  for (const auto& st : s) {
    m.sum += st.delta;
    m.sum_sq += st.delta * st.delta;
    m.min = std::min(m.min, st.delta);
    m.max = std::max(m.max, st.delta);
  }
  return m;
}

}  // namespace

void Moments::merge(const Moments& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  count += other.count;
  sum += other.sum;
  sum_sq += other.sum_sq;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

double Moments::mean() const {
  if (min == max) return min;
  return std::clamp(sum / static_cast<double>(count), min, max);
}

double Moments::jain() const {
  if (min == max) return 1.0;
  return std::min(1.0, sum * sum / (static_cast<double>(count) * sum_sq));
}

double noise_unit(std::uint64_t seed, std::uint64_t station, std::uint64_t tick) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(station)) ^ tick);
  // 53 random bits scaled to [0,2), shifted to [-1,1).
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

namespace kernels {

Moments delta_moments(std::span<const StationState> stations) {
  const std::size_t n = stations.size();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(n) >= kParallelThreshold)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    partial[static_cast<std::size_t>(b)] =
        block_moments(stations.subspan(begin, std::min(kBlock, n - begin)));
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  return total;
}

double channel_load(std::span<const StationState> stations) {
  return delta_moments(stations).sum;
}

void observe(std::span<double> out, double cbr_raw, double amplitude, std::uint64_t seed,
             std::uint64_t first_id, std::uint64_t tick) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        observe_one(cbr_raw, amplitude, seed, first_id + static_cast<std::uint64_t>(i), tick);
  }
}

void step_stations(std::span<StationState> stations, std::span<const double> newest,
                   std::span<const double> older, const DccParams& p, const Variant& variant) {
  const auto n = static_cast<std::ptrdiff_t>(stations.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      stations[k] = step_station(stations[k], {newest[k], older[k]}, p, variant);
    } catch (...) {
#pragma omp critical(dcc_step_failure)
      if (!failure) failure = std::current_exception();
    }
  }

  if (failure) std::rethrow_exception(failure);
}

}  // namespace kernels

namespace reference {

Moments delta_moments(std::span<const StationState> stations) {
  return block_moments(stations);
}

double channel_load(std::span<const StationState> stations) {
  double sum = 0.0;
  for (const auto& s : stations) sum += s.delta;
  return sum;
}

void observe(std::span<double> out, double cbr_raw, double amplitude, std::uint64_t seed,
             std::uint64_t first_id, std::uint64_t tick) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = observe_one(cbr_raw, amplitude, seed, first_id + i, tick);
  }
}

void step_stations(std::span<StationState> stations, std::span<const double> newest,
                   std::span<const double> older, const DccParams& p, const Variant& variant) {
  for (std::size_t i = 0; i < stations.size(); ++i) {
    stations[i] = step_station(stations[i], {newest[i], older[i]}, p, variant);
  }
}

}  // namespace reference

}  // namespace dcc
