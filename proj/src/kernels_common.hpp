#pragma once

// Pieces shared by the serial and OpenMP kernels so both perform the same
// floating-point operations in the same order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mwl/error.hpp"
#include "mwl/kernels.hpp"

namespace mwl::detail {

// psi on the grid m 2^-e for m in [first, first + values.size())
struct LevelTable {
  std::int64_t first = 0;
  std::vector<double> values;
};

inline std::vector<LevelTable> level_tables(const MotherWavelet& psi, int grid_depth, int levels) {
  if (psi.tabulated() && grid_depth > psi.tabulation_depth())
    throw Error("tabulated wavelet: grid depth exceeds tabulation depth");
  std::vector<LevelTable> out(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    const int e = grid_depth - j;
    const double unit = std::ldexp(1.0, e);
    const auto lo = static_cast<std::int64_t>(std::ceil(psi.support_lo() * unit));
    const auto hi = static_cast<std::int64_t>(std::floor(psi.support_hi() * unit));
    LevelTable& t = out[static_cast<std::size_t>(j)];
    t.first = lo;
    t.values.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t m = lo; m <= hi; ++m) t.values[static_cast<std::size_t>(m - lo)] = psi.at_dyadic(m, e);
  }
  return out;
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline double sample_value(const std::vector<std::vector<double>>& coeffs, const std::vector<LevelTable>& tables,
                           int grid_depth, std::int64_t i) {
  CompensatedSum total;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const std::vector<double>& c = coeffs[j];
    const LevelTable& t = tables[j];
    const int e = grid_depth - static_cast<int>(j);
    const std::int64_t step = std::int64_t{1} << e;
    const std::int64_t last = t.first + static_cast<std::int64_t>(t.values.size()) - 1;
    // m = i - k step must lie in [first, last]
    std::int64_t k_lo = i - last;
    k_lo = k_lo <= 0 ? -((-k_lo) / step) : (k_lo + step - 1) / step;
    std::int64_t k_hi = i - t.first;
    k_hi = k_hi >= 0 ? k_hi / step : -((-k_hi + step - 1) / step);
    k_lo = std::max<std::int64_t>(k_lo, 0);
    k_hi = std::min<std::int64_t>(k_hi, static_cast<std::int64_t>(c.size()) - 1);
    CompensatedSum level;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const double ck = c[static_cast<std::size_t>(k)];
      if (ck != 0.0) level.add(ck * t.values[static_cast<std::size_t>(i - k * step - t.first)]);
    }
    total.add(level.value());
  }
  return total.value();
}

// Box index range [lo, hi] covered by the masked samples a..b (inclusive).
inline std::pair<std::int64_t, std::int64_t> value_boxes(const std::vector<double>& f, std::size_t a, std::size_t b,
                                                         double scale) {
  double mn = f[a];
  double mx = f[a];
  for (std::size_t s = a + 1; s <= b; ++s) {
    mn = std::min(mn, f[s]);
    mx = std::max(mx, f[s]);
  }
  return {static_cast<std::int64_t>(std::floor(mn * scale)), static_cast<std::int64_t>(std::floor(mx * scale))};
}

// Maximal runs [a, b] of set mask entries within [begin, end).
inline void mask_runs(const std::vector<char>& mask, std::size_t begin, std::size_t end,
                      std::vector<std::pair<std::size_t, std::size_t>>& runs) {
  runs.clear();
  std::size_t i = begin;
  while (i < end) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    std::size_t e = i;
    while (e + 1 < end && mask[e + 1]) ++e;
    runs.emplace_back(i, e);
    i = e + 1;
  }
}

inline std::int64_t union_length(std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
  if (ranges.empty()) return 0;
  std::sort(ranges.begin(), ranges.end());
  std::int64_t total = 0;
  std::int64_t lo = ranges[0].first;
  std::int64_t hi = ranges[0].second;
  for (std::size_t r = 1; r < ranges.size(); ++r) {
    if (ranges[r].first > hi) {
      total += hi - lo + 1;
      lo = ranges[r].first;
      hi = ranges[r].second;
    } else {
      hi = std::max(hi, ranges[r].second);
    }
  }
  return total + (hi - lo + 1);
}

// Boxes met by the graph inside one column of 2^(G-j) sample intervals.
inline std::int64_t column_boxes(const std::vector<double>& f, const std::vector<char>& mask, std::size_t begin,
                                 std::size_t end, double scale,
                                 std::vector<std::pair<std::size_t, std::size_t>>& runs,
                                 std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
  mask_runs(mask, begin, end, runs);
  ranges.clear();
  for (const auto& [a, b] : runs) ranges.push_back(value_boxes(f, a, b + 1, scale));
  return union_length(ranges);
}

inline void check_box_inputs(const std::vector<double>& f, const std::vector<char>& mask, int grid_depth, int j) {
  const std::size_t n = std::size_t{1} << grid_depth;
  if (f.size() != n + 1 || mask.size() != n) throw Error("box count: sample/mask size mismatch");
  if (j < 0 || j > grid_depth) throw Error("box count: scale outside grid");
}

// Row a of the energy double sum, split by separation level.
inline void energy_row(const std::vector<double>& x, const std::vector<double>& f, const std::vector<double>& w,
                       int level, EnergyKernel kind, double gamma, std::size_t a, double* shells) {
  const double unit = std::ldexp(1.0, level);
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (b == a) continue;
    const double dx = std::abs(x[a] - x[b]);
    const double dk = std::round(dx * unit);
    int p = level - static_cast<int>(std::ceil(std::log2(std::max(dk, 1.0)) - 1e-12));
    p = std::clamp(p, 0, level);
    shells[p] += w[a] * w[b] * energy_kernel(kind, gamma, dx, f[a] - f[b]);
  }
}

}  // namespace mwl::detail
