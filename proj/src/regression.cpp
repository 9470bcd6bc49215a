#include "mwl/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mwl/error.hpp"

namespace mwl {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& weights) {
  const std::size_t n = x.size();
  if (n != y.size() || (!weights.empty() && weights.size() != n)) throw Error("fit_line: size mismatch");
  if (n < 2) throw Error("fit_line: need at least two points");
  auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w(i);
    sx += w(i) * x[i];
    sy += w(i) * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w(i) * (x[i] - mx) * (x[i] - mx);
    sxy += w(i) * (x[i] - mx) * (y[i] - my);
    syy += w(i) * (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error("fit_line: abscissae are all equal");
  LineFit f;
  f.points = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    sse += w(i) * r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.stderr_slope = n > 2 ? std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return f;
}

double weighted_median(std::vector<double> values, std::vector<double> weights) {
  if (values.empty()) throw Error("weighted_median: no values");
  if (weights.empty()) weights.assign(values.size(), 1.0);
  if (weights.size() != values.size()) throw Error("weighted_median: size mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error("weighted_median: weights sum to zero");
  double acc = 0.0;
  for (std::size_t i : order) {
    acc += weights[i];
    if (acc >= 0.5 * total) return values[i];
  }
  return values[order.back()];
}

}  // namespace mwl
