#include "mwl/leaders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwl/error.hpp"

namespace mwl {

double LeaderPyramid::around(int j, double x0) const {
  const auto n = static_cast<std::int64_t>(std::size_t{1} << j);
  auto k0 = static_cast<std::int64_t>(std::floor(std::ldexp(x0, j)));
  k0 = std::clamp<std::int64_t>(k0, 0, n - 1);
  double best = 0.0;
  for (std::int64_t k = std::max<std::int64_t>(k0 - 1, 0); k <= std::min(k0 + 1, n - 1); ++k)
    best = std::max(best, at(j, static_cast<std::uint64_t>(k)));
  return best;
}

LeaderPyramid leader_pyramid_from_levels(const std::vector<std::vector<double>>& abs_coeffs, Backend backend) {
  if (abs_coeffs.empty()) throw Error("leader_pyramid: no levels");
  LeaderPyramid p;
  p.depth = static_cast<int>(abs_coeffs.size()) - 1;
  p.leaders = backend == Backend::kSerial ? serial::leader_levels(abs_coeffs) : omp::leader_levels(abs_coeffs);
  return p;
}

LeaderPyramid leader_pyramid(const CoefficientTree& tree, bool use_perturbation, Backend backend) {
  return leader_pyramid_from_levels(tree.abs_levels(use_perturbation), backend);
}

ExponentEstimate pointwise_exponent(const LeaderPyramid& p, double x0, int j_lo, int j_hi) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw Error("pointwise_exponent: x0 outside [0,1]");
  if (j_lo < 0 || j_hi > p.depth || j_lo >= j_hi) throw Error("pointwise_exponent: bad scale range");
  std::vector<double> js, ys;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double l = p.around(j, x0);
    if (l > 0.0) {
      js.push_back(j);
      ys.push_back(-std::log2(l));
    }
  }
  ExponentEstimate e;
  if (js.size() < 2) return e;
  e.fit = fit_line(js, ys);
  e.value = e.fit.slope;
  return e;
}

ScalingEstimate scaling_function(const LeaderPyramid& p, const std::vector<double>& q_grid, int j_lo, int j_hi) {
  if (j_lo < 3 || j_hi > p.depth || j_lo >= j_hi) throw Error("scaling_function: scale range must lie in [3, depth]");
  ScalingEstimate est;
  est.q = q_grid;
  est.j_lo = j_lo;
  est.j_hi = j_hi;

  // log2 of the nonzero leaders, level by level
  std::vector<std::vector<double>> logs;
  std::vector<double> js;
  for (int j = j_lo; j <= j_hi; ++j) {
    std::vector<double> l;
    for (double v : p.leaders[static_cast<std::size_t>(j)])
      if (v > 0.0) l.push_back(std::log2(v));
    if (l.empty()) continue;
    logs.push_back(std::move(l));
    js.push_back(j);
  }
  if (js.size() < 3) throw Error("scaling_function: fewer than 3 usable levels");

  for (double q : q_grid) {
    std::vector<double> ys;
    for (const auto& l : logs) {
      double m = -std::numeric_limits<double>::infinity();
      for (double v : l) m = std::max(m, q * v);
      double s = 0.0;
      for (double v : l) s += std::exp2(q * v - m);
      ys.push_back(-(m + std::log2(s)));
    }
    const LineFit f = fit_line(js, ys);
    est.xi_hat.push_back(f.slope);
    est.stderr_slope.push_back(f.stderr_slope);
    est.r2.push_back(f.r2);
  }
  return est;
}

SpectrumCurve legendre_spectrum(const ScalingEstimate& est, const std::vector<double>& h_grid) {
  SpectrumCurve xi;
  xi.kind = CurveKind::kXi;
  xi.grid = est.q;
  xi.values = est.xi_hat;
  return legendre(concavify(xi), h_grid);
}

}  // namespace mwl
