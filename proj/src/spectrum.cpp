#include "mwl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwl/error.hpp"

namespace mwl {

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kTau: return "tau";
    case CurveKind::kTauStar: return "tauStar";
    case CurveKind::kXi: return "xi";
    case CurveKind::kXiStar: return "xiStar";
    case CurveKind::kPressure: return "pressure";
  }
  return "unknown";
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw Error("uniform_grid: bad range");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

double concavity_defect(const SpectrumCurve& c) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < c.grid.size(); ++i) {
    const double s0 = (c.values[i] - c.values[i - 1]) / (c.grid[i] - c.grid[i - 1]);
    const double s1 = (c.values[i + 1] - c.values[i]) / (c.grid[i + 1] - c.grid[i]);
    // second difference normalized to a unit-spaced grid
    worst = std::max(worst, (s1 - s0) * 0.5 * (c.grid[i + 1] - c.grid[i - 1]));
  }
  return worst;
}

namespace {

bool is_kind_xi(CurveKind k) { return k == CurveKind::kXi || k == CurveKind::kXiStar; }

}  // namespace

SpectrumCurve legendre(const SpectrumCurve& curve, const std::vector<double>& alpha_grid,
                       double concavity_tol) {
  const auto& q = curve.grid;
  const auto& f = curve.values;
  if (q.size() < 3 || q.size() != f.size()) throw Error("legendre: need at least 3 grid points");
  for (std::size_t i = 1; i < q.size(); ++i)
    if (!(q[i] > q[i - 1])) throw Error("legendre: grid must be increasing");
  if (concavity_defect(curve) > concavity_tol) throw Error("legendre: input is not concave");

  SpectrumCurve out;
  out.kind = is_kind_xi(curve.kind) ? CurveKind::kXiStar : CurveKind::kTauStar;
  out.grid = alpha_grid;
  out.values.resize(alpha_grid.size());
  out.empty_level.assign(alpha_grid.size(), 0);
  out.flagged = curve.flagged;
  out.concavity_correction = curve.concavity_correction;

  const std::size_t n = q.size();
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    const double alpha = alpha_grid[a];
    auto g = [&](std::size_t i) { return q[i] * alpha - f[i]; };
    std::size_t best = 0;
    double best_val = g(0);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = g(i);
      const double tie = 1e-13 * std::max(1.0, std::abs(best_val));
      if (v < best_val - tie || (std::abs(v - best_val) <= tie && std::abs(q[i]) < std::abs(q[best]))) {
        best = i;
        best_val = v;
      }
    }
    double value = best_val;
    bool minus_inf = false;
    if (best == 0 && g(1) > g(0)) {
      minus_inf = true;
    } else if (best == n - 1 && g(n - 2) > g(n - 1)) {
      minus_inf = true;
    } else if (best > 0 && best < n - 1) {
      const double x0 = q[best - 1], x1 = q[best], x2 = q[best + 1];
      const double y0 = g(best - 1), y1 = g(best), y2 = g(best + 1);
      const double d01 = (y1 - y0) / (x1 - x0);
      const double d12 = (y2 - y1) / (x2 - x1);
      const double curv = (d12 - d01) / (x2 - x0);
      if (curv > 0.0) {
        // y = y1 + b (x - x1) + curv (x - x1)^2 around x1
        const double b = d01 + curv * (x1 - x0);
        const double shift = std::clamp(-b / (2.0 * curv), x0 - x1, x2 - x1);
        value = std::min(value, y1 + b * shift + curv * shift * shift);
      }
    }
    if (minus_inf) {
      out.values[a] = -std::numeric_limits<double>::infinity();
      out.empty_level[a] = 1;
    } else {
      out.values[a] = value;
      out.empty_level[a] = value < 0.0 ? 1 : 0;
    }
  }
  return out;
}

SpectrumCurve concavify(const SpectrumCurve& curve) {
  const auto& q = curve.grid;
  const auto& f = curve.values;
  const std::size_t n = q.size();
  SpectrumCurve out = curve;
  if (n < 3) return out;

  // Pool adjacent violators: slopes must be nonincreasing; weights are the
  // interval lengths so a pooled block keeps the chord between its ends.
  struct Block {
    double slope;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w = q[i + 1] - q[i];
    blocks.push_back({(f[i + 1] - f[i]) / w, w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].slope < blocks.back().slope) {
      Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      a.slope = (a.slope * a.weight + b.slope * b.weight) / (a.weight + b.weight);
      a.weight += b.weight;
      a.count += b.count;
    }
  }
  std::vector<double> g(n);
  g[0] = 0.0;
  std::size_t i = 0;
  for (const Block& b : blocks) {
    for (std::size_t c = 0; c < b.count; ++c, ++i) g[i + 1] = g[i] + b.slope * (q[i + 1] - q[i]);
  }
  double offset = 0.0;
  for (std::size_t k = 0; k < n; ++k) offset += f[k] - g[k];
  offset /= static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = g[k] + offset;
    worst = std::max(worst, std::abs(out.values[k] - f[k]));
  }
  out.concavity_correction = std::max(curve.concavity_correction, worst);
  out.flagged = curve.flagged || worst > 0.05;
  return out;
}

}  // namespace mwl
