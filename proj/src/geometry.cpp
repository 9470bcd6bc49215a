#include "mwl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwl/error.hpp"
#include "mwl/random.hpp"

namespace mwl {
namespace {

std::vector<char> cover_mask(const DyadicCover& cover, int grid_depth) {
  if (cover.level > grid_depth) throw Error("cover level exceeds grid depth");
  std::vector<char> mask(std::size_t{1} << grid_depth, 0);
  const std::size_t width = std::size_t{1} << (grid_depth - cover.level);
  for (const Word& w : cover.words) {
    if (w.length != cover.level) throw Error("cover word has the wrong length");
    std::fill_n(mask.begin() + static_cast<std::ptrdiff_t>(w.bits * width), width, char{1});
  }
  return mask;
}

void check_scales(const SampledSeries& s, int j_lo, int j_hi) {
  if (j_lo < 4 || j_hi > s.grid_depth - 2 || j_hi - j_lo + 1 < 4)
    throw Error("box dimension: need at least 4 scales inside [4, G - 2]");
}

enum class BoxKind { kGraph, kRange };

std::int64_t box_count(BoxKind kind, const SampledSeries& s, const std::vector<char>& mask, int j, Backend b) {
  if (kind == BoxKind::kGraph)
    return b == Backend::kSerial ? serial::graph_box_count(s.samples, mask, s.grid_depth, j)
                                 : omp::graph_box_count(s.samples, mask, s.grid_depth, j);
  return b == Backend::kSerial ? serial::range_box_count(s.samples, mask, s.grid_depth, j)
                               : omp::range_box_count(s.samples, mask, s.grid_depth, j);
}

DimEstimate fit_counts(std::vector<int> scales, std::vector<double> counts, const char* method) {
  if (scales.size() < 4) throw Error("box dimension: fewer than 4 usable scales");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    xs.push_back(scales[i]);
    ys.push_back(std::log2(counts[i]));
  }
  const LineFit f = fit_line(xs, ys);
  DimEstimate d;
  d.value = f.slope;
  d.stderr_slope = f.stderr_slope;
  d.r2 = f.r2;
  d.j_lo = scales.front();
  d.j_hi = scales.back();
  d.scales = std::move(scales);
  d.counts = std::move(counts);
  d.method = method;
  return d;
}

DimEstimate box_dimension(BoxKind kind, const SampledSeries& s, const DyadicCover& cover, int j_lo, int j_hi,
                          Backend b) {
  check_scales(s, j_lo, j_hi);
  if (cover.empty()) throw Error("box dimension: empty set");
  const auto mask = cover_mask(cover, s.grid_depth);
  std::vector<int> scales;
  std::vector<double> counts;
  for (int j = j_lo; j <= j_hi; ++j) {
    scales.push_back(j);
    counts.push_back(static_cast<double>(box_count(kind, s, mask, j, b)));
  }
  return fit_counts(std::move(scales), std::move(counts), kind == BoxKind::kGraph ? "boxGraph" : "boxRange");
}

}  // namespace

DyadicCover full_cover(int n) {
  DyadicCover c;
  c.level = n;
  c.words.reserve(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) c.words.emplace_back(k, n);
  return c;
}

ExponentEstimate oscillation_exponent(const SampledSeries& s, double x0, const std::vector<int>& radius_levels) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw Error("oscillation_exponent: x0 outside [0,1]");
  const double unit = std::ldexp(1.0, s.grid_depth);
  const auto last = static_cast<std::int64_t>(s.samples.size()) - 1;
  std::vector<double> xs, ys;
  for (int r : radius_levels) {
    if (r < 0 || r > s.grid_depth) throw Error("oscillation_exponent: radius below grid resolution");
    const double rho = std::ldexp(1.0, -r);
    const auto a = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((x0 - rho) * unit - 1e-9)));
    const auto b = std::min<std::int64_t>(last, static_cast<std::int64_t>(std::floor((x0 + rho) * unit + 1e-9)));
    double mn = s.samples[static_cast<std::size_t>(a)];
    double mx = mn;
    for (std::int64_t i = a; i <= b; ++i) {
      mn = std::min(mn, s.samples[static_cast<std::size_t>(i)]);
      mx = std::max(mx, s.samples[static_cast<std::size_t>(i)]);
    }
    if (mx - mn > 0.0) {
      xs.push_back(-r);
      ys.push_back(std::log2(mx - mn));
    }
  }
  ExponentEstimate e;
  if (xs.size() < 2) return e;
  e.fit = fit_line(xs, ys);
  e.value = e.fit.slope;
  return e;
}

std::vector<double> word_exponents(const LeaderPyramid& p, int n) {
  if (n < 2 || n > p.depth - 2) throw Error("word_exponents: level must lie in [2, depth - 2]");
  std::vector<double> out(std::size_t{1} << n, std::numeric_limits<double>::quiet_NaN());
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (count > 1024)
  for (std::int64_t k = 0; k < count; ++k) {
    std::vector<double> xs, ys;
    for (int j = 1; j <= n; ++j) {
      const double l = p.at(j, static_cast<std::uint64_t>(k) >> (n - j));
      if (l > 0.0) {
        xs.push_back(j);
        ys.push_back(-std::log2(l));
      }
    }
    if (xs.size() >= 2) out[static_cast<std::size_t>(k)] = fit_line(xs, ys).slope;
  }
  return out;
}

DyadicCover iso_holder_cover(const LeaderPyramid& p, double h, double tol, int n) {
  const auto ex = word_exponents(p, n);
  DyadicCover c;
  c.level = n;
  for (std::size_t k = 0; k < ex.size(); ++k)
    if (std::abs(ex[k] - h) <= tol) c.words.emplace_back(k, n);
  return c;
}

DyadicCover carrier_cover(const GibbsModel& restricted_q, const CoefficientTree& tree, const SampledSeries& s,
                          const RestrictedExponents& ex, double eps, int n, double oscillation_constant) {
  if (!(ex.h > 0.0 && ex.h < 1.0)) throw Error("carrier_cover: exponent outside (0, 1)");
  if (n > tree.depth || n > s.grid_depth) throw Error("carrier_cover: level exceeds tree or grid depth");
  DyadicCover c;
  c.level = n;
  c.q = ex.q;
  c.eps = eps;
  c.mass = 0.0;
  const double d_lo = std::exp2(-n * (ex.h + eps));
  const double d_hi = std::exp2(-n * (ex.h - eps));
  const double m_lo = -n * (ex.dim + eps) * std::numbers::ln2;
  const double m_hi = -n * (ex.dim - eps) * std::numbers::ln2;
  const double osc_cap = oscillation_constant * d_hi;
  const std::size_t width = std::size_t{1} << (s.grid_depth - n);
  const std::size_t words = std::size_t{1} << n;
  for (const Word& w : enumerate_admissible(restricted_q.sft(), n)) {
    const double d = tree.magnitude[static_cast<std::size_t>(n)][w.bits];
    if (d < d_lo || d > d_hi) continue;
    const double lm = restricted_q.log_cylinder(w);
    if (lm < m_lo || lm > m_hi) continue;
    const std::size_t a = (w.bits == 0 ? 0 : w.bits - 1) * width;
    const std::size_t b = std::min(w.bits + 2, words) * width;
    const auto [lo, hi] = std::minmax_element(s.samples.begin() + static_cast<std::ptrdiff_t>(a),
                                              s.samples.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    if (*hi - *lo > osc_cap) continue;
    c.words.push_back(w);
    c.mass += std::exp(lm);
  }
  return c;
}

DimEstimate graph_box_dimension(const SampledSeries& s, int j_lo, int j_hi, Backend backend) {
  return box_dimension(BoxKind::kGraph, s, full_cover(0), j_lo, j_hi, backend);
}
DimEstimate graph_box_dimension(const SampledSeries& s, const DyadicCover& cover, int j_lo, int j_hi,
                                Backend backend) {
  return box_dimension(BoxKind::kGraph, s, cover, j_lo, j_hi, backend);
}
DimEstimate range_box_dimension(const SampledSeries& s, int j_lo, int j_hi, Backend backend) {
  return box_dimension(BoxKind::kRange, s, full_cover(0), j_lo, j_hi, backend);
}
DimEstimate range_box_dimension(const SampledSeries& s, const DyadicCover& cover, int j_lo, int j_hi,
                                Backend backend) {
  return box_dimension(BoxKind::kRange, s, cover, j_lo, j_hi, backend);
}

EnergyReport riesz_energy(const SampledSeries& s, const DyadicCover& cover, const std::vector<double>& weights,
                          double gamma, const EnergyOptions& opt) {
  if (gamma == 1.0) throw Error("riesz_energy: excluded exponent gamma = 1");
  if (!(gamma > 0.0)) throw Error("riesz_energy: gamma must be positive");
  if (weights.size() != cover.words.size()) throw Error("riesz_energy: one weight per cover word required");
  const int n = cover.level;
  if (n < 1 || n >= s.grid_depth) throw Error("riesz_energy: cover level must lie in [1, G - 1]");

  std::vector<double> xs, fs, ws;
  const std::size_t half = std::size_t{1} << (s.grid_depth - n - 1);
  for (std::size_t i = 0; i < cover.words.size(); ++i) {
    const std::size_t idx = (2 * cover.words[i].bits + 1) * half;
    xs.push_back(s.x(idx));
    fs.push_back(s.samples[idx]);
    ws.push_back(weights[i]);
  }

  EnergyReport r;
  r.gamma = gamma;
  r.kernel = gamma > 1.0 ? EnergyKernel::kGraph : EnergyKernel::kRange;

  const double npts = static_cast<double>(xs.size());
  if (npts * (npts - 1.0) > opt.max_pairs) {
    // one representative per stratum of consecutive points, carrying the stratum's weight
    const auto strata = static_cast<std::size_t>(std::floor(std::sqrt(opt.max_pairs)));
    std::vector<double> sx, sf, sw;
    for (std::size_t t = 0; t < strata; ++t) {
      const std::size_t a = t * xs.size() / strata;
      const std::size_t b = (t + 1) * xs.size() / strata;
      if (a == b) continue;
      double wsum = 0.0;
      for (std::size_t i = a; i < b; ++i) wsum += ws[i];
      const double u = uniform_open(opt.seed, Word(t, 40), Stream::kSubsample);
      const std::size_t pick = a + std::min(b - a - 1, static_cast<std::size_t>(u * static_cast<double>(b - a)));
      sx.push_back(xs[pick]);
      sf.push_back(fs[pick]);
      sw.push_back(wsum);
    }
    xs = std::move(sx);
    fs = std::move(sf);
    ws = std::move(sw);
    r.subsampled = true;
  }
  r.points = xs.size();

  r.shells = opt.backend == Backend::kSerial ? serial::energy_shells(xs, fs, ws, n, r.kernel, gamma)
                                             : omp::energy_shells(xs, fs, ws, n, r.kernel, gamma);
  r.energy = 0.0;
  for (double v : r.shells) r.energy += v;

  std::vector<double> ps, ls;
  for (int p = 3; p <= n - 1; ++p) {
    const double v = r.shells[static_cast<std::size_t>(p)];
    if (v > 0.0 && std::isfinite(v)) {
      ps.push_back(p);
      ls.push_back(std::log2(v));
    }
  }
  r.shell_slope = ps.size() >= 3 ? fit_line(ps, ls).slope : std::numeric_limits<double>::quiet_NaN();
  r.finite = std::isfinite(r.energy) && r.energy <= opt.budget && !(r.shell_slope >= 0.0);
  return r;
}

EnergyScan energy_scan(const SampledSeries& s, const DyadicCover& cover, const std::vector<double>& weights,
                       EnergyKernel kernel, const EnergyOptions& opt) {
  EnergyScan scan;
  scan.kernel = kernel;
  const double lo = kernel == EnergyKernel::kGraph ? 1.0 : 0.0;
  const double top = kernel == EnergyKernel::kGraph ? 2.0 : 0.99;
  double last_finite = lo;
  bool found_infinite = false;
  for (int i = 1; i <= 20; ++i) {
    const double g = std::min(lo + 0.05 * i, top);
    if (kernel == EnergyKernel::kRange && g >= 1.0) break;
    EnergyReport r = riesz_energy(s, cover, weights, g, opt);
    const bool fin = r.finite;
    scan.reports.push_back(std::move(r));
    if (!fin) {
      found_infinite = true;
      break;
    }
    last_finite = g;
  }
  if (!found_infinite && kernel == EnergyKernel::kRange) {
    EnergyReport r = riesz_energy(s, cover, weights, top, opt);
    if (r.finite) last_finite = top;
    else found_infinite = true;
    scan.reports.push_back(std::move(r));
  }
  if (found_infinite) {
    for (int i = 1; i < 5; ++i) {
      const double g = last_finite + 0.01 * i;
      if (g == 1.0) continue;
      EnergyReport r = riesz_energy(s, cover, weights, g, opt);
      const bool fin = r.finite;
      scan.reports.push_back(std::move(r));
      if (!fin) break;
      last_finite = g;
    }
  }
  scan.threshold = last_finite;
  scan.bracketed = found_infinite;
  return scan;
}

}  // namespace mwl
