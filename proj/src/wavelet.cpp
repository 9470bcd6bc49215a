#include "mwl/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mwl/error.hpp"

namespace mwl {
namespace {

double gauss2(double x) { return (1.0 - 4.0 * x * x) * std::exp(-2.0 * x * x); }
double gauss2_d(double x) { return std::exp(-2.0 * x * x) * (16.0 * x * x * x - 12.0 * x); }

constexpr double kBumpHalfWidth = 0.75;

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0; }

double sin_bump(double x) {
  const double u = (x - 0.5) / kBumpHalfWidth;
  return std::sin(2.0 * std::numbers::pi * x) * bump(u);
}

double sin_bump_d(double x) {
  const double u = (x - 0.5) / kBumpHalfWidth;
  if (std::abs(u) >= 1.0) return 0.0;
  const double b = bump(u);
  const double db = b * (-2.0 * u / ((1.0 - u * u) * (1.0 - u * u))) / kBumpHalfWidth;
  return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x) * b + std::sin(2.0 * std::numbers::pi * x) * db;
}

constexpr double kZeroTolerance = 1e-12;

}  // namespace

std::vector<double> daubechies_filter(int n) {
  const double s2 = std::numbers::sqrt2;
  switch (n) {
    case 2: {
      const double s3 = std::sqrt(3.0);
      const double c = 4.0 * s2;
      return {(1 + s3) / c, (3 + s3) / c, (3 - s3) / c, (1 - s3) / c};
    }
    case 3: {
      const double r = std::sqrt(10.0);
      const double t = std::sqrt(5.0 + 2.0 * r);
      const double c = 16.0 * s2;
      return {(1 + r + t) / c,         (5 + r + 3 * t) / c,     (10 - 2 * r + 2 * t) / c,
              (10 - 2 * r - 2 * t) / c, (5 + r - 3 * t) / c,     (1 + r - t) / c};
    }
    case 4:
      return {0.2303778133088964, 0.7148465705529154, 0.6308807679298587, -0.0279837694168599,
              -0.1870348117190931, 0.0308413818355607, 0.0328830116668852, -0.0105974017850690};
    default:
      throw Error("daubechies_filter: supported vanishing moments are 2, 3, 4");
  }
}

MotherWavelet MotherWavelet::builtin(const std::string& kind, int tabulation_depth) {
  MotherWavelet w;
  w.name_ = kind;
  if (kind == "gauss2") {
    w.f_ = gauss2;
    w.df_ = gauss2_d;
    w.lo_ = -5.0;
    w.hi_ = 5.0;
    w.r0_ = 8;
  } else if (kind == "sinBump") {
    w.f_ = sin_bump;
    w.df_ = sin_bump_d;
    w.lo_ = 0.5 - kBumpHalfWidth;
    w.hi_ = 0.5 + kBumpHalfWidth;
    w.r0_ = 8;
  } else if (kind.rfind("cascadeDb", 0) == 0 && kind.size() == 10) {
    const int n = kind[9] - '0';
    const auto h = daubechies_filter(n);
    if (tabulation_depth < 1 || tabulation_depth > 20) throw Error("tabulation depth must be in [1, 20]");
    const int len = static_cast<int>(h.size());
    const int t = tabulation_depth;

    // scaling function at the integers 1..len-2 (eigenvector for eigenvalue 1)
    std::vector<double> phi_int(static_cast<std::size_t>(len), 0.0);
    std::vector<double> next(phi_int.size());
    for (int i = 1; i <= len - 2; ++i) phi_int[static_cast<std::size_t>(i)] = 1.0 / (len - 2);
    for (int it = 0; it < 400; ++it) {
      double sum = 0.0;
      for (int i = 1; i <= len - 2; ++i) {
        double acc = 0.0;
        for (int k = 0; k < len; ++k) {
          const int j = 2 * i - k;
          if (j >= 1 && j <= len - 2) acc += h[static_cast<std::size_t>(k)] * phi_int[static_cast<std::size_t>(j)];
        }
        next[static_cast<std::size_t>(i)] = std::numbers::sqrt2 * acc;
        sum += next[static_cast<std::size_t>(i)];
      }
      for (int i = 1; i <= len - 2; ++i) phi_int[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(i)] / sum;
    }

    // refine one dyadic level at a time
    std::vector<double> phi = phi_int;
    for (int r = 1; r <= t; ++r) {
      const std::int64_t count = static_cast<std::int64_t>(len - 1) * (std::int64_t{1} << r) + 1;
      const std::int64_t half = std::int64_t{1} << (r - 1);
      std::vector<double> fine(static_cast<std::size_t>(count), 0.0);
      for (std::int64_t m = 0; m < count; ++m) {
        double acc = 0.0;
        for (int k = 0; k < len; ++k) {
          const std::int64_t j = m - k * half;
          if (j >= 0 && j < static_cast<std::int64_t>(phi.size())) acc += h[static_cast<std::size_t>(k)] * phi[static_cast<std::size_t>(j)];
        }
        fine[static_cast<std::size_t>(m)] = std::numbers::sqrt2 * acc;
      }
      phi = std::move(fine);
    }

    const std::int64_t count = static_cast<std::int64_t>(len - 1) * (std::int64_t{1} << t) + 1;
    const std::int64_t unit = std::int64_t{1} << t;
    w.table_.assign(static_cast<std::size_t>(count), 0.0);
    for (std::int64_t m = 0; m < count; ++m) {
      double acc = 0.0;
      for (int k = 0; k < len; ++k) {
        const double g = ((k % 2) ? -1.0 : 1.0) * h[static_cast<std::size_t>(len - 1 - k)];
        const std::int64_t j = 2 * m - k * unit;
        if (j >= 0 && j < count) acc += g * phi[static_cast<std::size_t>(j)];
      }
      w.table_[static_cast<std::size_t>(m)] = std::numbers::sqrt2 * acc;
    }
    w.tabulated_ = true;
    w.tab_depth_ = t;
    w.lo_ = 0.0;
    w.hi_ = len - 1;
    w.r0_ = n >= 4 ? 1 : 0;
  } else {
    throw Error("unknown wavelet kind: " + kind);
  }
  w.measure_bounds();
  return w;
}

MotherWavelet MotherWavelet::custom(std::string name, std::function<double(double)> f,
                                    std::function<double(double)> df, double lo, double hi, int r0) {
  if (!(hi > lo)) throw Error("custom wavelet: empty support window");
  MotherWavelet w;
  w.name_ = std::move(name);
  w.f_ = std::move(f);
  w.df_ = std::move(df);
  w.lo_ = lo;
  w.hi_ = hi;
  w.r0_ = r0;
  w.measure_bounds();
  return w;
}

void MotherWavelet::measure_bounds() {
  sup_abs_ = 0.0;
  lipschitz_ = 0.0;
  if (tabulated_) {
    const double step = std::ldexp(1.0, tab_depth_);
    for (std::size_t i = 0; i < table_.size(); ++i) {
      sup_abs_ = std::max(sup_abs_, std::abs(table_[i]));
      if (i > 0) lipschitz_ = std::max(lipschitz_, std::abs(table_[i] - table_[i - 1]) * step);
    }
    return;
  }
  constexpr int kSamples = 1 << 14;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = lo_ + (hi_ - lo_) * i / kSamples;
    sup_abs_ = std::max(sup_abs_, std::abs(f_(x)));
    if (df_) lipschitz_ = std::max(lipschitz_, std::abs(df_(x)));
  }
}

double MotherWavelet::operator()(double x) const {
  if (tabulated_) {
    const double scaled = std::ldexp(x, tab_depth_);
    if (scaled != std::floor(scaled)) throw Error("tabulated wavelet: off-grid evaluation at x = " + std::to_string(x));
    return at_dyadic(static_cast<std::int64_t>(scaled), tab_depth_);
  }
  if (x <= lo_ || x >= hi_) return 0.0;
  return f_(x);
}

double MotherWavelet::derivative(double x) const {
  if (tabulated_) throw Error("tabulated wavelet: derivative unavailable");
  if (x <= lo_ || x >= hi_ || !df_) return 0.0;
  return df_(x);
}

double MotherWavelet::at_dyadic(std::int64_t num, int depth) const {
  if (!tabulated_) return (*this)(std::ldexp(static_cast<double>(num), -depth));
  std::int64_t idx;
  if (depth > tab_depth_) {
    const std::int64_t step = std::int64_t{1} << (depth - tab_depth_);
    if (num % step != 0) throw Error("tabulated wavelet: resolution finer than tabulation");
    idx = num / step;
  } else {
    idx = num * (std::int64_t{1} << (tab_depth_ - depth));
  }
  if (idx < 0 || idx >= static_cast<std::int64_t>(table_.size())) return 0.0;
  return table_[static_cast<std::size_t>(idx)];
}

ZeroSet MotherWavelet::zero_set() const {
  if (!tabulated_) return isolate_zeros([this](double x) { return (*this)(x); }, 1 << 16, kZeroTolerance);
  const double unit = std::ldexp(1.0, tab_depth_);
  auto interp = [&](double x) {
    const double s = x * unit;
    const auto i = static_cast<std::size_t>(std::floor(s));
    if (i + 1 >= table_.size()) return table_.back();
    const double t = s - static_cast<double>(i);
    return (1.0 - t) * table_[i] + t * table_[i + 1];
  };
  return isolate_zeros(interp, 1 << tab_depth_, kZeroTolerance);
}

double zero_clearance(const MotherWavelet& psi, const Sft& x, int n_max) {
  const int k = x.depth();
  if (n_max < k) throw Error("zero_clearance: n_max must be at least the subshift depth");
  double best = std::numeric_limits<double>::infinity();
  for (int n = k; n <= n_max; ++n)
    for (const Word& w : enumerate_admissible(x, n))
      best = std::min(best, std::abs(psi.at_dyadic(static_cast<std::int64_t>(w.bits), n)));
  if (!(best > kZeroTolerance)) throw Error("subshift does not clear zeros");
  return best;
}

}  // namespace mwl
