#pragma once

// Mother wavelets evaluated pointwise (closed forms) or on a dyadic grid
// (cascade-tabulated Daubechies wavelets).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mwl/symbolic.hpp"

namespace mwl {

class MotherWavelet {
 public:
  /// gauss2, sinBump, cascadeDb2, cascadeDb3, cascadeDb4. Tabulated kinds are
  /// built at resolution 2^-tabulation_depth.
  static MotherWavelet builtin(const std::string& kind, int tabulation_depth = 14);
  /// Closed-form wavelet from callables; |psi| is treated as 0 outside [lo, hi].
  static MotherWavelet custom(std::string name, std::function<double(double)> f,
                              std::function<double(double)> df, double lo, double hi, int r0 = 1);

  const std::string& name() const { return name_; }
  int r0() const { return r0_; }
  bool tabulated() const { return tabulated_; }
  int tabulation_depth() const { return tab_depth_; }
  /// psi vanishes (or is below 1e-18) outside this window.
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double sup_abs() const { return sup_abs_; }
  /// max |psi'| over the support window.
  double lipschitz() const { return lipschitz_; }

  /// Pointwise value. Throws "tabulated wavelet" off the tabulation grid.
  double operator()(double x) const;
  double derivative(double x) const;
  /// psi(num / 2^depth), exact grid lookup for tabulated kinds.
  double at_dyadic(std::int64_t num, int depth) const;

  /// Zeros on [0, 1]; tabulated kinds use linear interpolation between samples.
  ZeroSet zero_set() const;

 private:
  MotherWavelet() = default;
  void measure_bounds();

  std::string name_;
  int r0_ = 1;
  bool tabulated_ = false;
  int tab_depth_ = 0;
  double lo_ = 0.0, hi_ = 0.0;
  double sup_abs_ = 0.0, lipschitz_ = 0.0;
  std::function<double(double)> f_, df_;
  std::vector<double> table_;  // psi(lo + i 2^-tab_depth)
};

/// Orthonormal Daubechies low-pass filter with n vanishing moments (n = 2, 3, 4).
std::vector<double> daubechies_filter(int n);

/// c_{psi,k}: min |psi(lambda(sigma^m(w)|_n))| over admissible words of X of
/// length up to n_max and all shifts m with |sigma^m w| >= 1. Throws
/// "subshift does not clear zeros" when the minimum is not positive.
double zero_clearance(const MotherWavelet& psi, const Sft& x, int n_max);

}  // namespace mwl
