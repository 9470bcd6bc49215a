#pragma once

// Wavelet leaders, pointwise exponents and the leader scaling function.

#include <optional>
#include <vector>

#include "mwl/kernels.hpp"
#include "mwl/regression.hpp"
#include "mwl/spectrum.hpp"
#include "mwl/synthesis.hpp"

namespace mwl {

struct LeaderPyramid {
  int depth = 0;
  std::vector<std::vector<double>> leaders;  // L[j][k], j = 0..depth

  double at(int j, std::uint64_t k) const { return leaders[static_cast<std::size_t>(j)][k]; }
  /// L_j(x0): max of L[j][k] over the (up to) three k with x0 in [(k-1) 2^-j, (k+2) 2^-j).
  double around(int j, double x0) const;
};

LeaderPyramid leader_pyramid(const CoefficientTree& tree, bool use_perturbation,
                             Backend backend = Backend::kParallel);
LeaderPyramid leader_pyramid_from_levels(const std::vector<std::vector<double>>& abs_coeffs,
                                         Backend backend = Backend::kParallel);

struct ExponentEstimate {
  std::optional<double> value;  // empty: undefined (all leaders zero)
  LineFit fit;
};

/// Least-squares slope of -log2 L_j(x0) against j over [j_lo, j_hi].
ExponentEstimate pointwise_exponent(const LeaderPyramid& p, double x0, int j_lo, int j_hi);

struct ScalingEstimate {
  std::vector<double> q;
  std::vector<double> xi_hat;
  std::vector<double> stderr_slope;
  std::vector<double> r2;
  int j_lo = 0;
  int j_hi = 0;
};

/// Slope of -log2 sum_{k: L != 0} L[j][k]^q against j for each q, unweighted
/// over the usable levels of [j_lo, j_hi]; needs j_lo >= 3 and three usable levels.
ScalingEstimate scaling_function(const LeaderPyramid& p, const std::vector<double>& q_grid, int j_lo, int j_hi);

/// Legendre transform of the concavified estimate; negative values are
/// reported as empty level sets.
SpectrumCurve legendre_spectrum(const ScalingEstimate& est, const std::vector<double>& h_grid);

}  // namespace mwl
