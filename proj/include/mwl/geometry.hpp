#pragma once

// Finite-scale geometry of sampled series: oscillation exponents, dyadic
// covers of iso-Holder sets and carrier sets, box-counting dimensions of
// graphs and ranges, and Riesz-type energies.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mwl/kernels.hpp"
#include "mwl/leaders.hpp"
#include "mwl/synthesis.hpp"
#include "mwl/thermo.hpp"

namespace mwl {

struct DyadicCover {
  int level = 0;
  std::vector<Word> words;  // distinct, increasing
  double q = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  double mass = std::numeric_limits<double>::quiet_NaN();  // captured measure, when known
  std::string fixture;

  bool empty() const { return words.empty(); }
};

/// Every word of length n.
DyadicCover full_cover(int n);

struct DimEstimate {
  double value = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  int j_lo = 0;
  int j_hi = 0;
  std::vector<int> scales;
  std::vector<double> counts;
  std::string method;
};

/// Slope of log2 sup_{s,t in B(x0, 2^-r)} |f(s) - f(t)| against -r over the given r.
ExponentEstimate oscillation_exponent(const SampledSeries& s, double x0, const std::vector<int>& radius_levels);

/// Exponent of each level-n word: least-squares slope of -log2 L[j][w|_j] over j = 1..n.
/// NaN where all leaders on the chain vanish.
std::vector<double> word_exponents(const LeaderPyramid& p, int n);

/// Words of length n whose exponent lies in [h - tol, h + tol].
DyadicCover iso_holder_cover(const LeaderPyramid& p, double h, double tol, int n);

/// Words w of length n admissible for the restricted measure with
///   |d_w| in [2^{-n(h+eps)}, 2^{-n(h-eps)}],
///   mu_q([w]) in [2^{-n(D+eps)}, 2^{-n(D-eps)}],
///   oscillation of the series over the neighbors of w <= c 2^{-n(h-eps)},
/// where h, D come from `ex` and c = oscillation_constant. `mass` is the
/// captured mu_q measure. Throws unless 0 < h < 1.
DyadicCover carrier_cover(const GibbsModel& restricted_q, const CoefficientTree& tree, const SampledSeries& s,
                          const RestrictedExponents& ex, double eps, int n, double oscillation_constant = 1.0);

/// Box counting over [j_lo, j_hi] (at least 4 scales inside [4, G - 2]).
DimEstimate graph_box_dimension(const SampledSeries& s, int j_lo, int j_hi, Backend backend = Backend::kParallel);
DimEstimate graph_box_dimension(const SampledSeries& s, const DyadicCover& cover, int j_lo, int j_hi,
                                Backend backend = Backend::kParallel);

DimEstimate range_box_dimension(const SampledSeries& s, int j_lo, int j_hi, Backend backend = Backend::kParallel);
DimEstimate range_box_dimension(const SampledSeries& s, const DyadicCover& cover, int j_lo, int j_hi,
                                Backend backend = Backend::kParallel);

struct EnergyReport {
  double gamma = 0.0;
  EnergyKernel kernel = EnergyKernel::kGraph;
  double energy = 0.0;
  bool finite = false;
  std::vector<double> shells;  // contribution by separation level
  double shell_slope = 0.0;    // log2 decay rate of shells over [3, n - 1]
  std::size_t points = 0;
  bool subsampled = false;
};

struct EnergyOptions {
  double budget = std::numeric_limits<double>::infinity();
  double max_pairs = 1e8;
  std::uint64_t seed = 0;
  Backend backend = Backend::kParallel;
};

/// Sum over ordered pairs of distinct cover words of w_a w_b K_gamma at the
/// cylinder midpoints. gamma > 1 uses the graph kernel, gamma < 1 the range
/// kernel; gamma = 1 throws "excluded exponent". `finite` requires a finite
/// energy within budget and shells that decay with the separation level.
EnergyReport riesz_energy(const SampledSeries& s, const DyadicCover& cover, const std::vector<double>& weights,
                          double gamma, const EnergyOptions& opt = {});

struct EnergyScan {
  EnergyKernel kernel = EnergyKernel::kGraph;
  double threshold = 0.0;  // largest gamma found finite
  bool bracketed = false;  // an infinite gamma was found above the threshold
  std::vector<EnergyReport> reports;
};

/// Scan gamma in steps of 0.05 over (1, 2] for the graph kernel or (0, 1) for
/// the range kernel, then refine by 0.01 above the last finite value.
EnergyScan energy_scan(const SampledSeries& s, const DyadicCover& cover, const std::vector<double>& weights,
                       EnergyKernel kernel, const EnergyOptions& opt = {});

}  // namespace mwl
