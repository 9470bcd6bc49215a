#pragma once

// Coefficient trees d_w = +-2^{-|w|(s0 - 1/p0)} mu([w])^{1/p0}, their random
// multiplicative perturbation, and evaluation of the wavelet series on a
// dyadic grid.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mwl/kernels.hpp"
#include "mwl/random.hpp"
#include "mwl/thermo.hpp"
#include "mwl/wavelet.hpp"

namespace mwl {

enum class SignRule { kAllPlus, kRademacher };

SignRule parse_sign_rule(const std::string& name);
std::string to_string(SignRule rule);

struct CoefficientTree {
  int depth = 0;  // levels 0..depth
  double s0 = 0.0;
  double p0 = 0.0;
  std::uint64_t seed = 0;
  SignRule sign_rule = SignRule::kRademacher;
  std::vector<std::vector<double>> magnitude;     // |d_w| by level and dyadic index
  std::vector<std::vector<signed char>> sign;     // +1 / -1
  std::vector<std::vector<double>> perturbation;  // pi_w; empty when unperturbed
  PerturbationLaw law{PerturbationLaw::Kind::kNone};

  bool perturbed() const { return !perturbation.empty(); }
  /// Signed coefficient pi_w d_w (pi_w = 1 when unperturbed or not requested).
  double coefficient(int j, std::uint64_t k, bool use_perturbation = true) const;
  /// All signed coefficients, level by level.
  std::vector<std::vector<double>> levels(bool use_perturbation = true) const;
  /// |pi_w d_w| level by level.
  std::vector<std::vector<double>> abs_levels(bool use_perturbation = true) const;
};

/// Magnitudes from the Gibbs cylinders of gm (0 off the subshift) and signs by rule.
CoefficientTree build_coefficients(const GibbsModel& gm, double s0, double p0, int depth, SignRule rule,
                                   std::uint64_t seed);

/// Copy of the tree with pi_w drawn from `law`, keyed by (seed, w).
CoefficientTree perturb(const CoefficientTree& tree, const PerturbationLaw& law, std::uint64_t seed);

/// a * c1 + c2, level by level.
std::vector<std::vector<double>> combine_levels(double a, const std::vector<std::vector<double>>& c1,
                                                const std::vector<std::vector<double>>& c2);

struct SampledSeries {
  int grid_depth = 0;
  int truncation_depth = 0;
  std::uint64_t seed = 0;
  std::string wavelet;
  std::string fixture;
  double tail_bound = 0.0;
  std::vector<double> samples;  // f(i 2^-G), i = 0..2^G

  double x(std::size_t i) const;
};

/// Sum over levels 0..J of the tree on the grid i 2^-G.
SampledSeries synthesize(const CoefficientTree& tree, const MotherWavelet& psi, int grid_depth,
                         bool use_perturbation = true, Backend backend = Backend::kParallel);
/// Same from raw signed coefficient levels (no tail bound).
SampledSeries synthesize_levels(const std::vector<std::vector<double>>& coeffs, const MotherWavelet& psi,
                                int grid_depth, Backend backend = Backend::kParallel);

/// sum_{j > J} 2^{-j(s0 - 1/p0)} (overlap count) sup|psi| sup pi.
double truncation_tail_bound(const CoefficientTree& tree, const MotherWavelet& psi);

/// "MWL1" | u32 grid depth | u32 truncation depth | u64 seed | u64 count | f64 samples, little endian.
void write_series_binary(std::ostream& out, const SampledSeries& s);
SampledSeries read_series_binary(std::istream& in);
/// Header `x,value`, one row per sample.
void write_series_csv(std::ostream& out, const SampledSeries& s, std::size_t stride = 1);

}  // namespace mwl
