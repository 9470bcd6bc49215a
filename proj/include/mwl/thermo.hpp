#pragma once

// Thermodynamic formalism for locally constant potentials on binary
// subshifts of finite type: pressure, Gibbs cylinder measures, the L^q
// spectrum tau and the exponents of measures restricted to a subshift.

#include <optional>
#include <utility>
#include <vector>

#include "mwl/spectrum.hpp"
#include "mwl/symbolic.hpp"

namespace mwl {

/// phi(t) = values[t|_m]: depends on the first `range` symbols only.
struct Potential {
  int range = 1;
  std::vector<double> values;  // indexed by the bits of a length-range word

  static Potential constant(double c);
  /// phi(0...) = log p, phi(1...) = log(1 - p).
  static Potential bernoulli(double p);
  static Potential table(int range, std::vector<double> values);

  double operator()(std::uint64_t window) const { return values[window]; }
  /// All values equal.
  bool degenerate() const;
};

/// Sum of phi over the |w| - m + 1 windows of w.
double birkhoff_sum(const Potential& phi, Word w);

/// Equilibrium state of q*phi on a transitive Sft, represented as a Markov
/// chain on words of length d = max(m, k - 1).
class GibbsModel {
 public:
  GibbsModel(const Sft& x, const Potential& phi, double q);

  const Sft& sft() const { return sft_; }
  const Potential& potential() const { return phi_; }
  double q() const { return q_; }
  /// P_X(q phi) in nats.
  double pressure() const { return log_lambda_; }
  int state_depth() const { return d_; }
  std::size_t state_count() const { return std::size_t{1} << d_; }

  /// log mu([w]); -infinity for inadmissible words. Words shorter than the
  /// state depth are summed over the stationary law of their extensions.
  double log_cylinder(Word w) const;
  double cylinder(Word w) const;

  /// E_mu[phi], which equals dP(q phi)/dq.
  double expectation() const;

  /// Stationary law and right Perron vector on lifted states (0 off the chain).
  const std::vector<double>& stationary() const { return pi_; }
  const std::vector<double>& right() const { return right_; }
  /// One-step transition probability of the chain.
  double step_probability(std::uint64_t from, int symbol) const;

 private:
  bool lifted_edge(std::uint64_t s, int b) const;

  Sft sft_;
  Potential phi_;
  double q_;
  int d_;
  double log_lambda_ = 0.0;
  std::vector<char> state_ok_;
  std::vector<double> right_, left_, pi_;
  std::vector<double> log_right_, log_pi_;
};

/// Largest max(r, 1/r) over admissible words w with 1 <= |w| <= level, where
/// r = mu([w]) / exp(q S phi(w) - |w| P). Always >= 1.
double gibbs_constant(const GibbsModel& gm, int level);

/// Largest max(r, 1/r) with r = mu([wu]) / (mu([w]) mu([u])) over admissible
/// w, u of lengths 1..half_level with wu admissible.
double quasi_bernoulli_constant(const GibbsModel& gm, int half_level);

/// P_X(q phi) in nats; for a non-transitive Sft the maximum over its
/// transitive components.
double pressure(const Sft& x, const Potential& phi, double q);

/// (1/n) log sum over admissible w of length n of exp(max over admissible
/// completions t of q S_n phi(t)). Brute force, n <= 22.
double pressure_oracle(const Sft& x, const Potential& phi, double q, int n);

/// tau(q) = (q P(phi) - P(q phi)) / log 2.
double tau_value(const Sft& x, const Potential& phi, double q);
SpectrumCurve tau(const Sft& x, const Potential& phi, const std::vector<double>& q_grid);

/// -(1/n) log2 sum over level-n cylinders of mu([w])^q for mu = mu_phi. n <= 20.
double tau_oracle(const Sft& x, const Potential& phi, double q, int n);

/// tau'(q) = (P(phi) - E_{mu_{q phi}}[phi]) / log 2.
double tau_prime(const Sft& x, const Potential& phi, double q);

struct RestrictedExponents {
  double q = 0.0;
  double alpha = 0.0;  // local dimension of the restricted measure, in bits
  double dim = 0.0;    // its dimension
  double h = 0.0;      // s0 - 1/p0 + alpha/p0
  std::optional<double> gamma_graph;
  std::optional<double> gamma_range;
};

/// Exponents of the equilibrium state of q phi on `avoid` relative to the
/// measure mu_phi on `full`, with derivatives from Gibbs expectations.
/// Gamma fields stay empty unless 0 < h < 1.
RestrictedExponents restricted_exponents(const Sft& full, const Sft& avoid, const Potential& phi,
                                         double q, double s0, double p0);

/// (min(xi/h, xi + 1 - h), min(xi/h, 1)); throws "outside theorem hypotheses"
/// unless 0 < h < 1 and xi > 0.
std::pair<double, double> theorem_spectra(double h, double xi_star);

/// xi(q) = q (s0 - 1/p0) + tau(q / p0).
SpectrumCurve wavelet_scaling_prediction(const Sft& x, const Potential& phi, double s0, double p0,
                                         const std::vector<double>& q_grid);

}  // namespace mwl
