#include "mwl/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mwl/error.hpp"
#include "mwl/perron.hpp"

namespace mwl {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

Potential Potential::constant(double c) { return table(1, {c, c}); }

Potential Potential::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("bernoulli potential: p must lie in (0,1)");
  return table(1, {std::log(p), std::log1p(-p)});
}

Potential Potential::table(int range, std::vector<double> values) {
  if (range < 1 || range > 20) throw Error("potential range must be in [1, 20]");
  if (values.size() != (std::size_t{1} << range))
    throw Error("potential table must have 2^range entries");
  for (double v : values)
    if (!std::isfinite(v)) throw Error("potential values must be finite");
  Potential p;
  p.range = range;
  p.values = std::move(values);
  return p;
}

bool Potential::degenerate() const {
  return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

double birkhoff_sum(const Potential& phi, Word w) {
  if (w.length < phi.range) throw Error("birkhoff_sum: word shorter than potential range");
  const std::uint64_t mask = (std::uint64_t{1} << phi.range) - 1;
  double s = 0.0;
  for (int i = 0; i + phi.range <= w.length; ++i) s += phi((w.bits >> (w.length - phi.range - i)) & mask);
  return s;
}

// ---------------------------------------------------------------------------

GibbsModel::GibbsModel(const Sft& x, const Potential& phi, double q)
    : sft_(x), phi_(phi), q_(q), d_(std::max(phi.range, x.state_bits())) {
  if (x.empty()) throw Error("GibbsModel: empty subshift");
  if (!x.transitive()) throw Error("GibbsModel: subshift is not transitive");
  if (d_ > 22) throw Error("GibbsModel: lifted state depth too large");

  const int kb = x.state_bits();
  const std::uint64_t kmask = x.state_mask();
  const std::size_t n = state_count();
  state_ok_.assign(n, 0);
  for (std::uint64_t s = 0; s < n; ++s) {
    std::uint64_t win = s >> (d_ - kb);
    bool ok = x.live(win);
    for (int i = d_ - kb - 1; i >= 0 && ok; --i) {
      const int b = static_cast<int>((s >> i) & 1U);
      ok = x.edge(win, b);
      win = ((win << 1) | static_cast<std::uint64_t>(b)) & kmask;
      ok = ok && x.live(win);
    }
    state_ok_[s] = ok ? 1 : 0;
  }

  std::vector<std::int64_t> compact(n, -1);
  std::vector<std::uint64_t> states;
  for (std::uint64_t s = 0; s < n; ++s)
    if (state_ok_[s]) {
      compact[s] = static_cast<std::int64_t>(states.size());
      states.push_back(s);
    }
  const std::uint64_t dmask = n - 1;
  std::vector<std::array<OutEdge, 2>> g(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::uint64_t s = states[i];
    const double lw = q_ * phi_(s >> (d_ - phi_.range));
    for (int b = 0; b < 2; ++b)
      if (lifted_edge(s, b)) g[i][b] = OutEdge{compact[((s << 1) | static_cast<std::uint64_t>(b)) & dmask], lw};
  }
  const PerronData pd = perron(g);
  log_lambda_ = pd.log_lambda;
  right_.assign(n, 0.0);
  left_.assign(n, 0.0);
  pi_.assign(n, 0.0);
  log_right_.assign(n, kNegInf);
  log_pi_.assign(n, kNegInf);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::uint64_t s = states[i];
    right_[s] = pd.right[i];
    left_[s] = pd.left[i];
    pi_[s] = pd.left[i] * pd.right[i];
    log_right_[s] = std::log(right_[s]);
    log_pi_[s] = std::log(pi_[s]);
  }
}

bool GibbsModel::lifted_edge(std::uint64_t s, int b) const {
  if (!state_ok_[s]) return false;
  const std::uint64_t win = s & sft_.state_mask();
  if (!sft_.edge(win, b)) return false;
  return sft_.live(((win << 1) | static_cast<std::uint64_t>(b)) & sft_.state_mask());
}

double GibbsModel::step_probability(std::uint64_t from, int symbol) const {
  if (!lifted_edge(from, symbol)) return 0.0;
  const std::uint64_t to = ((from << 1) | static_cast<std::uint64_t>(symbol)) & (state_count() - 1);
  return std::exp(q_ * phi_(from >> (d_ - phi_.range)) - log_lambda_ + log_right_[to] - log_right_[from]);
}

double GibbsModel::log_cylinder(Word w) const {
  if (w.length < d_) {
    const int extra = d_ - w.length;
    const std::uint64_t base = w.bits << extra;
    double s = 0.0;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << extra); ++t) s += pi_[base | t];
    return s > 0.0 ? std::log(s) : kNegInf;
  }
  const std::uint64_t dmask = state_count() - 1;
  std::uint64_t s = w.bits >> (w.length - d_);
  if (!state_ok_[s]) return kNegInf;
  const std::uint64_t first = s;
  double phi_sum = 0.0;
  for (int i = w.length - d_ - 1; i >= 0; --i) {
    const int b = static_cast<int>((w.bits >> i) & 1U);
    if (!lifted_edge(s, b)) return kNegInf;
    phi_sum += phi_(s >> (d_ - phi_.range));
    s = ((s << 1) | static_cast<std::uint64_t>(b)) & dmask;
  }
  return log_pi_[first] - log_right_[first] + log_right_[s] + q_ * phi_sum -
         static_cast<double>(w.length - d_) * log_lambda_;
}

double GibbsModel::cylinder(Word w) const { return std::exp(log_cylinder(w)); }

double GibbsModel::expectation() const {
  double e = 0.0;
  for (std::uint64_t s = 0; s < state_count(); ++s)
    if (pi_[s] > 0.0) e += pi_[s] * phi_(s >> (d_ - phi_.range));
  return e;
}

double gibbs_constant(const GibbsModel& gm, int level) {
  double worst = 0.0;
  for (int n = std::max(1, gm.potential().range); n <= level; ++n) {
    for (const Word& w : enumerate_admissible(gm.sft(), n)) {
      const double lr = gm.log_cylinder(w) - (gm.q() * birkhoff_sum(gm.potential(), w) -
                                              static_cast<double>(n) * gm.pressure());
      worst = std::max(worst, std::abs(lr));
    }
  }
  return std::exp(worst);
}

double quasi_bernoulli_constant(const GibbsModel& gm, int half_level) {
  std::vector<std::pair<Word, double>> words;
  for (int n = 1; n <= half_level; ++n)
    for (const Word& w : enumerate_admissible(gm.sft(), n)) words.emplace_back(w, gm.log_cylinder(w));
  double worst = 0.0;
  for (const auto& [w, lw] : words) {
    for (const auto& [u, lu] : words) {
      const double lwu = gm.log_cylinder(w.concat(u));
      if (!std::isfinite(lwu)) continue;
      worst = std::max(worst, std::abs(lwu - lw - lu));
    }
  }
  return std::exp(worst);
}

double pressure(const Sft& x, const Potential& phi, double q) {
  if (x.empty()) throw Error("pressure: empty subshift");
  if (x.transitive()) return GibbsModel(x, phi, q).pressure();
  double best = kNegInf;
  for (const Sft& c : transitive_components(x)) best = std::max(best, GibbsModel(c, phi, q).pressure());
  return best;
}

double pressure_oracle(const Sft& x, const Potential& phi, double q, int n) {
  if (n < phi.range) throw Error("pressure_oracle: n below potential range");
  if (n > 22) throw Error("pressure_oracle: n over cap 22");
  const int extra = phi.range - 1;
  std::vector<double> terms;
  for (const Word& w : enumerate_admissible(x, n)) {
    double best = kNegInf;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << extra); ++t) {
      const Word ext = w.concat(Word(t, extra));
      if (extra > 0 && !admissible(x, ext)) continue;
      best = std::max(best, q * birkhoff_sum(phi, ext));
    }
    terms.push_back(best);
  }
  return log_sum_exp(terms) / n;
}

double tau_value(const Sft& x, const Potential& phi, double q) {
  return (q * pressure(x, phi, 1.0) - pressure(x, phi, q)) / std::numbers::ln2;
}

SpectrumCurve tau(const Sft& x, const Potential& phi, const std::vector<double>& q_grid) {
  const double p1 = pressure(x, phi, 1.0);
  SpectrumCurve c;
  c.kind = CurveKind::kTau;
  c.grid = q_grid;
  for (double q : q_grid) c.values.push_back((q * p1 - pressure(x, phi, q)) / std::numbers::ln2);
  return c;
}

double tau_oracle(const Sft& x, const Potential& phi, double q, int n) {
  if (n < 1 || n > 20) throw Error("tau_oracle: n must be in [1, 20]");
  const GibbsModel gm(x, phi, 1.0);
  std::vector<double> terms;
  for (const Word& w : enumerate_admissible(x, n)) {
    const double lm = gm.log_cylinder(w);
    if (std::isfinite(lm)) terms.push_back(q * lm);
  }
  return -log_sum_exp(terms) / (n * std::numbers::ln2);
}

double tau_prime(const Sft& x, const Potential& phi, double q) {
  return (pressure(x, phi, 1.0) - GibbsModel(x, phi, q).expectation()) / std::numbers::ln2;
}

RestrictedExponents restricted_exponents(const Sft& full, const Sft& avoid, const Potential& phi,
                                         double q, double s0, double p0) {
  const GibbsModel full_q(full, phi, q);
  const GibbsModel avoid_q(avoid, phi, q);
  const double p_full_1 = pressure(full, phi, 1.0);
  const double e_full = full_q.expectation();
  const double e_avoid = avoid_q.expectation();

  const double tau_q = (q * p_full_1 - full_q.pressure()) / std::numbers::ln2;
  const double tau_d = (p_full_1 - e_full) / std::numbers::ln2;
  const double tau_star = q * tau_d - tau_q;
  const double gap = full_q.pressure() - avoid_q.pressure();
  const double gap_d = e_full - e_avoid;

  RestrictedExponents r;
  r.q = q;
  r.alpha = tau_d + gap_d / std::numbers::ln2;
  r.dim = tau_star - (-q * gap_d + gap) / std::numbers::ln2;
  r.h = s0 - 1.0 / p0 + r.alpha / p0;
  if (r.h > 0.0 && r.h < 1.0) {
    r.gamma_graph = std::min(r.dim / r.h, 1.0 - r.h + r.dim);
    r.gamma_range = std::min(r.dim / r.h, 1.0);
  }
  return r;
}

std::pair<double, double> theorem_spectra(double h, double xi_star) {
  if (!(h > 0.0 && h < 1.0) || !(xi_star > 0.0)) throw Error("outside theorem hypotheses");
  return {std::min(xi_star / h, xi_star + 1.0 - h), std::min(xi_star / h, 1.0)};
}

SpectrumCurve wavelet_scaling_prediction(const Sft& x, const Potential& phi, double s0, double p0,
                                         const std::vector<double>& q_grid) {
  if (!(s0 > 0.0) || !(p0 > 0.0) || !(s0 - 1.0 / p0 > 0.0))
    throw Error("wavelet_scaling_prediction: need s0 > 0, p0 > 0 and s0 - 1/p0 > 0");
  std::vector<double> scaled;
  for (double q : q_grid) scaled.push_back(q / p0);
  SpectrumCurve c = tau(x, phi, scaled);
  c.kind = CurveKind::kXi;
  c.grid = q_grid;
  for (std::size_t i = 0; i < q_grid.size(); ++i) c.values[i] += q_grid[i] * (s0 - 1.0 / p0);
  return c;
}

}  // namespace mwl
