#include "mwl/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mwl/error.hpp"
#include "mwl/regression.hpp"

namespace mwl {

using nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json num_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json opt_json(const std::optional<double>& v) { return v ? num_or_null(*v) : ordered_json(nullptr); }

ordered_json curve_json(const SpectrumCurve& c) {
  ordered_json j;
  j["kind"] = to_string(c.kind);
  j["grid"] = c.grid;
  ordered_json vals = ordered_json::array();
  for (double v : c.values) vals.push_back(num_or_null(v));
  j["values"] = vals;
  if (!c.empty_level.empty()) {
    std::vector<int> e(c.empty_level.begin(), c.empty_level.end());
    j["emptyLevel"] = e;
  }
  j["flagged"] = c.flagged;
  j["concavityCorrection"] = c.concavity_correction;
  return j;
}

std::vector<double> midpoint_exponents(const LeaderPyramid& p, const std::vector<Word>& words, int lo, int hi) {
  std::vector<double> out(words.size(), std::numeric_limits<double>::quiet_NaN());
  const auto count = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const Word& w = words[static_cast<std::size_t>(i)];
    const double x0 = (2.0 * static_cast<double>(w.bits) + 1.0) * std::ldexp(1.0, -w.length - 1);
    const auto e = pointwise_exponent(p, x0, lo, hi);
    if (e.value) out[static_cast<std::size_t>(i)] = *e.value;
  }
  return out;
}

double min_finite(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v)
    if (std::isfinite(x)) m = std::min(m, x);
  return m;
}

}  // namespace

double holder_graph_bound(double dim_e, double h) {
  if (!(h > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(std::min(dim_e / h, dim_e + 1.0 - h), dim_e);
}

double holder_range_bound(double dim_e, double h) {
  if (!(h > 0.0)) return 1.0;
  return std::min(dim_e / h, 1.0);
}

Model build_model(const RunConfig& c) {
  validate(c);
  Model m{c, c.potential.build(), full_shift(2), MotherWavelet::builtin(c.wavelet, c.G), {}, full_shift(2)};
  m.zeros = m.psi.zero_set();
  m.avoid = zero_avoiding_component(m.zeros, c.k);
  if (m.phi.degenerate()) spdlog::info("potential is constant: the measure is the measure of maximal entropy");
  return m;
}

PressureResult run_pressure(const Model& m) {
  const RunConfig& c = m.config;
  const auto qs = c.q_values();
  PressureResult r;
  r.tau = tau(m.full, m.phi, qs);
  r.pressure.kind = CurveKind::kPressure;
  r.pressure.grid = qs;
  for (double q : qs) r.pressure.values.push_back(pressure(m.full, m.phi, q));
  for (int k = c.k_sweep[0]; k <= c.k_sweep[1]; ++k) {
    const Sft x = zero_avoiding_component(m.zeros, k);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      PressureRow row;
      row.k = k;
      row.q = qs[i];
      row.p_full = r.pressure.values[i];
      row.p_avoid = pressure(x, m.phi, qs[i]);
      row.gap = row.p_full - row.p_avoid;
      row.dim = restricted_exponents(m.full, x, m.phi, qs[i], c.s0, c.p0).dim;
      r.sweep.push_back(row);
    }
  }
  return r;
}

SynthResult run_synth(const Model& m, Backend backend) {
  const RunConfig& c = m.config;
  const GibbsModel gm(m.full, m.phi, 1.0);
  SynthResult s;
  s.tree = build_coefficients(gm, c.s0, c.p0, c.J, c.sign(), c.seed);
  if (c.amplitude != 1.0) {
    for (auto& level : s.tree.magnitude)
      for (double& v : level) v *= std::abs(c.amplitude);
    if (c.amplitude < 0.0)
      for (auto& level : s.tree.sign)
        for (auto& v : level) v = static_cast<signed char>(-v);
  }
  const PerturbationLaw law = c.law();
  if (law.kind != PerturbationLaw::Kind::kNone) s.tree = perturb(s.tree, law, c.seed);
  s.series = synthesize(s.tree, m.psi, c.G, true, backend);
  s.series.fixture = c.fixture;
  try {
    s.clearance = zero_clearance(m.psi, m.avoid, c.clearance_level);
  } catch (const Error& e) {
    s.clearance_note = e.what();
  }
  spdlog::debug("synthesized {} samples, tail bound {}", s.series.samples.size(), s.series.tail_bound);
  return s;
}

SpectrumResult run_spectrum(const Model& m, const SynthResult& s) {
  const RunConfig& c = m.config;
  const auto qs = c.q_values();
  const LeaderPyramid pyr = leader_pyramid(s.tree, true);
  SpectrumResult r;
  r.estimate = scaling_function(pyr, qs, c.leader_lo(), c.leader_hi());
  r.predicted = wavelet_scaling_prediction(m.full, m.phi, c.s0, c.p0, qs);
  r.xi_star = legendre_spectrum(r.estimate, uniform_grid(0.0, 2.0, 0.01));
  return r;
}

DimsResult run_dims(const Model& m, const SynthResult& s, Backend backend) {
  const RunConfig& c = m.config;
  DimsResult r;
  r.graph = graph_box_dimension(s.series, c.box_scales[0], c.box_scales[1], backend);
  r.range = range_box_dimension(s.series, c.box_scales[0], c.box_scales[1], backend);
  const GibbsModel gq(m.avoid, m.phi, c.verify_q.front());
  DyadicCover cover;
  cover.level = c.energy_level;
  cover.words = enumerate_admissible(m.avoid, c.energy_level);
  std::vector<double> weights;
  for (const Word& w : cover.words) weights.push_back(gq.cylinder(w));
  EnergyOptions opt;
  opt.seed = c.seed;
  opt.backend = backend;
  r.graph_energy = energy_scan(s.series, cover, weights, EnergyKernel::kGraph, opt);
  r.range_energy = energy_scan(s.series, cover, weights, EnergyKernel::kRange, opt);
  const LeaderPyramid pyr = leader_pyramid(s.tree, true);
  r.h_min = min_finite(midpoint_exponents(pyr, full_cover(c.point_level).words, c.leader_lo(), c.leader_hi()));
  return r;
}

VerifyReport run_verify(const Model& m, const SynthResult& s, Backend backend) {
  const RunConfig& c = m.config;
  const Tolerances& tol = c.tolerances;
  const LeaderPyramid pyr = leader_pyramid(s.tree, true);
  VerifyReport rep;

  const auto all_words = full_cover(c.point_level).words;
  rep.h_min = min_finite(midpoint_exponents(pyr, all_words, c.leader_lo(), c.leader_hi()));
  rep.full_graph = graph_box_dimension(s.series, c.box_scales[0], c.box_scales[1], backend);
  rep.full_range = range_box_dimension(s.series, c.box_scales[0], c.box_scales[1], backend);
  rep.full_graph_bound = holder_graph_bound(1.0, rep.h_min);
  rep.full_cover_pass = rep.full_graph.value <= rep.full_graph_bound + tol.theorem_a &&
                        rep.full_range.value <= 1.0 + tol.theorem_a;
  rep.pass = rep.full_cover_pass;

  for (double q : c.verify_q) {
    VerifyRecord v;
    v.q = q;
    v.restricted = restricted_exponents(m.full, m.avoid, m.phi, q, c.s0, c.p0);
    const double td = tau_prime(m.full, m.phi, q);
    v.h = c.s0 - 1.0 / c.p0 + td / c.p0;
    v.xi_star = q * td - tau_value(m.full, m.phi, q);
    if (!(v.h > 0.0 && v.h < 1.0) || !(v.xi_star > 0.0) || !(v.restricted.h > 0.0 && v.restricted.h < 1.0) ||
        !(v.restricted.dim > 0.0)) {
      v.skipped = true;
      v.note = "skipped: outside theorem hypotheses";
      v.pass = true;
      rep.records.push_back(std::move(v));
      continue;
    }
    std::tie(v.d_graph, v.d_range) = theorem_spectra(v.h, v.xi_star);

    const GibbsModel gq(m.avoid, m.phi, q);
    const auto words = enumerate_admissible(m.avoid, c.point_level);
    const auto ex = midpoint_exponents(pyr, words, c.leader_lo(), c.leader_hi());
    std::vector<double> vals, wts;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (std::isfinite(ex[i])) {
        vals.push_back(ex[i]);
        wts.push_back(gq.cylinder(words[i]));
      }
    v.h_est = vals.empty() ? std::numeric_limits<double>::quiet_NaN() : weighted_median(vals, wts);

    std::vector<double> ns, logs;
    for (int n = c.cover_levels[0]; n <= c.cover_levels[1]; ++n) {
      const auto cov = iso_holder_cover(pyr, v.h, c.tol, n);
      v.cover_counts.push_back(static_cast<double>(cov.words.size()));
      if (!cov.empty()) {
        ns.push_back(n);
        logs.push_back(std::log2(static_cast<double>(cov.words.size())));
      }
    }
    v.cover_growth_raw = ns.size() >= 2 ? fit_line(ns, logs).slope : std::numeric_limits<double>::quiet_NaN();
    v.cover_growth = std::isfinite(v.cover_growth_raw) ? std::clamp(v.cover_growth_raw, 0.0, 1.0) : v.cover_growth_raw;

    const DyadicCover cover = iso_holder_cover(pyr, v.h, c.tol, c.box_scales[1]);
    try {
      v.graph = graph_box_dimension(s.series, cover, c.box_scales[0], c.box_scales[1], backend);
      v.range = range_box_dimension(s.series, cover, c.box_scales[0], c.box_scales[1], backend);
    } catch (const Error& e) {
      v.failures.push_back(std::string("box counting: ") + e.what());
      v.graph.value = v.range.value = std::numeric_limits<double>::quiet_NaN();
    }

    DyadicCover ecover;
    ecover.level = c.energy_level;
    ecover.words = enumerate_admissible(m.avoid, c.energy_level);
    std::vector<double> weights;
    for (const Word& w : ecover.words) weights.push_back(gq.cylinder(w));
    EnergyOptions opt;
    opt.seed = c.seed;
    opt.backend = backend;
    const EnergyScan eg = energy_scan(s.series, ecover, weights, EnergyKernel::kGraph, opt);
    const EnergyScan er = energy_scan(s.series, ecover, weights, EnergyKernel::kRange, opt);
    v.energy_graph = eg.threshold;
    v.energy_range = er.threshold;
    v.energy_graph_bracketed = eg.bracketed;
    v.energy_range_bracketed = er.bracketed;

    const double dim_e = std::isfinite(v.cover_growth) ? v.cover_growth : 1.0;
    v.graph_bound = holder_graph_bound(dim_e, v.h - c.tol);
    v.range_bound = holder_range_bound(dim_e, v.h - c.tol);

    auto gate = [&](const char* what, double gap, double limit) {
      if (!(std::abs(gap) <= limit)) v.failures.push_back(std::string(what) + " gap " + num(gap));
    };
    gate("h", v.h_est - v.h, tol.h);
    gate("xiStar", v.cover_growth - v.xi_star, tol.xi_star);
    gate("graph", v.graph.value - v.d_graph, tol.graph);
    gate("range", v.range.value - v.d_range, tol.range);
    gate("energyGraph", v.energy_graph - v.d_graph, tol.energy);
    gate("energyRange", v.energy_range - v.d_range, tol.energy);
    if (v.graph.value > v.graph_bound + tol.theorem_a) v.failures.push_back("theoremA graph bound exceeded");
    if (v.range.value > v.range_bound + tol.theorem_a) v.failures.push_back("theoremA range bound exceeded");
    v.pass = v.failures.empty();
    rep.pass = rep.pass && v.pass;
    rep.records.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------

ordered_json to_json(const DimEstimate& d) {
  ordered_json j;
  j["method"] = d.method;
  j["value"] = num_or_null(d.value);
  j["stderr"] = num_or_null(d.stderr_slope);
  j["r2"] = num_or_null(d.r2);
  j["scales"] = d.scales;
  j["counts"] = d.counts;
  return j;
}

ordered_json to_json(const PressureResult& r) {
  ordered_json j;
  j["pressure"] = curve_json(r.pressure);
  j["tau"] = curve_json(r.tau);
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.sweep)
    rows.push_back({{"k", row.k}, {"q", row.q}, {"pFull", row.p_full}, {"pAvoid", row.p_avoid}, {"gap", row.gap},
                    {"dim", row.dim}});
  j["sweep"] = rows;
  return j;
}

ordered_json to_json(const SpectrumResult& r) {
  ordered_json j;
  j["q"] = r.estimate.q;
  j["xiHat"] = r.estimate.xi_hat;
  j["stderr"] = r.estimate.stderr_slope;
  j["r2"] = r.estimate.r2;
  j["scales"] = {r.estimate.j_lo, r.estimate.j_hi};
  j["predicted"] = curve_json(r.predicted);
  j["xiStar"] = curve_json(r.xi_star);
  return j;
}

namespace {

ordered_json scan_json(const EnergyScan& s) {
  ordered_json j;
  j["kernel"] = s.kernel == EnergyKernel::kGraph ? "graph" : "range";
  j["threshold"] = s.threshold;
  j["bracketed"] = s.bracketed;
  ordered_json reps = ordered_json::array();
  for (const auto& r : s.reports)
    reps.push_back({{"gamma", r.gamma},
                    {"energy", num_or_null(r.energy)},
                    {"finite", r.finite},
                    {"shellSlope", num_or_null(r.shell_slope)},
                    {"points", r.points},
                    {"subsampled", r.subsampled}});
  j["reports"] = reps;
  return j;
}

}  // namespace

ordered_json to_json(const DimsResult& r) {
  ordered_json j;
  j["graph"] = to_json(r.graph);
  j["range"] = to_json(r.range);
  j["graphEnergy"] = scan_json(r.graph_energy);
  j["rangeEnergy"] = scan_json(r.range_energy);
  j["hMin"] = num_or_null(r.h_min);
  return j;
}

ordered_json to_json(const VerifyReport& r) {
  ordered_json j;
  ordered_json recs = ordered_json::array();
  for (const auto& v : r.records) {
    ordered_json o;
    o["q"] = v.q;
    o["skipped"] = v.skipped;
    if (!v.note.empty()) o["note"] = v.note;
    o["restricted"] = {{"alpha", num_or_null(v.restricted.alpha)},
                       {"dim", num_or_null(v.restricted.dim)},
                       {"h", num_or_null(v.restricted.h)},
                       {"gammaGraph", opt_json(v.restricted.gamma_graph)},
                       {"gammaRange", opt_json(v.restricted.gamma_range)}};
    o["predicted"] = {{"h", num_or_null(v.h)},
                      {"xiStar", num_or_null(v.xi_star)},
                      {"dGraph", num_or_null(v.d_graph)},
                      {"dRange", num_or_null(v.d_range)}};
    if (!v.skipped) {
      o["estimated"] = {{"h", num_or_null(v.h_est)},
                        {"coverGrowth", num_or_null(v.cover_growth)},
                        {"coverGrowthRaw", num_or_null(v.cover_growth_raw)},
                        {"coverCounts", v.cover_counts},
                        {"graphBox", to_json(v.graph)},
                        {"rangeBox", to_json(v.range)},
                        {"energyGraph", v.energy_graph},
                        {"energyGraphBracketed", v.energy_graph_bracketed},
                        {"energyRange", v.energy_range},
                        {"energyRangeBracketed", v.energy_range_bracketed}};
      o["gaps"] = {{"h", num_or_null(v.h_est - v.h)},
                   {"xiStar", num_or_null(v.cover_growth - v.xi_star)},
                   {"graph", num_or_null(v.graph.value - v.d_graph)},
                   {"range", num_or_null(v.range.value - v.d_range)},
                   {"energyGraph", num_or_null(v.energy_graph - v.d_graph)},
                   {"energyRange", num_or_null(v.energy_range - v.d_range)}};
      o["theoremA"] = {{"graphBound", num_or_null(v.graph_bound)},
                       {"rangeBound", num_or_null(v.range_bound)},
                       {"graphExcess", num_or_null(v.graph.value - v.graph_bound)},
                       {"rangeExcess", num_or_null(v.range.value - v.range_bound)}};
    }
    o["failures"] = v.failures;
    o["pass"] = v.pass;
    recs.push_back(o);
  }
  j["records"] = recs;
  j["fullCover"] = {{"hMin", num_or_null(r.h_min)},
                    {"graphBox", to_json(r.full_graph)},
                    {"rangeBox", to_json(r.full_range)},
                    {"graphBound", num_or_null(r.full_graph_bound)},
                    {"pass", r.full_cover_pass}};
  j["pass"] = r.pass;
  return j;
}

std::string curve_csv(const std::vector<SpectrumCurve>& curves) {
  std::ostringstream os;
  os << "grid,value,kind\n";
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.grid.size(); ++i) os << num(c.grid[i]) << ',' << num(c.values[i]) << ',' << to_string(c.kind) << '\n';
  return os.str();
}

std::string sweep_csv(const std::vector<PressureRow>& rows) {
  std::ostringstream os;
  os << "k,q,p_full,p_avoid,gap,dim\n";
  for (const auto& r : rows)
    os << r.k << ',' << num(r.q) << ',' << num(r.p_full) << ',' << num(r.p_avoid) << ',' << num(r.gap) << ','
       << num(r.dim) << '\n';
  return os.str();
}

std::string scaling_csv(const ScalingEstimate& e) {
  std::ostringstream os;
  os << "q,xi_hat,stderr,r2\n";
  for (std::size_t i = 0; i < e.q.size(); ++i)
    os << num(e.q[i]) << ',' << num(e.xi_hat[i]) << ',' << num(e.stderr_slope[i]) << ',' << num(e.r2[i]) << '\n';
  return os.str();
}

std::string spectrum_csv(const SpectrumCurve& c) {
  std::ostringstream os;
  os << "h,xi_star\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i) os << num(c.grid[i]) << ',' << num(c.values[i]) << '\n';
  return os.str();
}

std::string verify_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "q,skipped,h_pred,h_est,xi_star_pred,cover_growth,d_graph_pred,graph_box,d_range_pred,range_box,"
        "energy_graph,energy_range,theorem_a_graph_bound,theorem_a_range_bound,pass\n";
  for (const auto& v : r.records) {
    os << num(v.q) << ',' << (v.skipped ? 1 : 0) << ',' << num(v.h) << ',' << num(v.h_est) << ',' << num(v.xi_star)
       << ',' << num(v.cover_growth) << ',' << num(v.d_graph) << ',' << num(v.graph.value) << ',' << num(v.d_range)
       << ',' << num(v.range.value) << ',' << num(v.energy_graph) << ',' << num(v.energy_range) << ','
       << num(v.graph_bound) << ',' << num(v.range_bound) << ',' << (v.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace mwl
