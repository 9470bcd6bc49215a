#include "mwl/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "mwl/error.hpp"

namespace mwl {

SignRule parse_sign_rule(const std::string& name) {
  if (name == "allPlus") return SignRule::kAllPlus;
  if (name == "rademacherFromSeed") return SignRule::kRademacher;
  throw Error("unknown sign rule: " + name);
}

std::string to_string(SignRule rule) { return rule == SignRule::kAllPlus ? "allPlus" : "rademacherFromSeed"; }

double CoefficientTree::coefficient(int j, std::uint64_t k, bool use_perturbation) const {
  const auto uj = static_cast<std::size_t>(j);
  double v = sign[uj][k] * magnitude[uj][k];
  if (use_perturbation && perturbed()) v *= perturbation[uj][k];
  return v;
}

std::vector<std::vector<double>> CoefficientTree::levels(bool use_perturbation) const {
  std::vector<std::vector<double>> out(magnitude.size());
  for (std::size_t j = 0; j < magnitude.size(); ++j) {
    out[j].resize(magnitude[j].size());
    for (std::size_t k = 0; k < magnitude[j].size(); ++k) out[j][k] = coefficient(static_cast<int>(j), k, use_perturbation);
  }
  return out;
}

std::vector<std::vector<double>> CoefficientTree::abs_levels(bool use_perturbation) const {
  auto out = levels(use_perturbation);
  for (auto& level : out)
    for (double& v : level) v = std::abs(v);
  return out;
}

CoefficientTree build_coefficients(const GibbsModel& gm, double s0, double p0, int depth, SignRule rule,
                                   std::uint64_t seed) {
  if (!(p0 > 0.0) || !(s0 - 1.0 / p0 > 0.0)) throw Error("build_coefficients: need p0 > 0 and s0 - 1/p0 > 0");
  if (depth < 1 || depth > 24) throw Error("build_coefficients: depth must be in [1, 24]");
  CoefficientTree t;
  t.depth = depth;
  t.s0 = s0;
  t.p0 = p0;
  t.seed = seed;
  t.sign_rule = rule;
  t.magnitude.resize(static_cast<std::size_t>(depth) + 1);
  t.sign.resize(static_cast<std::size_t>(depth) + 1);
  const double drift = s0 - 1.0 / p0;
  for (int j = 0; j <= depth; ++j) {
    const std::size_t n = std::size_t{1} << j;
    auto& mag = t.magnitude[static_cast<std::size_t>(j)];
    auto& sg = t.sign[static_cast<std::size_t>(j)];
    mag.assign(n, 0.0);
    sg.assign(n, 1);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (count > 4096)
    for (std::int64_t k = 0; k < count; ++k) {
      const Word w(static_cast<std::uint64_t>(k), j);
      const double lm = gm.log_cylinder(w);
      const auto uk = static_cast<std::size_t>(k);
      if (std::isfinite(lm)) mag[uk] = std::exp2(-j * drift + lm / (p0 * std::numbers::ln2));
      if (rule == SignRule::kRademacher) sg[uk] = static_cast<signed char>(rademacher(seed, w));
    }
  }
  return t;
}

CoefficientTree perturb(const CoefficientTree& tree, const PerturbationLaw& law, std::uint64_t seed) {
  CoefficientTree t = tree;
  t.law = law;
  t.perturbation.resize(tree.magnitude.size());
  for (std::size_t j = 0; j < tree.magnitude.size(); ++j) {
    auto& level = t.perturbation[j];
    level.resize(tree.magnitude[j].size());
    const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(static) if (count > 4096)
    for (std::int64_t k = 0; k < count; ++k)
      level[static_cast<std::size_t>(k)] = law.sample(seed, Word(static_cast<std::uint64_t>(k), static_cast<int>(j)));
  }
  return t;
}

std::vector<std::vector<double>> combine_levels(double a, const std::vector<std::vector<double>>& c1,
                                                const std::vector<std::vector<double>>& c2) {
  if (c1.size() != c2.size()) throw Error("combine_levels: depth mismatch");
  auto out = c2;
  for (std::size_t j = 0; j < c1.size(); ++j) {
    if (c1[j].size() != c2[j].size()) throw Error("combine_levels: level size mismatch");
    for (std::size_t k = 0; k < c1[j].size(); ++k) out[j][k] = a * c1[j][k] + c2[j][k];
  }
  return out;
}

double SampledSeries::x(std::size_t i) const { return std::ldexp(static_cast<double>(i), -grid_depth); }

double truncation_tail_bound(const CoefficientTree& tree, const MotherWavelet& psi) {
  const double r = std::exp2(-(tree.s0 - 1.0 / tree.p0));
  const double overlap = std::ceil(psi.support_hi() - psi.support_lo()) + 1.0;
  const double pi_max = tree.perturbed() ? tree.law.upper() : 1.0;
  return std::pow(r, tree.depth + 1) / (1.0 - r) * overlap * psi.sup_abs() * pi_max;
}

SampledSeries synthesize_levels(const std::vector<std::vector<double>>& coeffs, const MotherWavelet& psi,
                                int grid_depth, Backend backend) {
  if (coeffs.empty()) throw Error("synthesize: no coefficient levels");
  if (grid_depth < 1 || grid_depth > 24) throw Error("synthesize: grid depth must be in [1, 24]");
  if (static_cast<int>(coeffs.size()) - 1 > grid_depth)
    throw Error("synthesize: truncation depth exceeds grid depth");
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j].size() != (std::size_t{1} << j)) throw Error("synthesize: malformed coefficient level");
  SampledSeries s;
  s.grid_depth = grid_depth;
  s.truncation_depth = static_cast<int>(coeffs.size()) - 1;
  s.wavelet = psi.name();
  s.samples = backend == Backend::kSerial ? serial::synthesize_samples(coeffs, psi, grid_depth)
                                          : omp::synthesize_samples(coeffs, psi, grid_depth);
  return s;
}

SampledSeries synthesize(const CoefficientTree& tree, const MotherWavelet& psi, int grid_depth, bool use_perturbation,
                         Backend backend) {
  SampledSeries s = synthesize_levels(tree.levels(use_perturbation), psi, grid_depth, backend);
  s.seed = tree.seed;
  s.tail_bound = truncation_tail_bound(tree, psi);
  return s;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw Error("series dump: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

void write_series_binary(std::ostream& out, const SampledSeries& s) {
  out.write("MWL1", 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.grid_depth));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.truncation_depth));
  put_le<std::uint64_t>(out, s.seed);
  put_le<std::uint64_t>(out, s.samples.size());
  for (double v : s.samples) put_le<double>(out, v);
}

SampledSeries read_series_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "MWL1", 4) != 0) throw Error("series dump: bad magic");
  SampledSeries s;
  s.grid_depth = static_cast<int>(get_le<std::uint32_t>(in));
  s.truncation_depth = static_cast<int>(get_le<std::uint32_t>(in));
  s.seed = get_le<std::uint64_t>(in);
  const auto count = get_le<std::uint64_t>(in);
  if (count != (std::uint64_t{1} << s.grid_depth) + 1) throw Error("series dump: sample count does not match grid depth");
  s.samples.resize(count);
  for (auto& v : s.samples) v = get_le<double>(in);
  return s;
}

void write_series_csv(std::ostream& out, const SampledSeries& s, std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < s.samples.size(); i += stride) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.x(i), s.samples[i]);
    out << buf;
  }
}

}  // namespace mwl
