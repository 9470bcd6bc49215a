#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "mwl/error.hpp"
#include "mwl/synthesis.hpp"

using namespace mwl;

namespace {

CoefficientTree small_tree(std::uint64_t seed = 3) {
  const GibbsModel gm(full_shift(), Potential::bernoulli(0.3), 1.0);
  return build_coefficients(gm, 0.6, 2.0, 8, SignRule::kRademacher, seed);
}

}  // namespace

TEST_CASE("coefficient magnitudes follow the measure") {
  const GibbsModel gm(full_shift(), Potential::bernoulli(0.3), 1.0);
  const auto t = build_coefficients(gm, 0.6, 2.0, 6, SignRule::kAllPlus, 1);
  for (int j = 0; j <= 6; ++j)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
      const double want = std::exp2(-j * 0.1) * std::sqrt(gm.cylinder(Word(k, j)));
      CHECK(t.coefficient(j, k) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("signs and perturbations are reproducible") {
  const auto a = small_tree(3), b = small_tree(3), c = small_tree(4);
  CHECK(a.sign == b.sign);
  CHECK(a.sign != c.sign);
  const auto law = PerturbationLaw::parse("uniformHalfToThreeHalves");
  const auto pa = perturb(a, law, 9), pb = perturb(a, law, 9);
  CHECK(pa.perturbation == pb.perturbation);
  for (const auto& lvl : pa.perturbation)
    for (double v : lvl) {
      CHECK(v >= 0.5);
      CHECK(v <= 1.5);
    }
  CHECK(pa.coefficient(3, 2, false) == a.coefficient(3, 2));
  CHECK(pa.coefficient(3, 2) == doctest::Approx(pa.perturbation[3][2] * a.coefficient(3, 2)));
}

TEST_CASE("synthesis of a single atom matches direct evaluation") {
  const auto psi = MotherWavelet::builtin("gauss2");
  std::vector<std::vector<double>> c(5);
  for (int j = 0; j < 5; ++j) c[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
  c[3][5] = 0.7;
  const auto s = synthesize_levels(c, psi, 9);
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    CHECK(s.samples[i] == doctest::Approx(0.7 * psi(8.0 * s.x(i) - 5.0)).epsilon(1e-13));
}

TEST_CASE("synthesis is linear in the coefficients") {
  const auto psi = MotherWavelet::builtin("gauss2");
  const auto t1 = small_tree(1), t2 = small_tree(2);
  const auto l1 = t1.levels(), l2 = t2.levels();
  const auto f1 = synthesize_levels(l1, psi, 10);
  const auto f2 = synthesize_levels(l2, psi, 10);
  const auto f = synthesize_levels(combine_levels(-1.5, l1, l2), psi, 10);
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    CHECK(f.samples[i] == doctest::Approx(-1.5 * f1.samples[i] + f2.samples[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("serial and parallel synthesis agree bit for bit") {
  const auto psi = MotherWavelet::builtin("gauss2");
  const auto t = perturb(small_tree(), PerturbationLaw::parse("uniform"), 2);
  omp_set_num_threads(3);
  const auto a = synthesize(t, psi, 11, true, Backend::kSerial);
  const auto b = synthesize(t, psi, 11, true, Backend::kParallel);
  CHECK(a.samples == b.samples);
}

TEST_CASE("truncation tail bound covers deeper levels") {
  const auto psi = MotherWavelet::builtin("gauss2");
  const GibbsModel gm(full_shift(), Potential::bernoulli(0.3), 1.0);
  const auto shallow = build_coefficients(gm, 0.6, 2.0, 6, SignRule::kRademacher, 5);
  const auto deep = build_coefficients(gm, 0.6, 2.0, 11, SignRule::kRademacher, 5);
  const auto a = synthesize(shallow, psi, 11);
  const auto b = synthesize(deep, psi, 11);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) gap = std::max(gap, std::abs(a.samples[i] - b.samples[i]));
  CHECK(a.tail_bound > 0.0);
  CHECK(gap <= a.tail_bound);
}

TEST_CASE("binary dump round trip and layout") {
  const auto& run = fixture::get("smoke");
  const auto& s = run.synth.series;
  for (double v : s.samples) CHECK(v == 0.0);
  std::ostringstream out;
  write_series_binary(out, s);
  const std::string bytes = out.str();
  CHECK(bytes.substr(0, 4) == "MWL1");
  CHECK(bytes.size() == 28 + 8 * s.samples.size());
  std::istringstream in(bytes);
  const auto back = read_series_binary(in);
  CHECK(back.grid_depth == s.grid_depth);
  CHECK(back.seed == s.seed);
  CHECK(back.samples == s.samples);
  std::istringstream bad(std::string("MWL2") + bytes.substr(4));
  CHECK_THROWS_AS(read_series_binary(bad), Error);
}

TEST_CASE("default fixture dump size") {
  const auto& s = fixture::get("monofractal").synth.series;
  CHECK(s.samples.size() == (1u << 14) + 1);
  CHECK(s.grid_depth == 14);
  CHECK(s.seed == 1);
  std::ostringstream csv;
  write_series_csv(csv, s, 1024);
  CHECK(csv.str().rfind("x,value\n", 0) == 0);
}

TEST_CASE("sign rule names") {
  CHECK(parse_sign_rule("allPlus") == SignRule::kAllPlus);
  CHECK(to_string(parse_sign_rule("rademacherFromSeed")) == "rademacherFromSeed");
  CHECK_THROWS_AS(parse_sign_rule("random"), Error);
}
