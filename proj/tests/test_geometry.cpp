#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "mwl/error.hpp"
#include "mwl/geometry.hpp"

using namespace mwl;

namespace {

const LeaderPyramid& mono_pyramid() {
  static const LeaderPyramid p = leader_pyramid(fixture::get("monofractal").synth.tree, true);
  return p;
}

}  // namespace

TEST_CASE("oscillation exponents of simple functions") {
  const auto lin = fixture::from_function(14, [](double x) { return x; });
  const auto e = oscillation_exponent(lin, 0.37, {4, 5, 6, 7, 8, 9, 10});
  REQUIRE(e.value);
  CHECK(*e.value == doctest::Approx(1.0).epsilon(0.02));
  const auto root = fixture::from_function(14, [](double x) { return std::sqrt(x); });
  const auto r = oscillation_exponent(root, 0.0, {4, 5, 6, 7, 8, 9, 10});
  REQUIRE(r.value);
  CHECK(std::abs(*r.value - 0.5) <= 0.05);
}

TEST_CASE("box dimensions of smooth and constant series") {
  const auto lin = fixture::from_function(14, [](double x) { return x; });
  CHECK(std::abs(graph_box_dimension(lin, 4, 12).value - 1.0) <= 0.05);
  CHECK(std::abs(range_box_dimension(lin, 4, 12).value - 1.0) <= 0.05);
  DyadicCover half;
  half.level = 1;
  half.words = {Word::parse("0")};
  CHECK(std::abs(range_box_dimension(lin, half, 4, 12).value - 1.0) <= 0.05);

  const auto flat = fixture::from_function(14, [](double) { return 0.3; });
  CHECK(std::abs(graph_box_dimension(flat, 4, 12).value - 1.0) <= 0.02);
  CHECK(std::abs(range_box_dimension(flat, 4, 12).value) <= 0.02);

  DyadicCover none;
  none.level = 3;
  CHECK_THROWS_WITH_AS(graph_box_dimension(lin, none, 4, 12), doctest::Contains("empty set"), Error);
  CHECK_THROWS_AS(graph_box_dimension(lin, 4, 6), Error);
  CHECK_THROWS_AS(graph_box_dimension(lin, 2, 12), Error);
}

TEST_CASE("box counts grow as boxes shrink") {
  const auto& s = fixture::get("monofractal").synth.series;
  for (const auto& d : {graph_box_dimension(s, 4, 12), range_box_dimension(s, 4, 12)})
    for (std::size_t i = 1; i < d.counts.size(); ++i) CHECK(d.counts[i] >= d.counts[i - 1]);
}

TEST_CASE("monofractal full cover dimensions") {
  const auto& s = fixture::get("monofractal").synth.series;
  CHECK(std::abs(graph_box_dimension(s, 4, 12).value - 1.5) <= 0.1);
  CHECK(std::abs(range_box_dimension(s, 4, 12).value - 1.0) <= 0.05);
}

TEST_CASE("iso-holder covers") {
  const auto& p = mono_pyramid();
  CHECK(iso_holder_cover(p, 0.5, 0.1, 8).words.size() >= static_cast<std::size_t>(0.9 * 256));
  CHECK(iso_holder_cover(p, 0.9, 0.05, 8).empty());
  const auto ex = word_exponents(p, 8);
  const double med = weighted_median(ex);
  CHECK(std::abs(med - 0.5) <= 0.1);
  for (double t1 : {0.01, 0.03, 0.05}) {
    const auto a = iso_holder_cover(p, 0.5, t1, 8);
    const auto b = iso_holder_cover(p, 0.5, t1 + 0.02, 8);
    CHECK(std::includes(b.words.begin(), b.words.end(), a.words.begin(), a.words.end()));
  }
  CHECK_THROWS_AS(iso_holder_cover(p, 0.5, 0.1, 13), Error);
}

TEST_CASE("pointwise exponents of the monofractal series") {
  const auto& p = mono_pyramid();
  std::vector<double> ex;
  for (int i = 0; i < 100; ++i) {
    const double x0 = (i + 0.5) / 100.0;
    const auto e = pointwise_exponent(p, x0, 7, 14);
    if (e.value) ex.push_back(*e.value);
  }
  CHECK(std::abs(weighted_median(ex) - 0.5) <= 0.1);
}

TEST_CASE("riesz energy of two points") {
  auto s = fixture::from_function(2, [](double x) { return x < 0.5 ? 0.0 : 1.0; });
  DyadicCover c = full_cover(1);
  const auto r = riesz_energy(s, c, {0.5, 0.5}, 0.5);
  CHECK(r.energy == doctest::Approx(0.5));
  CHECK(r.finite);
  auto flat = fixture::from_function(2, [](double) { return 0.0; });
  const auto inf = riesz_energy(flat, c, {0.5, 0.5}, 0.5);
  CHECK_FALSE(inf.finite);
  CHECK(std::isinf(inf.energy));
  CHECK_THROWS_WITH_AS(riesz_energy(s, c, {0.5, 0.5}, 1.0), doctest::Contains("excluded exponent"), Error);
}

TEST_CASE("energy is monotone in the exponent and the graph threshold sits near 1.5") {
  const auto& run = fixture::get("monofractal");
  const auto cover = full_cover(10);
  const std::vector<double> w(cover.words.size(), 1.0 / static_cast<double>(cover.words.size()));
  double prev = 0.0;
  for (double g : {0.2, 0.4, 0.6, 0.8}) {
    const double e = riesz_energy(run.synth.series, cover, w, g).energy;
    CHECK(e >= prev);
    prev = e;
  }
  prev = 0.0;
  for (double g : {1.2, 1.4, 1.6, 1.8}) {
    const double e = riesz_energy(run.synth.series, cover, w, g).energy;
    CHECK(e >= prev);
    prev = e;
  }
  const auto scan = energy_scan(run.synth.series, cover, w, EnergyKernel::kGraph);
  CHECK(std::abs(scan.threshold - 1.5) <= 0.15);
}

TEST_CASE("energy subsampling keeps the total weight") {
  const auto& run = fixture::get("monofractal");
  const auto cover = full_cover(10);
  const std::vector<double> w(cover.words.size(), 1.0 / 1024.0);
  EnergyOptions opt;
  opt.max_pairs = 1e4;
  const auto r = riesz_energy(run.synth.series, cover, w, 0.5, opt);
  CHECK(r.subsampled);
  CHECK(r.points <= 100);
}

TEST_CASE("carrier covers are nested in epsilon") {
  const auto& run = fixture::get("monofractal");
  const auto& m = run.model;
  const GibbsModel gq(m.avoid, m.phi, 0.0);
  const auto ex = restricted_exponents(m.full, m.avoid, m.phi, 0.0, m.config.s0, m.config.p0);
  double prev = -1.0;
  for (double eps : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    const auto c = carrier_cover(gq, run.synth.tree, run.synth.series, ex, eps, 8);
    CHECK(c.mass >= prev);
    prev = c.mass;
    if (eps == 0.0) CHECK(c.empty());
  }
}
