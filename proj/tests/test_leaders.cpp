#include <doctest.h>

#include <cmath>

#include "mwl/error.hpp"
#include "mwl/leaders.hpp"
#include "oracles.hpp"

using namespace mwl;

namespace {

std::vector<std::vector<double>> geometric(int depth, double h) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) c[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, std::exp2(-h * j));
  return c;
}

}  // namespace

TEST_CASE("property: leaders are subtree maxima") {
  oracle::SplitMix rng{17};
  for (int trial = 0; trial < 10; ++trial) {
    const int depth = 3 + rng.below(6);
    std::vector<std::vector<double>> c(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j)
      for (int k = 0; k < (1 << j); ++k) c[static_cast<std::size_t>(j)].push_back(rng.uniform() * std::exp2(-0.5 * j));
    const auto p = leader_pyramid_from_levels(c, Backend::kSerial);
    for (int j = 0; j <= depth; ++j)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        double m = 0.0;
        for (int jj = j; jj <= depth; ++jj)
          for (std::uint64_t kk = k << (jj - j); kk < (k + 1) << (jj - j); ++kk) m = std::max(m, c[static_cast<std::size_t>(jj)][kk]);
        CHECK(p.at(j, k) == m);
      }
    CHECK(leader_pyramid_from_levels(c, Backend::kParallel).leaders == p.leaders);
  }
}

TEST_CASE("leaders around a point use three neighbors") {
  std::vector<std::vector<double>> c{{0.0}, {0.0, 0.0}, {1.0, 2.0, 3.0, 4.0}};
  const auto p = leader_pyramid_from_levels(c);
  CHECK(p.around(2, 0.3) == 3.0);
  CHECK(p.around(2, 0.9) == 4.0);
  CHECK(p.around(2, 0.0) == 2.0);
}

TEST_CASE("exponents of a geometric pyramid") {
  const auto p = leader_pyramid_from_levels(geometric(12, 0.7));
  const auto e = pointwise_exponent(p, 0.3, 4, 12);
  REQUIRE(e.value);
  CHECK(*e.value == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("scaling function of a geometric pyramid") {
  const auto p = leader_pyramid_from_levels(geometric(12, 0.4));
  const auto est = scaling_function(p, {-2.0, 0.0, 1.0, 3.0}, 6, 12);
  for (std::size_t i = 0; i < est.q.size(); ++i) CHECK(est.xi_hat[i] == doctest::Approx(0.4 * est.q[i] - 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(scaling_function(p, {1.0}, 2, 12), Error);
  CHECK_THROWS_AS(scaling_function(p, {1.0}, 11, 12), Error);
  const auto spec = legendre_spectrum(est, {0.4});
  CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("leaders by hand") {
  const auto p = leader_pyramid_from_levels({{1.0}, {0.5, 0.25}, {0.3, 0.1, 0.2, 0.05}});
  CHECK(p.at(1, 0) == 0.5);
  CHECK(p.at(1, 1) == 0.25);
  CHECK(p.at(2, 0) == 0.3);
  CHECK(p.at(0, 0) == 1.0);
}
