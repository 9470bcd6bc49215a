#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mwl/error.hpp"
#include "mwl/thermo.hpp"
#include "oracles.hpp"

using namespace mwl;

namespace {

double bernoulli_tau(double p, double q) { return -std::log2(std::pow(p, q) + std::pow(1.0 - p, q)); }

Sft random_transitive(oracle::SplitMix& rng, std::vector<Word>& forb) {
  for (;;) {
    const int k = 2 + rng.below(3);
    forb.clear();
    const int nf = rng.below(3);
    for (int i = 0; i < nf; ++i) {
      const int len = k;
      forb.emplace_back(rng.next() & ((std::uint64_t{1} << len) - 1), len);
    }
    Sft x = build_sft(forb, k);
    if (x.transitive() && spectral_radius(x) > 1.05) return x;
  }
}

Potential random_potential(oracle::SplitMix& rng) {
  const int m = 1 + rng.below(3);
  std::vector<double> v(std::size_t{1} << m);
  for (double& x : v) x = 2.0 * (rng.uniform() - 0.5);
  return Potential::table(m, v);
}

}  // namespace

TEST_CASE("full shift with zero potential") {
  const Sft f = full_shift();
  const auto phi = Potential::constant(0.0);
  CHECK(phi.degenerate());
  CHECK(std::abs(pressure(f, phi, 1.0) - std::numbers::ln2) <= 1e-12);
  for (double q = -5.0; q <= 5.0; q += 0.25) CHECK(std::abs(tau_value(f, phi, q) - (q - 1.0)) <= 1e-12);
}

TEST_CASE("bernoulli tau closed form") {
  const Sft f = full_shift();
  const auto phi = Potential::bernoulli(0.25);
  CHECK_FALSE(phi.degenerate());
  for (double q = -5.0; q <= 5.0; q += 0.25)
    CHECK(std::abs(tau_value(f, phi, q) - bernoulli_tau(0.25, q)) <= 1e-10);
  const GibbsModel gm(f, phi, 1.0);
  CHECK(gm.cylinder(Word::parse("001")) == doctest::Approx(0.25 * 0.25 * 0.75).epsilon(1e-13));
}

TEST_CASE("definitional sums approach the eigenvalue values") {
  const auto phi = Potential::bernoulli(0.25);
  for (const Sft& x : {oracle::golden_mean(), full_shift()})
    for (double q : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      CHECK(std::abs(pressure(x, phi, q) - pressure_oracle(x, phi, q, 14)) <= 0.15);
      CHECK(std::abs(tau_value(x, phi, q) - tau_oracle(x, phi, q, 12)) <= 0.1);
    }
}

TEST_CASE("property: pressure equals log spectral radius of the dense transfer matrix") {
  oracle::SplitMix rng{11};
  std::vector<Word> forb;
  for (int trial = 0; trial < 40; ++trial) {
    const Sft x = random_transitive(rng, forb);
    const Potential phi = random_potential(rng);
    const double q = 4.0 * (rng.uniform() - 0.5);
    const auto a = oracle::transfer_matrix(oracle::strings_of(forb), x.depth() - 1, phi, q);
    CHECK(pressure(x, phi, q) == doctest::Approx(std::log(oracle::spectral_radius(a))).epsilon(1e-9));
  }
}

TEST_CASE("property: gibbs cylinders are consistent and shift invariant") {
  oracle::SplitMix rng{5};
  std::vector<Word> forb;
  for (int trial = 0; trial < 25; ++trial) {
    const Sft x = random_transitive(rng, forb);
    const Potential phi = random_potential(rng);
    const GibbsModel gm(x, phi, 3.0 * (rng.uniform() - 0.5));
    for (int n = 1; n <= 7; ++n) {
      double total = 0.0;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        const Word w(b, n);
        const double c = gm.cylinder(w);
        total += c;
        CHECK((c > 0.0) == admissible(x, w));
        CHECK(c == doctest::Approx(gm.cylinder(w.child(0)) + gm.cylinder(w.child(1))).epsilon(1e-11));
        const double shifted = gm.cylinder(Word(b, n + 1)) + gm.cylinder(Word(b | (std::uint64_t{1} << n), n + 1));
        CHECK(c == doctest::Approx(shifted).epsilon(1e-11));
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("gibbs ratio constant is bounded in the level") {
  const auto phi = Potential::table(2, {0.3, -0.7, 0.1, -0.2});
  for (const Sft& x : {oracle::golden_mean(), full_shift()}) {
    const GibbsModel gm(x, phi, 1.0);
    const double c8 = gibbs_constant(gm, 8);
    const double c14 = gibbs_constant(gm, 14);
    CHECK(c8 >= 1.0);
    CHECK(c14 <= c8 * (1.0 + 1e-9));
  }
}

TEST_CASE("bernoulli measures are exactly multiplicative") {
  const GibbsModel gm(full_shift(), Potential::bernoulli(0.25), 1.0);
  CHECK(std::abs(quasi_bernoulli_constant(gm, 7) - 1.0) <= 1e-12);
  const GibbsModel markov(full_shift(), Potential::table(2, {0.3, -0.7, 0.1, -0.2}), 1.0);
  CHECK(quasi_bernoulli_constant(markov, 5) > 1.01);
}

TEST_CASE("derivatives agree with finite differences") {
  const auto phi = Potential::table(2, {0.3, -0.7, 0.1, -0.2});
  const Sft x = oracle::golden_mean();
  const double h = 1e-5;
  for (double q : {-2.0, 0.0, 1.5}) {
    const double fd = (pressure(x, phi, q + h) - pressure(x, phi, q - h)) / (2 * h);
    CHECK(GibbsModel(x, phi, q).expectation() == doctest::Approx(fd).epsilon(1e-7));
    const double td = (tau_value(x, phi, q + h) - tau_value(x, phi, q - h)) / (2 * h);
    CHECK(tau_prime(x, phi, q) == doctest::Approx(td).epsilon(1e-7));
  }
}

TEST_CASE("restricting to the whole shift recovers the unrestricted exponents") {
  const Sft f = full_shift();
  const auto phi = Potential::bernoulli(0.25);
  for (double q : {-1.0, 0.0, 1.0, 2.0}) {
    const auto ex = restricted_exponents(f, f, phi, q, 0.6, 2.0);
    const double tp = tau_prime(f, phi, q);
    CHECK(ex.alpha == doctest::Approx(tp).epsilon(1e-10));
    CHECK(ex.dim == doctest::Approx(q * tp - tau_value(f, phi, q)).epsilon(1e-10));
    CHECK(ex.h == doctest::Approx(0.6 - 0.5 + tp / 2.0).epsilon(1e-12));
  }
  const auto q1 = restricted_exponents(f, f, phi, 1.0, 0.6, 2.0);
  CHECK(q1.dim == doctest::Approx(0.8112781244591328).epsilon(1e-10));
  REQUIRE(q1.gamma_graph);
  CHECK(*q1.gamma_range == doctest::Approx(1.0));
}

TEST_CASE("theorem spectra") {
  const auto [g, r] = theorem_spectra(0.5, 1.0);
  CHECK(g == doctest::Approx(1.5));
  CHECK(r == doctest::Approx(1.0));
  const auto [g2, r2] = theorem_spectra(0.9, 0.5);
  CHECK(g2 == doctest::Approx(0.5 / 0.9));
  CHECK(r2 == doctest::Approx(0.5 / 0.9));
  CHECK_THROWS_AS(theorem_spectra(1.2, 1.0), Error);
  CHECK_THROWS_AS(theorem_spectra(0.5, 0.0), Error);
}

TEST_CASE("wavelet scaling prediction of the uniform measure") {
  const auto xi = wavelet_scaling_prediction(full_shift(), Potential::constant(0.0), 0.5, 4.0, {-2.0, 0.0, 4.0});
  CHECK(xi.values[0] == doctest::Approx(-2.0));
  CHECK(xi.values[1] == doctest::Approx(-1.0));
  CHECK(xi.values[2] == doctest::Approx(1.0));
}

TEST_CASE("gibbs model needs a transitive shift") {
  const Sft x = build_sft(std::vector<Word>{Word::parse("01"), Word::parse("10")}, 2);
  CHECK_THROWS_AS(GibbsModel(x, Potential::constant(0.0), 1.0), Error);
  CHECK(pressure(x, Potential::constant(0.0), 1.0) == doctest::Approx(0.0).epsilon(1e-14));
}
