#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mwl/error.hpp"
#include "mwl/perron.hpp"
#include "mwl/symbolic.hpp"
#include "oracles.hpp"

using namespace mwl;

TEST_CASE("word basics") {
  const Word w = Word::parse("0110");
  CHECK(w.bits == 6);
  CHECK(w.length == 4);
  CHECK(w.str() == "0110");
  CHECK(w.at(1) == 0);
  CHECK(w.at(2) == 1);
  CHECK(w.lambda() == doctest::Approx(0.375));
  CHECK(w.prefix(2) == Word::parse("01"));
  CHECK(w.shifted(1) == Word::parse("110"));
  CHECK(w.concat(Word::parse("1")) == Word::parse("01101"));
  CHECK(w.child(0) == Word::parse("01100"));
  CHECK_THROWS_AS(Word::parse("012"), Error);
  CHECK(Word::parse("1") < Word::parse("00"));
}

TEST_CASE("metric and neighbors") {
  CHECK(metric_rho(Word::parse("0101"), Word::parse("0110")) == 0.25);
  CHECK(metric_rho(Word::parse("0101"), Word::parse("0101")) == 0.0);
  CHECK(metric_rho(Word::parse("1"), Word::parse("0")) == 1.0);
  const auto nb = neighbors(Word::parse("010"));
  REQUIRE(nb.size() == 3);
  CHECK(nb[0] == Word::parse("001"));
  CHECK(nb[2] == Word::parse("011"));
  CHECK(neighbors(Word::parse("000")).size() == 2);
  CHECK(neighbors(Word::parse("111")).size() == 2);
}

TEST_CASE("truncation of points") {
  CHECK(truncate_point(0.5, 3) == Word::parse("100"));
  CHECK(truncate_point(0.49, 3) == Word::parse("011"));
  CHECK(truncate_point(1.0, 4) == Word::parse("1111"));
  CHECK(truncate_point(0.0, 2) == Word::parse("00"));
  CHECK(is_dyadic(0.375));
  CHECK_FALSE(is_dyadic(1.0 / 3.0));
}

TEST_CASE("zero isolation keeps dyadic zeros exact") {
  const auto z = isolate_zeros([](double x) { return x - 0.5; });
  REQUIRE(z.zeros.size() == 1);
  CHECK(z.zeros[0] == 0.5);
  const auto z3 = isolate_zeros([](double x) { return std::sin(3.0 * std::numbers::pi * x); });
  REQUIRE(z3.zeros.size() == 4);
  CHECK(z3.zeros[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(z3.zeros[3] == 1.0);
  CHECK(isolate_zeros([](double) { return 1.0; }).zeros.empty());
}

TEST_CASE("forbidden words of a zero set") {
  const ZeroSet half{{0.5}, 1e-12};
  const auto f = forbidden_words(half, 3);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == Word::parse("011"));
  CHECK(f[1] == Word::parse("100"));
  const auto g = forbidden_words(ZeroSet{{1.0 / 3.0}, 1e-12}, 4);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == Word::parse("0101"));
}

TEST_CASE("golden mean spectral data") {
  const Sft g = oracle::golden_mean();
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(g.transitive());
  CHECK(std::abs(spectral_radius(g) - phi) <= 1e-10);
  CHECK(std::abs(box_dimension(g) - 0.6942419136306174) <= 1e-9);
  CHECK(g.transition(1, 1) == 0);
  CHECK(g.transition(0, 1) == 1);
  const auto words = enumerate_admissible(g, 5);
  CHECK(words.size() == 13);  // Fibonacci
  CHECK_FALSE(admissible(g, Word::parse("0110")));
}

TEST_CASE("full shift") {
  const Sft f = full_shift(4);
  CHECK(f.is_full_shift());
  CHECK(spectral_radius(f) == doctest::Approx(2.0).epsilon(1e-14));
  const auto gap = hausdorff_gap(f);
  CHECK(gap.exact);
  CHECK(gap.bound == 0.0);
  CHECK(enumerate_admissible(f, 3).size() == 8);
}

TEST_CASE("hausdorff gap of the golden mean") {
  const auto gap = hausdorff_gap(oracle::golden_mean());
  CHECK_FALSE(gap.exact);
  CHECK(gap.level == 2);
  CHECK(gap.bound == 0.25);
}

TEST_CASE("components of a reducible shift") {
  // Forbidding 01 and 10 leaves the two fixed points 0^inf and 1^inf.
  const Sft x = build_sft(std::vector<Word>{Word::parse("01"), Word::parse("10")}, 2);
  CHECK_FALSE(x.transitive());
  const auto comps = transitive_components(x);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].first_state() == 0);
  CHECK(spectral_radius(comps[0]) == doctest::Approx(1.0));
}

TEST_CASE("zero avoidance around one half") {
  const ZeroSet half{{0.5}, 1e-12};
  const Sft x3 = zero_avoiding_component(half, 3);
  CHECK(x3.transitive());
  CHECK(box_dimension(x3) == doctest::Approx(0.0).epsilon(1e-12));
  double prev = 0.0;
  for (int k = 3; k <= 8; ++k) {
    const double d = box_dimension(zero_avoiding_component(half, k));
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
  CHECK(prev > 0.95);
  CHECK_THROWS_AS(build_sft(std::vector<Word>{Word::parse("0"), Word::parse("1")}, 1), Error);
}

TEST_CASE("property: admissibility and spectral radius match brute force on random shifts") {
  oracle::SplitMix rng{42};
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + rng.below(4);
    std::vector<Word> forb;
    const int nf = 1 + rng.below(3);
    for (int i = 0; i < nf; ++i) {
      const int len = k;
      forb.emplace_back(rng.next() & ((std::uint64_t{1} << len) - 1), len);
    }
    const Sft x = build_sft(forb, k);
    const auto fs = oracle::strings_of(forb);
    const int window = std::max(k - 1, 1);
    for (int n = 1; n <= 7; ++n) {
      std::vector<Word> brute;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
        if (oracle::extends(Word(b, n).str(), fs, window)) brute.emplace_back(b, n);
      CHECK_MESSAGE(enumerate_admissible(x, n) == brute, "trial ", trial, " n ", n);
    }
    const double eig = oracle::spectral_radius(oracle::transfer_matrix(fs, window, Potential::constant(0.0), 1.0));
    if (!x.empty()) CHECK(spectral_radius(x) == doctest::Approx(eig).epsilon(1e-9));
  }
}

TEST_CASE("property: perron data of random irreducible graphs") {
  oracle::SplitMix rng{7};
  for (int trial = 0; trial < 40; ++trial) {
    const int bits = 1 + rng.below(5);
    const int n = 1 << bits;
    std::vector<std::array<OutEdge, 2>> g(static_cast<std::size_t>(n));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < n; ++s)
      for (int b = 0; b < 2; ++b) {
        const int t = ((s << 1) | b) & (n - 1);
        const double lw = 3.0 * (rng.uniform() - 0.5);
        g[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] = {t, lw};
        a(s, t) += std::exp(lw);
      }
    const PerronData pd = perron(g);
    CHECK(std::exp(pd.log_lambda) == doctest::Approx(oracle::spectral_radius(a)).epsilon(1e-11));
    double rs = 0.0, lr = 0.0;
    for (int i = 0; i < n; ++i) {
      rs += pd.right[static_cast<std::size_t>(i)];
      lr += pd.left[static_cast<std::size_t>(i)] * pd.right[static_cast<std::size_t>(i)];
    }
    CHECK(rs == doctest::Approx(1.0));
    CHECK(lr == doctest::Approx(1.0));
    const Eigen::Map<const Eigen::VectorXd> r(pd.right.data(), n);
    CHECK(((a * r) - std::exp(pd.log_lambda) * r).norm() <= 1e-10 * r.norm() * std::exp(pd.log_lambda));
  }
}

TEST_CASE("transition matrices") {
  const Sft g = oracle::golden_mean();
  CHECK(g.transition(0, 0) == 1);
  CHECK(g.transition(0, 1) == 1);
  CHECK(g.transition(1, 0) == 1);
  CHECK(g.transition(1, 1) == 0);
  const Sft x = build_sft(std::vector<Word>{Word::parse("011"), Word::parse("100")}, 3);
  int blocked = 0;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (int b = 0; b < 2; ++b) blocked += x.transition(s, ((s << 1) | static_cast<std::uint64_t>(b)) & 3) == 0;
  CHECK(blocked == 2);
  CHECK(x.transition(1, 3) == 0);
  CHECK(x.transition(2, 0) == 0);
  CHECK_THROWS_AS(build_sft(std::vector<Word>{Word::parse("01"), Word::parse("100")}, 3), Error);
}
