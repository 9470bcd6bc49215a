#include <doctest.h>

#include <cmath>

#include "mwl/error.hpp"
#include "mwl/spectrum.hpp"
#include "mwl/thermo.hpp"

using namespace mwl;

namespace {

SpectrumCurve sampled(double lo, double hi, double step, double (*f)(double)) {
  SpectrumCurve c;
  c.grid = uniform_grid(lo, hi, step);
  for (double q : c.grid) c.values.push_back(f(q));
  return c;
}

}  // namespace

TEST_CASE("uniform grid includes both ends") {
  const auto g = uniform_grid(-1.0, 1.0, 0.5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.0);
}

TEST_CASE("legendre transform of a parabola") {
  const auto c = sampled(-10.0, 10.0, 0.1, [](double q) { return -q * q; });
  const auto t = legendre(c, {-2.0, 0.0, 3.0});
  CHECK(t.values[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(t.values[1] == doctest::Approx(0.0));
  CHECK(t.values[2] == doctest::Approx(-2.25).epsilon(1e-9));
  CHECK(t.empty_level[0]);
}

TEST_CASE("slopes outside the curve give minus infinity") {
  const auto c = sampled(-1.0, 1.0, 0.1, [](double q) { return -q * q; });
  const auto t = legendre(c, {5.0});
  CHECK(std::isinf(t.values[0]));
  CHECK(t.values[0] < 0.0);
}

TEST_CASE("convex input is rejected and can be concavified") {
  const auto c = sampled(-1.0, 1.0, 0.1, [](double q) { return q * q; });
  CHECK(concavity_defect(c) > 0.0);
  CHECK_THROWS_AS(legendre(c, {0.0}), Error);
  const auto fixed = concavify(c);
  CHECK(concavity_defect(fixed) <= 1e-12);
  CHECK(fixed.flagged);
  CHECK(fixed.concavity_correction > 0.05);
  const auto ok = concavify(sampled(-1.0, 1.0, 0.1, [](double q) { return -q * q; }));
  CHECK_FALSE(ok.flagged);
  CHECK(ok.concavity_correction <= 1e-12);
}

TEST_CASE("legendre duality on the tau curves") {
  for (const auto& phi : {Potential::constant(0.0), Potential::bernoulli(0.25)}) {
    const Sft f = full_shift();
    const auto t = tau(f, phi, uniform_grid(-20.0, 20.0, 0.01));
    for (double q = -5.0; q <= 5.0; q += 0.5) {
      const double a = tau_prime(f, phi, q);
      const auto ts = legendre(t, {a});
      CHECK(std::abs(ts.values[0] - (q * a - tau_value(f, phi, q))) <= 1e-6);
    }
  }
}
