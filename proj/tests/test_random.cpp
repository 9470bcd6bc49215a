#include <doctest.h>

#include <cmath>

#include "mwl/error.hpp"
#include "mwl/random.hpp"

using namespace mwl;

TEST_CASE("philox known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draws depend on every key component") {
  const Word w = Word::parse("0110");
  const auto base = draw_bits(1, w, Stream::kSign);
  CHECK(base == draw_bits(1, w, Stream::kSign));
  CHECK(base != draw_bits(2, w, Stream::kSign));
  CHECK(base != draw_bits(1, Word::parse("110"), Stream::kSign));
  CHECK(base != draw_bits(1, w, Stream::kPerturbation));
  CHECK(base != draw_bits(1, w, Stream::kSign, 1));
}

TEST_CASE("uniform and rademacher statistics") {
  double sum = 0.0, sum2 = 0.0;
  int plus = 0;
  const int n = 1 << 14;
  for (int i = 0; i < n; ++i) {
    const Word w(static_cast<std::uint64_t>(i), 14);
    const double u = uniform_open(9, w, Stream::kPerturbation);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
    plus += rademacher(9, w) > 0;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.03));
  CHECK(std::abs(plus - n / 2) < 4 * std::sqrt(n / 4.0));
}

TEST_CASE("perturbation laws stay in their bounds") {
  const auto uni = PerturbationLaw::parse("uniformHalfToThreeHalves");
  const auto logn = PerturbationLaw::parse("logNormalClipped", 0.25, 3.0);
  CHECK(uni.lower() == 0.5);
  CHECK(uni.upper() == 1.5);
  CHECK(logn.upper() == doctest::Approx(std::exp(0.75)));
  double mean = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const Word w(static_cast<std::uint64_t>(i), 12);
    const double a = uni.sample(3, w), b = logn.sample(3, w);
    CHECK(a >= 0.5);
    CHECK(a <= 1.5);
    CHECK(b >= logn.lower());
    CHECK(b <= logn.upper());
    mean += std::log(b);
  }
  CHECK(std::abs(mean / 4096) < 0.02);
  CHECK(PerturbationLaw::parse("none").sample(3, Word::parse("1")) == 1.0);
  CHECK_THROWS_AS(PerturbationLaw::parse("gamma"), Error);
}
