#pragma once

// Counter-based randomness: every draw is a pure function of (seed, word,
// stream), so coefficient trees can be built in any order or in parallel.

#include <array>
#include <cstdint>
#include <string>

#include "mwl/symbolic.hpp"

namespace mwl {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al. constants).
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

enum class Stream : std::uint32_t { kSign = 1, kPerturbation = 2, kSubsample = 3 };

/// Four independent 32-bit words for (seed, word, stream, draw index).
PhiloxCounter draw_bits(std::uint64_t seed, Word w, Stream stream, std::uint32_t draw = 0);

/// Uniform on the open interval (0, 1) with 53 random bits.
double uniform_open(std::uint64_t seed, Word w, Stream stream, std::uint32_t draw = 0);

/// +1 or -1 with equal probability.
int rademacher(std::uint64_t seed, Word w);

/// Law of the multiplicative perturbation pi_w.
struct PerturbationLaw {
  enum class Kind { kNone, kUniform, kLogNormalClipped };
  Kind kind = Kind::kUniform;
  double sigma = 0.25;  // log-normal scale
  double clip = 3.0;    // |log pi| <= clip * sigma

  static PerturbationLaw parse(const std::string& name, double sigma = 0.25, double clip = 3.0);
  std::string name() const;

  /// pi_w; 1 for kNone, U[1/2, 3/2] for kUniform.
  double sample(std::uint64_t seed, Word w) const;
  double lower() const;
  double upper() const;
};

}  // namespace mwl
