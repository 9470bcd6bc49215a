#include "mwl/random.hpp"

#include <cmath>
#include <numbers>

#include "mwl/error.hpp"

namespace mwl {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

double to_open_unit(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(a) << 21) ^ (b >> 11);  // 53 bits
  return (static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

PhiloxCounter draw_bits(std::uint64_t seed, Word w, Stream stream, std::uint32_t draw) {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(w.bits), static_cast<std::uint32_t>(w.bits >> 32),
                          static_cast<std::uint32_t>(w.length) | (draw << 8),
                          static_cast<std::uint32_t>(stream)};
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return philox4x32(ctr, key);
}

double uniform_open(std::uint64_t seed, Word w, Stream stream, std::uint32_t draw) {
  const auto r = draw_bits(seed, w, stream, draw);
  return to_open_unit(r[0], r[1]);
}

int rademacher(std::uint64_t seed, Word w) {
  return (draw_bits(seed, w, Stream::kSign)[0] & 1U) ? -1 : 1;
}

PerturbationLaw PerturbationLaw::parse(const std::string& name, double sigma, double clip) {
  PerturbationLaw law;
  law.sigma = sigma;
  law.clip = clip;
  if (name == "uniformHalfToThreeHalves" || name == "uniform") {
    law.kind = Kind::kUniform;
  } else if (name == "logNormalClipped") {
    if (!(sigma > 0.0) || !(clip > 0.0)) throw Error("logNormalClipped: sigma and clip must be positive");
    law.kind = Kind::kLogNormalClipped;
  } else if (name == "none") {
    law.kind = Kind::kNone;
  } else {
    throw Error("unknown perturbation law: " + name);
  }
  return law;
}

std::string PerturbationLaw::name() const {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kUniform: return "uniformHalfToThreeHalves";
    case Kind::kLogNormalClipped: return "logNormalClipped";
  }
  return "unknown";
}

double PerturbationLaw::sample(std::uint64_t seed, Word w) const {
  switch (kind) {
    case Kind::kNone: return 1.0;
    case Kind::kUniform: return 0.5 + uniform_open(seed, w, Stream::kPerturbation);
    case Kind::kLogNormalClipped:
      // truncated normal by rejection; each retry uses the next draw index
      for (std::uint32_t draw = 0;; ++draw) {
        const auto r = draw_bits(seed, w, Stream::kPerturbation, draw);
        const double u1 = to_open_unit(r[0], r[1]);
        const double u2 = to_open_unit(r[2], r[3]);
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        if (std::abs(z) <= clip) return std::exp(sigma * z);
      }
  }
  return 1.0;
}

double PerturbationLaw::lower() const {
  switch (kind) {
    case Kind::kNone: return 1.0;
    case Kind::kUniform: return 0.5;
    case Kind::kLogNormalClipped: return std::exp(-sigma * clip);
  }
  return 1.0;
}

double PerturbationLaw::upper() const {
  switch (kind) {
    case Kind::kNone: return 1.0;
    case Kind::kUniform: return 1.5;
    case Kind::kLogNormalClipped: return std::exp(sigma * clip);
  }
  return 1.0;
}

}  // namespace mwl
