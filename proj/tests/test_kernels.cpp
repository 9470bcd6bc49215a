#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "mwl/kernels.hpp"
#include "oracles.hpp"

using namespace mwl;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  oracle::SplitMix rng{seed};
  std::vector<double> v(n);
  double acc = 0.0;
  for (double& x : v) x = (acc += rng.uniform() - 0.5);
  return v;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
  omp_set_num_threads(4);
  const int G = 12;
  const auto f = noise((std::size_t{1} << G) + 1, 1);
  std::vector<char> mask(std::size_t{1} << G, 1);
  for (std::size_t i = 0; i < mask.size(); i += 3) mask[i] = 0;
  for (int j = 2; j <= G; ++j) {
    CHECK(serial::graph_box_count(f, mask, G, j) == omp::graph_box_count(f, mask, G, j));
    CHECK(serial::range_box_count(f, mask, G, j) == omp::range_box_count(f, mask, G, j));
  }

  std::vector<double> xs, fs, ws;
  const int n = 9;
  for (int i = 0; i < (1 << n); i += 2) {
    xs.push_back((i + 0.5) / (1 << n));
    fs.push_back(f[static_cast<std::size_t>(i) * 8]);
    ws.push_back(1.0 / 256);
  }
  for (auto kind : {EnergyKernel::kGraph, EnergyKernel::kRange}) {
    const double gamma = kind == EnergyKernel::kGraph ? 1.4 : 0.6;
    CHECK(serial::energy_shells(xs, fs, ws, n, kind, gamma) == omp::energy_shells(xs, fs, ws, n, kind, gamma));
  }

  std::vector<std::vector<double>> c(10);
  for (int j = 0; j < 10; ++j) c[static_cast<std::size_t>(j)] = noise(std::size_t{1} << j, 100 + j);
  const auto psi = MotherWavelet::builtin("gauss2");
  CHECK(serial::synthesize_samples(c, psi, 10) == omp::synthesize_samples(c, psi, 10));
  for (auto& lvl : c)
    for (double& v : lvl) v = std::abs(v);
  CHECK(serial::leader_levels(c) == omp::leader_levels(c));
}

TEST_CASE("energy kernel floors at one") {
  CHECK(energy_kernel(EnergyKernel::kRange, 0.5, 0.1, 4.0) == 1.0);
  CHECK(energy_kernel(EnergyKernel::kRange, 0.5, 0.1, 0.25) == doctest::Approx(2.0));
  CHECK(energy_kernel(EnergyKernel::kGraph, 2.0, 0.3, 0.4) == doctest::Approx(4.0));
}

TEST_CASE("box counts of a straight line") {
  const int G = 10;
  std::vector<double> f((std::size_t{1} << G) + 1);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>(i) / (1 << G);
  const std::vector<char> mask(std::size_t{1} << G, 1);
  for (int j = 1; j <= 8; ++j) {
    const auto g = serial::graph_box_count(f, mask, G, j);
    CHECK(g >= (1 << j));
    CHECK(g <= 3 * (1 << j));
    CHECK(serial::range_box_count(f, mask, G, j) >= (1 << j));
  }
}
