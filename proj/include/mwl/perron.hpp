#pragma once

// Perron-Frobenius data of an irreducible nonnegative matrix whose rows have
// at most two nonzero entries, which is the shape of every transition matrix
// of a binary subshift (one successor per appended symbol).

#include <array>
#include <cstdint>
#include <vector>

namespace mwl {

struct OutEdge {
  std::int64_t to = -1;  // -1 marks a missing edge
  double log_weight = 0.0;
};

struct PerronData {
  double log_lambda = 0.0;
  std::vector<double> right;  // M r = lambda r, sum(r) = 1
  std::vector<double> left;   // l M = lambda l, l . r = 1
  int iterations = 0;
};

/// Power iteration with a Perron-root shift, stopped by the Collatz-Wielandt
/// bracket: max_i (Mx)_i / x_i - min_i (Mx)_i / x_i <= rel_tol * lambda.
/// The graph must be irreducible.
PerronData perron(const std::vector<std::array<OutEdge, 2>>& graph, double rel_tol = 1e-14,
                  int max_iterations = 2'000'000);

}  // namespace mwl
