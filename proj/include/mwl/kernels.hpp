#pragma once

// Hot loops with two interchangeable implementations: a plain serial
// reference and an OpenMP version. Both produce bit-identical results; the
// parallel versions only split work whose partial results are combined in a
// fixed order.

#include <cstdint>
#include <vector>

#include "mwl/wavelet.hpp"

namespace mwl {

enum class Backend { kSerial, kParallel };
enum class EnergyKernel { kGraph, kRange };

/// Kernel value for a pair at separation (dx, df); floored at 1.
double energy_kernel(EnergyKernel kind, double gamma, double dx, double df);

#define MWL_KERNEL_DECLARATIONS                                                                         \
  /* samples[i] = sum_j sum_k coeffs[j][k] psi(2^j i 2^-G - k), i = 0..2^G */                           \
  std::vector<double> synthesize_samples(const std::vector<std::vector<double>>& coeffs,                \
                                         const MotherWavelet& psi, int grid_depth);                     \
  /* boxes of side 2^-j meeting the graph over intervals [i, i+1] 2^-G with mask[i] set */              \
  std::int64_t graph_box_count(const std::vector<double>& f, const std::vector<char>& mask,             \
                               int grid_depth, int j);                                                  \
  /* intervals of length 2^-j meeting the image of the masked intervals */                              \
  std::int64_t range_box_count(const std::vector<double>& f, const std::vector<char>& mask,             \
                               int grid_depth, int j);                                                  \
  /* sum over ordered pairs a != b of w_a w_b K(a, b), split by separation level                        \
     p = floor(-log2 |x_a - x_b|) for points on the level-n dyadic grid; result has n + 1 entries */     \
  std::vector<double> energy_shells(const std::vector<double>& x, const std::vector<double>& f,         \
                                    const std::vector<double>& w, int level, EnergyKernel kind,         \
                                    double gamma);                                                      \
  /* L[j][k] = max(|d[j][k]|, L[j+1][2k], L[j+1][2k+1]) */                                              \
  std::vector<std::vector<double>> leader_levels(const std::vector<std::vector<double>>& abs_coeffs);

namespace serial {
MWL_KERNEL_DECLARATIONS
}  // namespace serial

namespace omp {
MWL_KERNEL_DECLARATIONS
}  // namespace omp

#undef MWL_KERNEL_DECLARATIONS

}  // namespace mwl
