#include <omp.h>

#include "kernels_common.hpp"

namespace mwl::omp {

std::vector<double> synthesize_samples(const std::vector<std::vector<double>>& coeffs, const MotherWavelet& psi,
                                       int grid_depth) {
  const auto tables = detail::level_tables(psi, grid_depth, static_cast<int>(coeffs.size()));
  const std::int64_t n = (std::int64_t{1} << grid_depth) + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = detail::sample_value(coeffs, tables, grid_depth, i);
  return out;
}

std::int64_t graph_box_count(const std::vector<double>& f, const std::vector<char>& mask, int grid_depth, int j) {
  detail::check_box_inputs(f, mask, grid_depth, j);
  const std::size_t width = std::size_t{1} << (grid_depth - j);
  const double scale = std::ldexp(1.0, j);
  const auto columns = static_cast<std::int64_t>(std::size_t{1} << j);
  std::int64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < columns; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      total += detail::column_boxes(f, mask, uc * width, (uc + 1) * width, scale, runs, ranges);
    }
  }
  return total;
}

std::int64_t range_box_count(const std::vector<double>& f, const std::vector<char>& mask, int grid_depth, int j) {
  detail::check_box_inputs(f, mask, grid_depth, j);
  const double scale = std::ldexp(1.0, j);
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  detail::mask_runs(mask, 0, mask.size(), runs);
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges(runs.size());
  const auto count = static_cast<std::int64_t>(runs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto& [a, b] = runs[static_cast<std::size_t>(r)];
    ranges[static_cast<std::size_t>(r)] = detail::value_boxes(f, a, b + 1, scale);
  }
  return detail::union_length(ranges);
}

std::vector<double> energy_shells(const std::vector<double>& x, const std::vector<double>& f,
                                  const std::vector<double>& w, int level, EnergyKernel kind, double gamma) {
  const std::size_t n = x.size();
  const std::size_t width = static_cast<std::size_t>(level) + 1;
  std::vector<double> rows(n * width, 0.0);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t a = 0; a < count; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    detail::energy_row(x, f, w, level, kind, gamma, ua, &rows[ua * width]);
  }
  std::vector<double> shells(width, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t p = 0; p < width; ++p) shells[p] += rows[a * width + p];
  return shells;
}

std::vector<std::vector<double>> leader_levels(const std::vector<std::vector<double>>& abs_coeffs) {
  std::vector<std::vector<double>> L(abs_coeffs.size());
  if (abs_coeffs.empty()) return L;
  L.back() = abs_coeffs.back();
  for (std::size_t j = abs_coeffs.size() - 1; j-- > 0;) {
    const auto& d = abs_coeffs[j];
    const auto& below = L[j + 1];
    L[j].resize(d.size());
    const auto count = static_cast<std::int64_t>(d.size());
#pragma omp parallel for schedule(static) if (count > 4096)
    for (std::int64_t k = 0; k < count; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      L[j][uk] = std::max({d[uk], below[2 * uk], below[2 * uk + 1]});
    }
  }
  return L;
}

}  // namespace mwl::omp
