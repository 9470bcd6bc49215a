#pragma once

#include <vector>

namespace mwl {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Ordinary (or weighted, when weights are given) least squares y = a + b x.
/// Needs at least two distinct abscissae.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& weights = {});

/// Median of the values, weighted when weights are given (lower weighted median).
double weighted_median(std::vector<double> values, std::vector<double> weights = {});

}  // namespace mwl
