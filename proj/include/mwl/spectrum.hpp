#pragma once

// Sampled concave curves and their Legendre transforms.

#include <string>
#include <vector>

namespace mwl {

enum class CurveKind { kTau, kTauStar, kXi, kXiStar, kPressure };

std::string to_string(CurveKind kind);

struct SpectrumCurve {
  std::vector<double> grid;
  std::vector<double> values;
  CurveKind kind = CurveKind::kTau;
  // For transformed curves: 1 where the level set is empty (value is -inf or
  // negative), in which case values[i] holds -infinity or the negative number.
  std::vector<char> empty_level;
  // Set when the input needed concavification or the grid boundary slopes
  // did not bracket the requested abscissa.
  bool flagged = false;
  double concavity_correction = 0.0;
};

/// Default q grid [-qmax, qmax] with the given step.
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Largest second-difference violation (positive means convex somewhere).
double concavity_defect(const SpectrumCurve& curve);

/// f*(a) = inf_q (q a - f(q)) over the curve's grid, refined by a parabola
/// through the three grid points around an interior minimum. Ties go to the
/// smallest |q|. An infimum that sits at a grid end while the objective still
/// decreases outward is reported as -infinity. Throws "not concave".
SpectrumCurve legendre(const SpectrumCurve& curve, const std::vector<double>& alpha_grid,
                       double concavity_tol = 1e-9);

/// Least-squares concave fit of the curve (isotonic regression on slopes).
/// Records the largest pointwise change in concavity_correction.
SpectrumCurve concavify(const SpectrumCurve& curve);

}  // namespace mwl
