#include "mwl/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwl/error.hpp"

namespace mwl {
namespace {

enum class Side { kRight, kLeft };

// Returns log(lambda) of the scaled matrix and fills x with the Perron vector.
double iterate(const std::vector<std::array<OutEdge, 2>>& g, const std::vector<double>& w, Side side,
               double rel_tol, int max_iterations, std::vector<double>& x, int& iterations) {
  const std::size_t n = g.size();
  x.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> mx(n);
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) shift += w[2 * i] + w[2 * i + 1];
  shift /= static_cast<double>(n);

  for (int it = 1; it <= max_iterations; ++it) {
    std::fill(mx.begin(), mx.end(), 0.0);
    if (side == Side::kRight) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int b = 0; b < 2; ++b)
          if (g[i][b].to >= 0) acc += w[2 * i + b] * x[static_cast<std::size_t>(g[i][b].to)];
        mx[i] = acc;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (int b = 0; b < 2; ++b)
          if (g[i][b].to >= 0) mx[static_cast<std::size_t>(g[i][b].to)] += w[2 * i + b] * x[i];
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = mx[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (!(hi > 0.0) || !std::isfinite(hi)) throw Error("perron: matrix is not irreducible");
    if (hi - lo <= rel_tol * hi) {
      iterations = it;
      return std::log(0.5 * (lo + hi));
    }
    shift = 0.5 * (lo + hi);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = mx[i] + shift * x[i];
      sum += x[i];
    }
    for (double& v : x) v /= sum;
  }
  throw Error("perron: power iteration did not converge");
}

}  // namespace

PerronData perron(const std::vector<std::array<OutEdge, 2>>& graph, double rel_tol, int max_iterations) {
  if (graph.empty()) throw Error("perron: empty graph");
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& e : graph)
    for (const auto& edge : e)
      if (edge.to >= 0) max_log = std::max(max_log, edge.log_weight);
  if (!std::isfinite(max_log)) throw Error("perron: graph has no edges");

  std::vector<double> w(2 * graph.size(), 0.0);
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (int b = 0; b < 2; ++b)
      if (graph[i][b].to >= 0) w[2 * i + b] = std::exp(graph[i][b].log_weight - max_log);

  PerronData out;
  int it_right = 0;
  int it_left = 0;
  const double log_right = iterate(graph, w, Side::kRight, rel_tol, max_iterations, out.right, it_right);
  iterate(graph, w, Side::kLeft, rel_tol, max_iterations, out.left, it_left);
  out.log_lambda = max_log + log_right;
  out.iterations = std::max(it_right, it_left);

  double dot = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) dot += out.left[i] * out.right[i];
  for (double& v : out.left) v /= dot;
  return out;
}

}  // namespace mwl
