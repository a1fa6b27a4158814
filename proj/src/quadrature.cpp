#include "gerbe/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gerbe/types.hpp"

namespace gerbe {

GaussRule gauss_legendre(int m, double a, double b) {
  if (m < 1) throw DimensionError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const int roots = (m + 1) / 2;
  for (int k = 0; k < roots; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(k), hi = static_cast<std::size_t>(m - 1 - k);
    rule.nodes[lo] = mid - half * x;
    rule.nodes[hi] = mid + half * x;
    rule.weights[lo] = rule.weights[hi] = half * w;
  }
  if (m % 2 == 1) rule.nodes[static_cast<std::size_t>(m / 2)] = mid;
  return rule;
}

GaussRule composite_gauss(const std::vector<double>& breaks, int m) {
  const GaussRule ref = gauss_legendre(m);
  GaussRule out;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double mid = 0.5 * (breaks[k] + breaks[k + 1]), half = 0.5 * (breaks[k + 1] - breaks[k]);
    for (std::size_t j = 0; j < ref.nodes.size(); ++j) {
      out.nodes.push_back(mid + half * ref.nodes[j]);
      out.weights.push_back(half * ref.weights[j]);
    }
  }
  return out;
}

}  // namespace gerbe
