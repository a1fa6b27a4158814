#pragma once

#include <vector>

namespace gerbe {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss–Legendre rule on [a, b] (Newton iteration on P_m).
GaussRule gauss_legendre(int m, double a = -1.0, double b = 1.0);

/// Concatenation of m-point rules on consecutive panels [breaks[k], breaks[k+1]].
GaussRule composite_gauss(const std::vector<double>& breaks, int m);

/// Sum of values by recursive halving; the result depends only on the order of
/// the input, never on how the values were produced.
template <class T>
T pairwise_sum(const T* v, std::size_t count) {
  if (count == 0) return T{};
  if (count <= 8) {
    T s = v[0];
    for (std::size_t k = 1; k < count; ++k) s += v[k];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace gerbe
