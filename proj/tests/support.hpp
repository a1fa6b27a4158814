#pragma once

#include <doctest.h>

#include <cstdint>
#include <random>

#include "gerbe/gerbe.hpp"
#include "gerbe/integrate.hpp"

namespace gerbe::testing {

// Property runner: calls body(rng, case_index) for `cases` seeded streams and
// tags failures with the case so they can be replayed.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body body) {
  for (int k = 0; k < cases; ++k) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(k));
    CAPTURE(k);
    body(rng, k);
  }
}

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double real_in(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// z away from 1 and from the listed points by at least `margin`.
inline ZPoint z_avoiding(std::mt19937_64& rng, const std::vector<cplx>& avoid,
                         double margin = 1e-3) {
  while (true) {
    const double a = real_in(rng, margin, kTwoPi - margin);
    bool ok = true;
    for (const auto& l : avoid) ok = ok && std::abs(std::polar(1.0, a) - l) > margin;
    if (ok) return ZPoint::from_arg(a);
  }
}

inline std::vector<cplx> spectrum(const TorusElement& t) {
  std::vector<cplx> s;
  for (int i = 0; i < t.dim(); ++i) s.push_back(t.eigenvalue(i));
  return s;
}

inline std::vector<cplx> spectrum(const SpecialUnitary& g) {
  std::vector<cplx> s;
  for (const auto& p : eigen_circle(g.matrix()).pairs) s.push_back(p.lambda);
  return s;
}

inline Matrix pauli(int a) {
  Matrix s(2, 2);
  if (a == 1) s << 0, 1, 1, 0;
  if (a == 2) s << 0, cplx(0, -1), cplx(0, 1), 0;
  if (a == 3) s << 1, 0, 0, -1;
  return s;
}

inline Matrix coordinate_projection(int n, int i) {
  Matrix p = Matrix::Zero(n, n);
  p(i, i) = 1.0;
  return p;
}

}  // namespace gerbe::testing
