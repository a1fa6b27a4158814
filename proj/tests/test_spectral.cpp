#include "support.hpp"

using namespace gerbe;
using namespace gerbe::testing;

namespace {

SpecialUnitary diag_i() {
  RealVector x(2);
  x << 0.25, -0.25;
  return TorusElement::from_phases(x).as_unitary();
}

ZPoint at(double arg) { return ZPoint::from_arg(arg); }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("z points exclude 1") {
  CHECK_THROWS_AS(ZPoint::from_arg(0.0), InvariantError);
  CHECK_THROWS_AS(ZPoint::from_arg(1e-12), InvariantError);
  CHECK_THROWS_AS(ZPoint::from_value(cplx(1.0, 0.0)), InvariantError);
  CHECK_THROWS_AS(ZPoint::from_value(cplx(0.0, 2.0)), InvariantError);
  CHECK(std::abs(ZPoint::from_value(cplx(-1.0, 0.0)).arg() - kPi) <= 1e-15);
}

TEST_CASE("eigen_circle on simple inputs") {
  const auto id = eigen_circle(Matrix::Identity(3, 3));
  REQUIRE(id.pairs.size() == 1);
  CHECK(std::abs(id.pairs[0].lambda - 1.0) <= 1e-15);
  CHECK(id.pairs[0].multiplicity == 3);
  CHECK(max_abs(id.pairs[0].projection - Matrix::Identity(3, 3)) <= 1e-15);

  const auto d = eigen_circle(diag_i().matrix());
  REQUIRE(d.pairs.size() == 2);
  for (const auto& p : d.pairs) {
    const int slot = std::abs(p.lambda - kI) < 1e-12 ? 0 : 1;
    CHECK(std::abs(p.lambda - (slot == 0 ? kI : -kI)) <= 1e-12);
    CHECK(max_abs(p.projection - coordinate_projection(2, slot)) <= 1e-12);
  }
  Matrix bad = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(eigen_circle(bad), InvariantError);
}

TEST_CASE("eigen reconstruction including repeated eigenvalues") {
  for_all(100, 21, [](auto& rng, int k) {
    const int n = pick(rng, 2, 5);
    Matrix g = haar_sample(n, rng).matrix();
    if (k % 2 == 1 && n >= 3) {
      RealVector x = random_sum_zero(n, rng);
      x[1] = x[0];
      x[n - 1] = 0.0;
      x[n - 1] = -x.sum();
      const Matrix h = haar_sample(n, rng).matrix();
      g = h * TorusElement::from_phases(x).as_matrix() * h.adjoint();
    }
    const auto eig = eigen_circle(g);
    CHECK(max_abs(eig.reconstruct() - g) <= 1e-10);
    CHECK(eig.dim() == n);
    if (k % 2 == 1 && n >= 3) CHECK(static_cast<int>(eig.pairs.size()) <= n - 1);
  });
}

TEST_CASE("between on hand cases") {
  CHECK(between(at(kPi / 2), at(kPi), at(kPi / 4)));
  CHECK_FALSE(between(at(3 * kPi / 2), at(kPi), at(kPi / 4)));
  CHECK_FALSE(between(cplx(1.0, 0.0), at(kPi), at(kPi / 4)));
  CHECK_THROWS_AS(between(at(kPi), at(kPi), at(kPi / 4)), DegenerateInputError);
  for_all(2000, 22, [](auto& rng, int) {
    const auto z1 = z_avoiding(rng, {}), z2 = z_avoiding(rng, {z1.value()});
    const auto l = z_avoiding(rng, {z1.value(), z2.value()});
    CHECK(between(l, z1, z2) == between(l, z2, z1));
    // Oracle: strictly between the arguments.
    const double lo = std::min(z1.arg(), z2.arg()), hi = std::max(z1.arg(), z2.arg());
    CHECK(between(l, z1, z2) == (l.arg() > lo && l.arg() < hi));
  });
}

TEST_CASE("triple classification") {
  const auto minus_one = SpecialUnitary::from_matrix(-Matrix::Identity(2, 2));
  CHECK(classify_triple(at(3 * kPi / 2), at(kPi / 2), minus_one).kind == TripleClass::Positive);
  CHECK(classify_triple(at(kPi / 2), at(3 * kPi / 2), minus_one).kind == TripleClass::Negative);
  CHECK(classify_triple(at(kPi / 2), at(kPi / 2), minus_one).kind == TripleClass::Null);
  CHECK_THROWS_AS(classify_triple(at(kPi), at(kPi / 2), minus_one), SpectrumError);
  for_all(2000, 23, [](auto& rng, int) {
    const int n = pick(rng, 2, 5);
    const auto g = haar_sample(n, rng);
    const auto s = spectrum(g);
    const auto z1 = z_avoiding(rng, s), z2 = z_avoiding(rng, s);
    CHECK(sign_of(classify_triple(z1, z2, g).kind) ==
          -sign_of(classify_triple(z2, z1, g).kind));
  });
}

TEST_CASE("spectral projections") {
  const auto g = diag_i();
  CHECK(max_abs(spectral_projection(at(kPi), at(kPi / 4), g) - coordinate_projection(2, 0)) <=
        1e-12);
  CHECK(max_abs(spectral_projection(at(kPi / 4), at(kPi / 3), g)) == 0.0);
  CHECK_THROWS_AS(spectral_projection(at(kPi / 2), at(kPi / 4), g), SpectrumError);
  for_all(2000, 24, [](auto& rng, int) {
    const int n = pick(rng, 2, 5);
    const auto g = haar_sample(n, rng);
    const auto eig = eigen_circle(g.matrix());
    const auto s = spectrum(g);
    std::array<ZPoint, 3> z{z_avoiding(rng, s), z_avoiding(rng, s), z_avoiding(rng, s)};
    std::sort(z.begin(), z.end(), [](auto& a, auto& b) { return a.arg() > b.arg(); });
    auto rank = [&](const ZPoint& a, const ZPoint& b) {
      return std::lround(spectral_projection(a, b, eig).trace().real());
    };
    CHECK(rank(z[0], z[1]) + rank(z[1], z[2]) == rank(z[0], z[2]));
    // Oracle: count eigenvalues strictly inside the arc.
    long count = 0;
    for (const auto& p : eig.pairs)
      if (circle_arg(p.lambda) < z[0].arg() && circle_arg(p.lambda) > z[2].arg())
        count += p.multiplicity;
    CHECK(rank(z[0], z[2]) == count);
  });
}

TEST_CASE("spectral projection derivative matches finite differences") {
  for_all(30, 25, [](auto& rng, int) {
    const int n = pick(rng, 2, 4);
    const auto g = haar_sample(n, rng);
    const auto s = spectrum(g);
    const auto z1 = z_avoiding(rng, s, 0.05), z2 = z_avoiding(rng, s, 0.05);
    const Matrix xi = random_generator(n, rng);
    const double h = 1e-5;
    auto at_s = [&](double u) {
      return spectral_projection(
          z1, z2, SpecialUnitary::from_matrix(g.matrix() * exp_anti_hermitian(u * xi), 1e-10));
    };
    const Matrix fd = (at_s(h) - at_s(-h)) / (2.0 * h);
    const Matrix exact =
        spectral_projection_derivative(z1, z2, eigen_circle(g.matrix()), g.matrix() * xi);
    CHECK(max_abs(fd - exact) <= 1e-6);
  });
}

TEST_CASE("epsilon on hand cases and the cocycle property") {
  RealVector x(2);
  x << 0.25, -0.25;
  const auto t = TorusElement::from_phases(x);
  CHECK(epsilon_i(at(kPi), at(kPi / 4), t, 0) == 1);
  CHECK(epsilon_i(at(kPi / 4), at(kPi), t, 0) == -1);
  CHECK(epsilon_i(at(kPi), at(kPi), t, 0) == 0);
  CHECK(epsilon_i(at(kPi), at(kPi / 4), t, 1) == 0);
  CHECK_THROWS_AS(epsilon_i(at(kPi / 2), at(kPi / 4), t, 0), SpectrumError);
  for_all(3000, 26, [](auto& rng, int) {
    const int n = pick(rng, 2, 5);
    const auto t = random_torus(n, rng);
    const auto s = spectrum(t);
    const auto z1 = z_avoiding(rng, s), z2 = z_avoiding(rng, s), z3 = z_avoiding(rng, s);
    for (int i = 0; i < n; ++i) {
      CHECK(epsilon_i(z2, z3, t, i) - epsilon_i(z1, z3, t, i) + epsilon_i(z1, z2, t, i) == 0);
      const cplx rhs = (log_branch(t.eigenvalue(i), z1) - log_branch(t.eigenvalue(i), z2)) /
                       (kI * kTwoPi);
      CHECK(std::abs(rhs - static_cast<double>(epsilon_i(z1, z2, t, i))) <= 1e-12);
    }
  });
}

TEST_CASE("branch logarithm") {
  CHECK(std::abs(log_branch(1.0, at(2.0))) == 0.0);
  CHECK(std::abs(log_branch(kI, at(kPi)) - kI * kPi / 2.0) <= 1e-15);
  CHECK(std::abs(log_branch(kI, at(kPi / 4)) + 1.5 * kI * kPi) <= 1e-15);
  CHECK(std::abs(log_branch(2.0 * kI, at(kPi)) - cplx(std::log(2.0), kPi / 2)) <= 1e-15);
  CHECK_THROWS_AS(log_branch(std::polar(0.5, kPi / 3), at(kPi / 3)), BranchCutError);
  for_all(1000, 27, [](auto& rng, int) {
    const auto z = z_avoiding(rng, {});
    const auto w = z_avoiding(rng, {z.value()});
    const cplx l = log_branch(w.value(), z);
    CHECK(std::abs(std::exp(l) - w.value()) <= 1e-13);
    CHECK(l.imag() < z.arg());
    CHECK(l.imag() > z.arg() - kTwoPi);
  });
}

}  // TEST_SUITE
