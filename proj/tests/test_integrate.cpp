#include "support.hpp"

using namespace gerbe;
using namespace gerbe::testing;

namespace {

struct Angles {
  double theta, phi;
};

// (θ, φ) box with the plain coordinate frame.
Chart<Angles> angle_chart() {
  Chart<Angles> c;
  c.dim = 2;
  c.domain = {{0.0, kPi}, {0.0, kTwoPi}};
  c.map = [](const Params& s) { return Angles{s[0], s[1]}; };
  c.tangents = [](const Params&) {
    return std::vector<TangentVector>{{RealVector::Unit(2, 0), Matrix()},
                                      {RealVector::Unit(2, 1), Matrix()}};
  };
  return c;
}

}  // namespace

TEST_SUITE("integrate") {

TEST_CASE("gauss-legendre rules") {
  const auto r = gauss_legendre(5, 0.0, 2.0);
  double sum = 0.0, quartic = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    sum += r.weights[k];
    quartic += r.weights[k] * std::pow(r.nodes[k], 8);
  }
  CHECK(std::abs(sum - 2.0) <= 1e-14);
  CHECK(std::abs(quartic - std::pow(2.0, 9) / 9.0) <= 1e-11);
  CHECK_THROWS_AS(gauss_legendre(0), DimensionError);
  const auto c = composite_gauss({0.0, 1.0, 3.0}, 8);
  CHECK(c.nodes.size() == 16);
  double integral = 0.0;
  for (std::size_t k = 0; k < c.nodes.size(); ++k) integral += c.weights[k] * std::exp(c.nodes[k]);
  CHECK(std::abs(integral - (std::exp(3.0) - 1.0)) <= 1e-12);
}

TEST_CASE("bloch chart") {
  const auto chart = bloch_chart();
  Params s(2);
  s << kPi / 2, 0.0;
  CHECK(max_abs(chart.map(s)[0] - 0.5 * (Matrix::Identity(2, 2) + pauli(1))) <= 1e-15);
  const auto grid = tensor_grid(chart.domain, {20, 50});
  for (const auto& node : grid.nodes) {
    const auto f = chart.map(node);
    CHECK(ProjectionTuple::invariant_residual(f.projections()) <= 1e-12);
    CHECK(node[0] > 0.0);
    CHECK(node[0] < kPi);
  }
}

TEST_CASE("integrate_form on simple forms") {
  const auto chart = angle_chart();
  const FormField<Angles> zero = [](const Angles&) { return FormEvaluator::zero(2); };
  const FormField<Angles> area = [](const Angles& a) {
    const double s = std::sin(a.theta);
    return FormEvaluator(2, [s](std::span<const TangentVector> f) {
      return cplx(s * (f[0].real[0] * f[1].real[1] - f[0].real[1] * f[1].real[0]));
    });
  };
  const auto grid = tensor_grid(chart.domain, {200, 400});
  CHECK(std::abs(integrate_form(zero, chart, grid)) == 0.0);
  CHECK(std::abs(integrate_form(area, chart, grid) - 4.0 * kPi) <= 1e-10);
  const FormField<Angles> one_form = [](const Angles&) { return FormEvaluator::zero(1); };
  CHECK_THROWS_AS(integrate_form(one_form, chart, grid), DimensionError);
  CHECK_THROWS_AS(integrate_form(area, chart, tensor_grid({{0.0, 1.0}}, {4})), DimensionError);
}

TEST_CASE("chern numbers") {
  const auto chart = bloch_chart();
  CHECK(std::abs(chern_number(0, chart, 200, 400) + 1.0) <= 1e-3);
  CHECK(std::abs(chern_number(1, chart, 200, 400) - 1.0) <= 1e-3);
  CHECK(std::abs(chern_number(0, chart, 100, 200) - chern_number(0, chart, 200, 400)) <= 1e-2);
  auto constant = chart;
  const auto fixed = chart.map(midpoint(chart));
  constant.map = [fixed](const Params&) { return fixed; };
  constant.tangents = [](const Params&) {
    return std::vector<TangentVector>{TangentVector::zero(2, 0), TangentVector::zero(2, 0)};
  };
  CHECK(std::abs(chern_number(0, constant, 50, 100)) <= 1e-12);
}

TEST_CASE("euler chart and the WZW normalisation") {
  const auto chart = euler_chart_su2();
  const auto grid = tensor_grid(chart.domain, {32, 32, 32});
  double vol = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j)
    vol += grid.weights[j] * euler_jacobian(grid.nodes[j]);
  CHECK(std::abs(vol - 2.0 * kPi * kPi) <= 1e-6);
  CHECK(kWzwOrientation == -1);
  CHECK(std::abs(wzw_normalization(32) - 1.0) <= 1e-2);
  CHECK(std::abs(wzw_normalization(32, -kWzwOrientation) + 1.0) <= 1e-2);
  CHECK_THROWS_AS(euler_chart_su2(0), InvariantError);

  // Coordinate tangents against differences of the chart map.
  Params s(3);
  s << 1.0, 0.8, 2.5;
  for (int orientation : {1, -1}) {
    const auto c = euler_chart_su2(orientation);
    const auto tg = c.tangents(s);
    const Matrix g = c.map(s).matrix();
    for (int a = 0; a < 3; ++a) {
      Params up = s, dn = s;
      up[a] += 1e-6;
      dn[a] -= 1e-6;
      const Matrix fd = g.adjoint() * (c.map(up).matrix() - c.map(dn).matrix()) / 2e-6;
      CHECK(max_abs(fd - tg[a].gen) <= 1e-8);
    }
  }
}

TEST_CASE("sigma surfaces and the holonomy integral") {
  const auto t0 = default_sigma_torus(2);
  const auto sigma = sigma_surface(2, t0);
  Params s(2);
  s << 0.9, 2.0;
  const auto p = sigma.map(s);
  CHECK(max_abs(p.t.phases() - t0.phases()) == 0.0);
  CHECK(max_abs(p.flag[0] - bloch_projection(0.9, 2.0)) <= 1e-15);
  CHECK_THROWS_AS(sigma_surface(3, t0), DimensionError);

  const auto h2 = holonomy_obstruction(2, 200, 400);
  // −(i/4π)(p² − p⁻²)·2πi with p² = i.
  const cplx p2 = std::exp(kI * kPi / 2.0);
  const cplx oracle = -(kI / (4.0 * kPi)) * (p2 - 1.0 / p2) * (kTwoPi * kI);
  CHECK(std::abs(oracle - kI) <= 1e-15);
  CHECK(std::abs(h2.integral - oracle) <= 1e-3);
  CHECK(std::abs(h2.integral - holonomy_oracle(200, 400)) <= 1e-3);
  CHECK(std::abs(h2.integral.real()) <= 1e-12);
  CHECK(std::abs(h2.ratio - 1.0) > 0.05);
  CHECK(std::abs(holonomy_obstruction(3, 100, 200).integral - h2.integral) <= 1e-3);
}

TEST_CASE("parallel sums do not depend on the worker count") {
  std::vector<double> v(1000);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / (1.0 + static_cast<double>(k));
  const auto mapped = parallel_map<double>(v.size(), [&](std::size_t k) { return v[k] * v[k]; });
  double serial = 0.0;
  for (double x : v) serial += x * x;
  CHECK(std::abs(pairwise_sum(mapped) - serial) <= 1e-14);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t k) {
                    if (k == 7) throw InvariantError("boom");
                  }),
                  InvariantError);
}

}  // TEST_SUITE
