#include "gerbe/integrate.hpp"

#include <cmath>

namespace gerbe {

QuadratureGrid tensor_grid(const std::vector<std::pair<double, double>>& domain,
                           const std::vector<int>& counts) {
  if (domain.size() != counts.size())
    throw DimensionError("tensor_grid: one node count per coordinate required");
  std::vector<GaussRule> rules;
  std::size_t total = 1;
  for (std::size_t a = 0; a < domain.size(); ++a) {
    rules.push_back(gauss_legendre(counts[a], domain[a].first, domain[a].second));
    total *= static_cast<std::size_t>(counts[a]);
  }
  const auto dim = static_cast<Eigen::Index>(domain.size());
  QuadratureGrid grid;
  grid.nodes.reserve(total);
  grid.weights.reserve(total);
  std::vector<std::size_t> idx(domain.size(), 0);
  for (std::size_t j = 0; j < total; ++j) {
    Params s(dim);
    double w = 1.0;
    for (std::size_t a = 0; a < domain.size(); ++a) {
      s[static_cast<Eigen::Index>(a)] = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
    }
    grid.nodes.push_back(std::move(s));
    grid.weights.push_back(w);
    for (std::size_t a = domain.size(); a-- > 0;) {
      if (++idx[a] < rules[a].nodes.size()) break;
      idx[a] = 0;
    }
  }
  return grid;
}

namespace {

Matrix pauli(int a) {
  Matrix s = Matrix::Zero(2, 2);
  switch (a) {
    case 1:
      s(0, 1) = s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    default:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
  }
  return s;
}

Matrix rotation_generator(double wx, double wy, double wz) {
  return (-0.5 * kI) * (wx * pauli(1) + wy * pauli(2) + wz * pauli(3));
}

Matrix embed(const Matrix& block, int n) {
  Matrix m = Matrix::Zero(n, n);
  m.topLeftCorner(2, 2) = block;
  return m;
}

ProjectionTuple embedded_bloch_flag(int n, double theta, double phi) {
  const Matrix p = bloch_projection(theta, phi);
  std::vector<Matrix> proj;
  proj.push_back(embed(p, n));
  proj.push_back(embed(Matrix::Identity(2, 2) - p, n));
  for (int k = 2; k < n; ++k) {
    Matrix o = Matrix::Zero(n, n);
    o(k, k) = 1.0;
    proj.push_back(std::move(o));
  }
  return ProjectionTuple::from_projections(std::move(proj));
}

std::vector<Matrix> bloch_generators(double phi) {
  return {rotation_generator(-std::sin(phi), std::cos(phi), 0.0),
          rotation_generator(0.0, 0.0, 1.0)};
}

}  // namespace

Matrix bloch_projection(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi), ny = std::sin(theta) * std::sin(phi),
               nz = std::cos(theta);
  return 0.5 * (Matrix::Identity(2, 2) + nx * pauli(1) + ny * pauli(2) + nz * pauli(3));
}

Chart<ProjectionTuple> bloch_chart() {
  Chart<ProjectionTuple> c;
  c.dim = 2;
  c.domain = {{0.0, kPi}, {0.0, kTwoPi}};
  c.map = [](const Params& s) { return embedded_bloch_flag(2, s[0], s[1]); };
  c.tangents = [](const Params& s) {
    std::vector<TangentVector> out;
    for (auto& g : bloch_generators(s[1])) out.push_back(TangentVector::flag_direction(g, 0));
    return out;
  };
  return c;
}

Chart<SpecialUnitary> euler_chart_su2(int orientation) {
  if (orientation != 1 && orientation != -1)
    throw InvariantError("euler_chart_su2: orientation must be ±1");
  const Matrix xi2 = 0.5 * kI * pauli(2), xi3 = 0.5 * kI * pauli(3);
  Chart<SpecialUnitary> c;
  c.dim = 3;
  c.domain = {{0.0, kTwoPi}, {0.0, kPi}, {0.0, 2.0 * kTwoPi}};
  auto alpha_of = [orientation](double a) { return orientation == 1 ? a : kTwoPi - a; };
  c.map = [=](const Params& s) {
    const Matrix g = exp_anti_hermitian(alpha_of(s[0]) * xi3) * exp_anti_hermitian(s[1] * xi2) *
                     exp_anti_hermitian(s[2] * xi3);
    return SpecialUnitary::from_matrix(g);
  };
  c.tangents = [=](const Params& s) {
    const Matrix eg = exp_anti_hermitian(-s[2] * xi3);
    const Matrix eb = exp_anti_hermitian(-s[1] * xi2);
    const Matrix d_alpha = (eg * eb) * xi3 * (eg * eb).adjoint();
    const Matrix d_beta = eg * xi2 * eg.adjoint();
    return std::vector<TangentVector>{
        TangentVector::flag_direction(static_cast<double>(orientation) * d_alpha, 0),
        TangentVector::flag_direction(d_beta, 0), TangentVector::flag_direction(xi3, 0)};
  };
  return c;
}

double euler_jacobian(const Params& s) { return std::sin(s[1]) / 8.0; }

TorusElement default_sigma_torus(int n) {
  if (n < 2) throw DimensionError("default_sigma_torus: n must be at least 2");
  RealVector x = RealVector::Zero(n);
  x[0] = 0.125;
  x[1] = -0.125;
  return TorusElement::from_phases(std::move(x));
}

Chart<FlagPoint> sigma_surface(int n, const TorusElement& t0) {
  if (t0.dim() != n) throw DimensionError("sigma_surface: torus dimension differs from n");
  Chart<FlagPoint> c;
  c.dim = 2;
  c.domain = {{0.0, kPi}, {0.0, kTwoPi}};
  c.map = [n, t0](const Params& s) { return FlagPoint{t0, embedded_bloch_flag(n, s[0], s[1])}; };
  c.tangents = [n](const Params& s) {
    std::vector<TangentVector> out;
    for (auto& g : bloch_generators(s[1]))
      out.push_back(TangentVector::flag_direction(embed(g, n), n));
    return out;
  };
  return c;
}

std::vector<Matrix> flag_generators(int n) {
  std::vector<Matrix> out;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Matrix a = Matrix::Zero(n, n), b = Matrix::Zero(n, n);
      a(k, l) = 1.0;
      a(l, k) = -1.0;
      b(k, l) = b(l, k) = kI;
      out.push_back(std::move(a));
      out.push_back(std::move(b));
    }
  return out;
}

namespace {

struct ProductChartData {
  int n;
  std::vector<Matrix> generators;
};

// U(w) and the right-trivialised coordinate generators ∂_b U · U⁻¹.
std::pair<Matrix, std::vector<Matrix>> product_of_exponentials(const std::vector<Matrix>& gens,
                                                               const Params& w, int offset, int n) {
  Matrix u = Matrix::Identity(n, n);
  std::vector<Matrix> tangents;
  for (std::size_t b = 0; b < gens.size(); ++b) {
    u = u * exp_anti_hermitian(w[offset + static_cast<Eigen::Index>(b)] * gens[b]);
    tangents.push_back(u * gens[b] * u.adjoint());
  }
  return {u, tangents};
}

std::vector<std::pair<double, double>> box(int dim, double half_width) {
  return std::vector<std::pair<double, double>>(static_cast<std::size_t>(dim),
                                                {-half_width, half_width});
}

std::vector<TangentVector> product_tangents(const std::vector<Matrix>& gens, const Params& s,
                                            int n) {
  const auto [u, flag_dirs] = product_of_exponentials(gens, s, n - 1, n);
  std::vector<TangentVector> out;
  for (int a = 0; a < n - 1; ++a) {
    RealVector v = RealVector::Zero(n);
    v[a] = 1.0;
    v[n - 1] = -1.0;
    out.push_back(TangentVector::torus_direction(std::move(v), n));
  }
  for (const auto& g : flag_dirs) out.push_back(TangentVector::flag_direction(g, n));
  return out;
}

RealVector shifted(const RealVector& x0, const Params& s) {
  const auto n = x0.size();
  RealVector x = x0;
  for (Eigen::Index a = 0; a < n - 1; ++a) {
    x[a] += s[a];
    x[n - 1] -= s[a];
  }
  return x;
}

}  // namespace

Chart<FlagPoint> torus_flag_chart(const FlagPoint& base, std::vector<Matrix> generators,
                                  double half_width) {
  const int n = base.t.dim();
  Chart<FlagPoint> c;
  c.dim = n - 1 + static_cast<int>(generators.size());
  c.domain = box(c.dim, half_width);
  c.map = [base, generators, n](const Params& s) {
    const auto [u, dirs] = product_of_exponentials(generators, s, n - 1, n);
    (void)dirs;
    return FlagPoint{TorusElement::from_phases(shifted(base.t.phases(), s), 1e-9),
                     base.flag.conjugated(u)};
  };
  c.tangents = [generators, n](const Params& s) { return product_tangents(generators, s, n); };
  return c;
}

Chart<CupPoint> cup_flag_chart(const CupPoint& base, std::vector<Matrix> generators,
                               double half_width) {
  const int n = base.flag().dim();
  Chart<CupPoint> c;
  c.dim = n - 1 + static_cast<int>(generators.size());
  c.domain = box(c.dim, half_width);
  c.map = [base, generators, n](const Params& s) {
    const auto [u, dirs] = product_of_exponentials(generators, s, n - 1, n);
    (void)dirs;
    return CupPoint::make(shifted(base.x(), s), base.flag().conjugated(u), 1e-9);
  };
  c.tangents = [generators, n](const Params& s) { return product_tangents(generators, s, n); };
  return c;
}

double chern_number(int i, const Chart<ProjectionTuple>& chart, const QuadratureGrid& grid) {
  const FormField<ProjectionTuple> field = [i](const ProjectionTuple& f) {
    return two_form_trPdPdP(f, i);
  };
  const cplx integral = integrate_form(field, chart, grid);
  return (kI / kTwoPi * integral).real();
}

double chern_number(int i, const Chart<ProjectionTuple>& chart, int n_theta, int n_phi) {
  return chern_number(i, chart, tensor_grid(chart.domain, {n_theta, n_phi}));
}

double wzw_normalization(int m, int orientation) {
  const auto chart = euler_chart_su2(orientation);
  const FormField<SpecialUnitary> field = [](const SpecialUnitary& g) { return trace_cube_mc(g); };
  const cplx integral = integrate_form(field, chart, tensor_grid(chart.domain, {m, m, m}));
  return (-integral / (24.0 * kPi * kPi)).real();
}

HolonomyResult holonomy_obstruction(int n, int n_theta, int n_phi) {
  const auto chart = sigma_surface(n, default_sigma_torus(n));
  const FormField<FlagPoint> field = [](const FlagPoint& p) { return beta(p.t, p.flag); };
  const cplx integral = integrate_form(field, chart, tensor_grid(chart.domain, {n_theta, n_phi}));
  return {integral, std::exp(integral)};
}

cplx holonomy_oracle(int n_theta, int n_phi) {
  const auto chart = bloch_chart();
  const FormField<ProjectionTuple> field = [](const ProjectionTuple& f) {
    return two_form_trPdPdP(f, 0);
  };
  const cplx trace_integral =
      integrate_form(field, chart, tensor_grid(chart.domain, {n_theta, n_phi}));
  const cplx p = default_sigma_torus(2).eigenvalue(0);
  return -kI / (4.0 * kPi) * (p * p - 1.0 / (p * p)) * trace_integral;
}

}  // namespace gerbe
