#include "gerbe/gerbe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gerbe/quadrature.hpp"

namespace gerbe {

// --- fibre product points and h_i -------------------------------------------

FiberProductPoint FiberProductPoint::make(RealVector x, ZPoint z, TorusElement t,
                                          ProjectionTuple flag, const SpectralTolerances& tol) {
  const int n = t.dim();
  if (x.size() != n || flag.dim() != n)
    throw DimensionError("FiberProductPoint: x, t and flag dimensions differ");
  if (std::abs(x.sum()) > 1e-12) throw InvariantError("FiberProductPoint: x must sum to zero");
  for (int i = 0; i < n; ++i) {
    if (std::abs(std::polar(1.0, kTwoPi * x[i]) - t.eigenvalue(i)) > 1e-10) {
      std::ostringstream os;
      os << "FiberProductPoint: e^{2πi x_" << i << "} differs from p_" << i << "(t)";
      throw FibreError(os.str());
    }
    if (std::abs(z.value() - t.eigenvalue(i)) <= tol.tol_spec)
      throw SpectrumError("FiberProductPoint: z lies on the spectrum of t");
  }
  return FiberProductPoint(std::move(x), z, std::move(t), std::move(flag));
}

FiberProductPoint FiberProductPoint::over(RealVector x, ZPoint z, ProjectionTuple flag,
                                          const SpectralTolerances& tol) {
  TorusElement t = CupPoint::make(x, flag).torus_image();
  return make(std::move(x), z, std::move(t), std::move(flag), tol);
}

int d_i(const RealVector& x, const RealVector& y, int i, double tol) {
  if (x.size() != y.size()) throw DimensionError("d_i: dimension mismatch");
  if (i < 0 || i >= x.size()) throw DimensionError("d_i: index out of range");
  const double d = y[i] - x[i];
  const double r = std::round(d);
  if (std::abs(d - r) > tol) {
    std::ostringstream os;
    os << "d_i: y_" << i << " − x_" << i << " = " << d << " is not an integer";
    throw FibreError(os.str());
  }
  return static_cast<int>(r);
}

cplx h_i_raw(const FiberProductPoint& p, int i) {
  if (i < 0 || i >= p.dim()) throw DimensionError("h_i: index out of range");
  return p.x()[i] - log_branch(p.t().eigenvalue(i), p.z()) / (kI * kTwoPi);
}

int h_i(const FiberProductPoint& p, int i, double tol) {
  const cplx raw = h_i_raw(p, i);
  const double r = std::round(raw.real());
  if (std::abs(raw - r) > tol) {
    std::ostringstream os;
    os << "h_i: raw value " << raw << " is not an integer";
    throw FibreError(os.str());
  }
  return static_cast<int>(r);
}

// --- shared evaluation helpers ---------------------------------------------

namespace {

std::vector<Matrix> all_dP(const ProjectionTuple& flag, const TangentVector& v,
                           const DerivativeOptions& opt) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(flag.dim()));
  for (int k = 0; k < flag.dim(); ++k) out.push_back(dP(flag, k, v, opt));
  return out;
}

// T(i, k) = τ_ik(X, Y) = tr(P_i (dP_k(X) dP_k(Y) − dP_k(Y) dP_k(X))).
Matrix tau_matrix(const ProjectionTuple& flag, const TangentVector& x, const TangentVector& y,
                  const DerivativeOptions& opt) {
  const int n = flag.dim();
  const auto a = all_dP(flag, x, opt), b = all_dP(flag, y, opt);
  Matrix t(n, n);
  for (int k = 0; k < n; ++k) {
    const Matrix c = a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)] -
                     b[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i) t(i, k) = (flag[i] * c).trace();
  }
  return t;
}

cplx log_velocity(const TangentVector& v, int i) {
  if (v.real.size() <= i) throw BaseMismatchError("torus component missing from tangent vector");
  return kI * kTwoPi * v.real[i];
}

// (α ∧ τ)(X, Y, Z) for α a 1-form and τ a 2-form, both supplied as callables.
template <class A, class T>
cplx wedge_1_2(const A& alpha, const T& tau, std::span<const TangentVector> f) {
  return alpha(f[0]) * tau(f[1], f[2]) - alpha(f[1]) * tau(f[0], f[2]) +
         alpha(f[2]) * tau(f[0], f[1]);
}

void require_same_dim(const TorusElement& t, const ProjectionTuple& flag) {
  if (t.dim() != flag.dim()) throw DimensionError("torus and flag dimensions differ");
}

}  // namespace

// --- cup product gerbe -----------------------------------------------------

FormEvaluator curving_cup(const CupPoint& p, const DerivativeOptions& opt) {
  return FormEvaluator(2, [x = p.x(), flag = p.flag(), opt](std::span<const TangentVector> f) {
    const Matrix t = tau_matrix(flag, f[0], f[1], opt);
    cplx sum = 0.0;
    for (int i = 0; i < flag.dim(); ++i) sum -= x[i] * t(i, i);
    return sum;
  });
}

FormEvaluator two_curvature_cup(const RealVector& x, const RealVector& y,
                                const ProjectionTuple& flag, const DerivativeOptions& opt) {
  if (x.size() != flag.dim() || y.size() != flag.dim())
    throw DimensionError("two_curvature_cup: dimension mismatch");
  std::vector<int> d(static_cast<std::size_t>(flag.dim()));
  for (int i = 0; i < flag.dim(); ++i) d[static_cast<std::size_t>(i)] = d_i(x, y, i);
  return FormEvaluator(2, [d, flag, opt](std::span<const TangentVector> f) {
    const Matrix t = tau_matrix(flag, f[0], f[1], opt);
    cplx sum = 0.0;
    for (int i = 0; i < flag.dim(); ++i) sum -= static_cast<double>(d[static_cast<std::size_t>(i)]) * t(i, i);
    return sum;
  });
}

FormEvaluator three_curvature_cup(const TorusElement& t, const ProjectionTuple& flag,
                                  const DerivativeOptions& opt) {
  require_same_dim(t, flag);
  return FormEvaluator(3, [flag, opt](std::span<const TangentVector> f) {
    cplx sum = 0.0;
    for (int i = 0; i < flag.dim(); ++i) {
      auto alpha = [i](const TangentVector& v) { return log_velocity(v, i); };
      auto tau = [&](const TangentVector& a, const TangentVector& b) {
        return two_form_trPdPdP(flag, i, opt)({a, b});
      };
      sum += wedge_1_2(alpha, tau, f);
    }
    return -sum / (kI * kTwoPi);
  });
}

// --- basic gerbe: residue backend ------------------------------------------

namespace {

// F[a, b, b] for F = log_z, a ≠ b.
cplx log_divided_difference(cplx a, cplx b, const ZPoint& z, double tol_ray) {
  const cplx u = (a - b) / b;
  const cplx diff = log_branch(a, z, tol_ray) - log_branch(b, z, tol_ray);
  if (std::abs(u) < 1e-2 && std::abs(diff - u) < 0.1) {
    // (log(1+u) − u)/u² = Σ_{m≥2} (−1)^{m+1} u^{m−2}/m
    cplx s = 0.0, pw = 1.0;
    for (int m = 2; m <= 12; ++m) {
      s += (m % 2 == 0 ? -1.0 : 1.0) * pw / static_cast<double>(m);
      pw *= u;
    }
    return s / (b * b);
  }
  return (diff - u) / (b * b * u * u);
}

}  // namespace

FormEvaluator curving_basic_residue(const ZPoint& z, const SpecialUnitary& g,
                                    const SpectralTolerances& tol) {
  const auto eig = eigen_circle(g.matrix(), tol.cluster_tol);
  if (spectral_distance(z, eig) <= tol.tol_spec)
    throw SpectrumError("curving_basic_residue: z lies on the spectrum of g");
  const std::size_t m = eig.pairs.size();
  Matrix c(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) {
      const cplx a = eig.pairs[k].lambda, b = eig.pairs[l].lambda;
      c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          k == l ? -0.5 / (a * a) : log_divided_difference(a, b, z, tol.tol_ray);
    }
  return FormEvaluator(2, [eig, c, g](std::span<const TangentVector> f) {
    const Matrix a = g.matrix() * maurer_cartan(g, f[0]);
    const Matrix b = g.matrix() * maurer_cartan(g, f[1]);
    const std::size_t m = eig.pairs.size();
    std::vector<Matrix> ea, eb;
    for (const auto& p : eig.pairs) {
      ea.push_back(p.projection * a);
      eb.push_back(p.projection * b);
    }
    cplx sum = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) {
        const cplx term = (ea[k] * eb[l]).trace() - (eb[k] * ea[l]).trace();
        sum += c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) * term;
      }
    return kI / (4.0 * kPi) * sum;
  });
}

// --- basic gerbe: contour backend ------------------------------------------

namespace {

// Quadrature of the resolvent integrand in an eigenbasis of g: each node
// contributes w (ζ − λ_k)⁻¹ (ζ − λ_l)⁻² to kernel(k, l).
struct ContourKernel {
  Eigen::VectorXcd lambda;
  Matrix kernel;
  std::vector<Matrix> parts;

  void add(cplx zeta, cplx weight) {
    const Eigen::VectorXcd r = (zeta - lambda.array()).inverse().matrix();
    parts.back().noalias() += weight * r * r.cwiseProduct(r).transpose();
  }
  void next_panel() { parts.push_back(Matrix::Zero(lambda.size(), lambda.size())); }
};

void add_circle(ContourKernel& k, const ZPoint& z, double radius, double orientation, int nodes) {
  const int order = std::min(nodes, 32);
  const int panels = std::max(1, nodes / order);
  std::vector<double> breaks;
  for (int p = 0; p <= panels; ++p)
    breaks.push_back(z.arg() - kTwoPi + kTwoPi * static_cast<double>(p) / panels);
  const GaussRule rule = composite_gauss(breaks, order);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    if (j % static_cast<std::size_t>(order) == 0) k.next_panel();
    const double theta = rule.nodes[j];
    const cplx zeta = std::polar(radius, theta);
    const cplx log_z{std::log(radius), theta};
    k.add(zeta, orientation * rule.weights[j] * log_z * kI * zeta);
  }
}

// Panels on [lo, hi] graded geometrically toward the endpoint `pivot` with
// smallest width `width`.
std::vector<double> graded_breaks(double pivot, double far, double width) {
  std::vector<double> breaks{pivot};
  const double sign = far > pivot ? 1.0 : -1.0;
  double step = width;
  while (std::abs(far - pivot) > std::abs(breaks.back() - pivot) + step) {
    breaks.push_back(breaks.back() + sign * step);
    step *= 2.0;
  }
  breaks.push_back(far);
  if (sign < 0) std::reverse(breaks.begin(), breaks.end());
  return breaks;
}

void add_ray(ContourKernel& k, const ZPoint& z, double distance, const ContourOptions& opt,
             int nodes) {
  const double width = std::max(0.5 * distance, 1e-12);
  auto breaks = graded_breaks(1.0, opt.inner_radius, width);
  const auto upper = graded_breaks(1.0, opt.outer_radius, width);
  breaks.insert(breaks.end(), upper.begin() + 1, upper.end());
  const int panels = static_cast<int>(breaks.size()) - 1;
  const int order = std::clamp(nodes / panels, 4, 64);
  const GaussRule rule = composite_gauss(breaks, order);
  const cplx zv = z.value();
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    if (j % static_cast<std::size_t>(order) == 0) k.next_panel();
    k.add(rule.nodes[j] * zv, -kI * kTwoPi * zv * rule.weights[j]);
  }
}

}  // namespace

FormEvaluator curving_basic_contour(const ZPoint& z, const SpecialUnitary& g,
                                    const ContourOptions& opt, const SpectralTolerances& tol) {
  if (!(opt.inner_radius > 0.0 && opt.inner_radius < 1.0 && opt.outer_radius > 1.0))
    throw InvariantError("curving_basic_contour: radii must straddle the unit circle");
  if (opt.nodes < 16) throw InvariantError("curving_basic_contour: need at least 16 nodes");
  const auto eig = eigen_circle(g.matrix(), tol.cluster_tol);
  const double distance = spectral_distance(z, eig);
  if (distance <= tol.tol_spec)
    throw SpectrumError("curving_basic_contour: z lies on the spectrum of g");
  // g is normal, so its Schur form is diagonal up to rounding.
  const Eigen::ComplexSchur<Matrix> schur(g.matrix());
  ContourKernel k{schur.matrixT().diagonal(), Matrix(), {}};
  add_circle(k, z, opt.outer_radius, 1.0, opt.nodes / 4);
  add_circle(k, z, opt.inner_radius, -1.0, opt.nodes / 4);
  add_ray(k, z, distance, opt, opt.nodes / 2);
  k.kernel = pairwise_sum(k.parts);
  const Matrix u = schur.matrixU();
  return FormEvaluator(2, [kernel = std::move(k.kernel), u, g](std::span<const TangentVector> f) {
    const Matrix a = u.adjoint() * g.matrix() * maurer_cartan(g, f[0]) * u;
    const Matrix b = u.adjoint() * g.matrix() * maurer_cartan(g, f[1]) * u;
    const Matrix m = a.cwiseProduct(b.transpose()) - b.cwiseProduct(a.transpose());
    return kernel.cwiseProduct(m).sum() / (8.0 * kPi * kPi);
  });
}

FormEvaluator basic_two_curvature(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                                  const SpectralTolerances& tol) {
  const auto eig = eigen_circle(g.matrix(), tol.cluster_tol);
  const int sign = sign_of(classify(z1, z2, eig, tol));
  if (sign == 0) return FormEvaluator::zero(2);
  const Matrix p = spectral_projection(z1, z2, eig, tol);
  return cplx(sign) * projection_curvature(p, [=](const TangentVector& v) {
    return spectral_projection_derivative(z1, z2, eig, g.matrix() * maurer_cartan(g, v), tol);
  });
}

FormEvaluator basic_three_form(const SpecialUnitary& g) {
  return (-kI / (12.0 * kPi)) * trace_cube_mc(g);
}

FormEvaluator weyl_pullback(const FormEvaluator& form, const TorusElement& t,
                            const ProjectionTuple& flag) {
  return FormEvaluator(form.arity(), [form, t, flag](std::span<const TangentVector> f) {
    TangentFrame pushed;
    pushed.reserve(f.size());
    for (const auto& v : f) pushed.push_back(weyl_pushforward(t, flag, v));
    return form(pushed);
  });
}

// --- pullback of the basic gerbe -------------------------------------------

FormEvaluator curving_pullback(const PullbackPoint& p, const DerivativeOptions& opt) {
  const int n = p.t().dim();
  Matrix coeff = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const cplx pi = p.t().eigenvalue(i), pk = p.t().eigenvalue(k);
      coeff(i, k) = log_branch(pi, p.z()) - log_branch(pk, p.z()) + (pk - pi) / pk;
    }
  return FormEvaluator(2, [coeff, flag = p.flag(), opt](std::span<const TangentVector> f) {
    const Matrix t = tau_matrix(flag, f[0], f[1], opt);
    return kI / (4.0 * kPi) * (coeff.cwiseProduct(t)).sum();
  });
}

FormEvaluator three_curvature_pullback(const TorusElement& t, const ProjectionTuple& flag,
                                       const DerivativeOptions& opt) {
  require_same_dim(t, flag);
  return FormEvaluator(3, [t, flag, opt](std::span<const TangentVector> f) {
    const int n = flag.dim();
    std::array<Matrix, 3> taus;  // τ on the pairs (1,2), (0,2), (0,1)
    taus[0] = tau_matrix(flag, f[1], f[2], opt);
    taus[1] = tau_matrix(flag, f[0], f[2], opt);
    taus[2] = tau_matrix(flag, f[0], f[1], opt);
    std::array<std::vector<Matrix>, 3> dps;
    for (std::size_t m = 0; m < 3; ++m) dps[m] = all_dP(flag, f[m], opt);
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (i == k) continue;
        const cplx ratio = t.eigenvalue(i) / t.eigenvalue(k);
        auto alpha = [&](const TangentVector& v) {
          const cplx ai = log_velocity(v, i), ak = log_velocity(v, k);
          return ai - ak - ratio * ai + ratio * ak;
        };
        sum += alpha(f[0]) * taus[0](i, k) - alpha(f[1]) * taus[1](i, k) +
               alpha(f[2]) * taus[2](i, k);
        std::array<Matrix, 3> a, b;
        for (std::size_t m = 0; m < 3; ++m) {
          a[m] = dps[m][static_cast<std::size_t>(i)];
          b[m] = dps[m][static_cast<std::size_t>(k)];
        }
        sum -= ratio * antisymmetrized_triple(a, b, b);
      }
    return kI / (4.0 * kPi) * sum;
  });
}

FormEvaluator reduced_three_curvature(const TorusElement& t, const ProjectionTuple& flag,
                                      const DerivativeOptions& opt) {
  return three_curvature_cup(t, flag, opt);
}

FormEvaluator beta(const TorusElement& t, const ProjectionTuple& flag,
                   const DerivativeOptions& opt) {
  require_same_dim(t, flag);
  const int n = t.dim();
  Matrix coeff = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k) coeff(i, k) = t.eigenvalue(i) / t.eigenvalue(k);
  return FormEvaluator(2, [coeff, flag, opt](std::span<const TangentVector> f) {
    const Matrix tm = tau_matrix(flag, f[0], f[1], opt);
    return -kI / (4.0 * kPi) * (coeff.cwiseProduct(tm)).sum();
  });
}

FormEvaluator curvature_R(const FiberProductPoint& p, const DerivativeOptions& opt) {
  std::vector<int> h;
  for (int i = 0; i < p.dim(); ++i) h.push_back(h_i(p, i));
  return FormEvaluator(2, [h, flag = p.flag(), opt](std::span<const TangentVector> f) {
    const Matrix t = tau_matrix(flag, f[0], f[1], opt);
    cplx sum = 0.0;
    for (int i = 0; i < flag.dim(); ++i) sum += static_cast<double>(h[static_cast<std::size_t>(i)]) * t(i, i);
    return sum;
  });
}

double verify_stable_iso_relation(const FiberProductPoint& p, std::span<const TangentVector> frame,
                                  const DerivativeOptions& opt) {
  const auto fpb = curving_pullback(PullbackPoint::make(p.flag(), p.t(), p.z()), opt);
  const auto fc = curving_cup(CupPoint::make(p.x(), p.flag()), opt);
  const auto fr = curvature_R(p, opt);
  const auto b = beta(p.t(), p.flag(), opt);
  return std::abs(fpb(frame) - fc(frame) - fr(frame) - b(frame));
}

// --- Deligne cocycles ------------------------------------------------------

namespace {

template <class Map, class Key>
const typename Map::mapped_type& lookup(const Map& m, const Key& key, const char* what) {
  const auto it = m.find(key);
  if (it == m.end()) throw InvariantError(std::string("deligne_cocycle_check: missing ") + what);
  return it->second;
}

}  // namespace

DeligneResiduals deligne_cocycle_check(const DeligneCochain& c, double tol) {
  DeligneResiduals r;
  std::vector<int> idx = c.indices;
  std::sort(idx.begin(), idx.end());
  using Triple = DeligneCochain::Triple;
  auto has = [&](int a, int b, int g) { return c.h.count(Triple{a, b, g}) > 0; };

  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      for (std::size_t g = b + 1; g < idx.size(); ++g)
        for (std::size_t d = g + 1; d < idx.size(); ++d) {
          const int al = idx[a], be = idx[b], ga = idx[g], de = idx[d];
          if (!(has(be, ga, de) && has(al, ga, de) && has(al, be, de) && has(al, be, ga)))
            continue;
          const cplx prod = c.h.at({be, ga, de}) / c.h.at({al, ga, de}) * c.h.at({al, be, de}) /
                            c.h.at({al, be, ga});
          r.cocycle = std::max(r.cocycle, std::abs(prod - 1.0));
        }

  for (const auto& [key, value] : c.h) {
    const auto [al, be, ga] = key;
    (void)value;
    const auto& dlog = lookup(c.dlog_h, key, "h⁻¹dh on a triple overlap");
    const Eigen::VectorXcd lhs = lookup(c.theta, std::pair{be, ga}, "θ on a double overlap") -
                                 lookup(c.theta, std::pair{al, ga}, "θ on a double overlap") +
                                 lookup(c.theta, std::pair{al, be}, "θ on a double overlap") + dlog;
    r.connection = std::max(r.connection, lhs.size() ? lhs.cwiseAbs().maxCoeff() : 0.0);
  }

  for (const auto& [key, value] : c.theta) {
    (void)value;
    const auto [al, be] = key;
    const Eigen::MatrixXcd diff = lookup(c.nu, be, "ν on an index") -
                                  lookup(c.nu, al, "ν on an index") -
                                  lookup(c.dtheta, key, "dθ on a double overlap");
    r.curving = std::max(r.curving, max_abs(diff));
  }

  r.pass = r.cocycle <= tol && r.connection <= tol && r.curving <= tol;
  return r;
}

}  // namespace gerbe
