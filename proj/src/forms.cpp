#include "gerbe/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace gerbe {

// --- FormEvaluator ---------------------------------------------------------

FormEvaluator FormEvaluator::zero(int arity) {
  return FormEvaluator(arity, [](std::span<const TangentVector>) { return cplx(0.0); });
}

FormEvaluator FormEvaluator::constant(cplx value) {
  return FormEvaluator(0, [value](std::span<const TangentVector>) { return value; });
}

cplx FormEvaluator::operator()(std::span<const TangentVector> frame) const {
  if (static_cast<int>(frame.size()) != arity_) {
    std::ostringstream os;
    os << "form of arity " << arity_ << " evaluated on " << frame.size() << " vectors";
    throw DimensionError(os.str());
  }
  return fn_(frame);
}

FormEvaluator operator+(const FormEvaluator& a, const FormEvaluator& b) {
  if (a.arity_ != b.arity_) throw DimensionError("form sum: arity mismatch");
  return FormEvaluator(a.arity_, [a, b](std::span<const TangentVector> f) { return a(f) + b(f); });
}

FormEvaluator operator-(const FormEvaluator& a, const FormEvaluator& b) {
  if (a.arity_ != b.arity_) throw DimensionError("form difference: arity mismatch");
  return FormEvaluator(a.arity_, [a, b](std::span<const TangentVector> f) { return a(f) - b(f); });
}

FormEvaluator operator*(cplx s, const FormEvaluator& a) {
  return FormEvaluator(a.arity_, [s, a](std::span<const TangentVector> f) { return s * a(f); });
}

FormEvaluator linear_combination(const std::vector<std::pair<cplx, FormEvaluator>>& terms) {
  if (terms.empty()) throw DimensionError("linear_combination: no terms");
  const int arity = terms.front().second.arity();
  for (const auto& t : terms)
    if (t.second.arity() != arity) throw DimensionError("linear_combination: arity mismatch");
  return FormEvaluator(arity, [terms](std::span<const TangentVector> f) {
    cplx sum = 0.0;
    for (const auto& [c, w] : terms) sum += c * w(f);
    return sum;
  });
}

double alternation_defect(const FormEvaluator& form, std::span<const TangentVector> frame) {
  const cplx base = form(frame);
  double worst = 0.0;
  TangentFrame swapped(frame.begin(), frame.end());
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = a + 1; b < frame.size(); ++b) {
      std::swap(swapped[a], swapped[b]);
      worst = std::max(worst, std::abs(form(swapped) + base));
      std::swap(swapped[a], swapped[b]);
    }
  return worst;
}

double multilinearity_defect(const FormEvaluator& form, std::span<const TangentVector> frame,
                             int slot, const TangentVector& w, double a) {
  TangentFrame f(frame.begin(), frame.end());
  const auto k = static_cast<std::size_t>(slot);
  const TangentVector v = f[k];
  const cplx fv = form(f);
  f[k] = w;
  const cplx fw = form(f);
  f[k] = v * a + w;
  return std::abs(form(f) - a * fv - fw);
}

// --- derivatives -----------------------------------------------------------

namespace {

void require_generator(const ProjectionTuple& flag, const TangentVector& v) {
  if (v.gen.rows() != flag.dim() || v.gen.cols() != flag.dim())
    throw BaseMismatchError("tangent generator does not match the flag dimension");
}

}  // namespace

Matrix dP(const ProjectionTuple& flag, int i, const TangentVector& v) {
  require_generator(flag, v);
  return commutator(v.gen, flag[i]);
}

Matrix dP_fd(const ProjectionTuple& flag, int i, const TangentVector& v, double step) {
  require_generator(flag, v);
  const Matrix up = exp_anti_hermitian(step * v.gen);
  const Matrix dn = exp_anti_hermitian(-step * v.gen);
  return (up * flag[i] * up.adjoint() - dn * flag[i] * dn.adjoint()) / (2.0 * step);
}

Matrix dP(const ProjectionTuple& flag, int i, const TangentVector& v,
          const DerivativeOptions& opt) {
  return opt.mode == DerivativeMode::Exact ? dP(flag, i, v) : dP_fd(flag, i, v, opt.step);
}

Matrix maurer_cartan(const SpecialUnitary& g, const TangentVector& v) {
  if (v.gen.rows() != g.dim() || v.gen.cols() != g.dim())
    throw BaseMismatchError("maurer_cartan: tangent not based at g");
  return v.gen;
}

// --- trace forms -----------------------------------------------------------

FormEvaluator trace_form(const ProjectionTuple& flag, int i, int j, int k,
                         const DerivativeOptions& opt) {
  return FormEvaluator(2, [flag, i, j, k, opt](std::span<const TangentVector> f) {
    const Matrix ax = dP(flag, j, f[0], opt), ay = dP(flag, j, f[1], opt);
    const Matrix bx = dP(flag, k, f[0], opt), by = dP(flag, k, f[1], opt);
    return (flag[i] * (ax * by - ay * bx)).trace();
  });
}

FormEvaluator two_form_trPdPdP(const ProjectionTuple& flag, int i, const DerivativeOptions& opt) {
  return trace_form(flag, i, i, i, opt);
}

FormEvaluator projection_curvature(Matrix p, std::function<Matrix(const TangentVector&)> dp) {
  return FormEvaluator(2, [p = std::move(p), dp = std::move(dp)](std::span<const TangentVector> f) {
    const Matrix a = dp(f[0]), b = dp(f[1]);
    return (p * (a * b - b * a)).trace();
  });
}

namespace {

// Permutations of {0,1,2} with their signs.
constexpr std::array<std::array<int, 4>, 6> kS3{{
    {0, 1, 2, +1},
    {1, 2, 0, +1},
    {2, 0, 1, +1},
    {1, 0, 2, -1},
    {0, 2, 1, -1},
    {2, 1, 0, -1},
}};

}  // namespace

cplx antisymmetrized_triple(const std::array<Matrix, 3>& a, const std::array<Matrix, 3>& b,
                            const std::array<Matrix, 3>& c) {
  cplx sum = 0.0;
  for (const auto& s : kS3)
    sum += static_cast<double>(s[3]) * (a[static_cast<std::size_t>(s[0])] *
                                        b[static_cast<std::size_t>(s[1])] *
                                        c[static_cast<std::size_t>(s[2])])
                                           .trace();
  return sum;
}


FormEvaluator trace_three_form(const ProjectionTuple& flag, int i, int j, int k,
                               const DerivativeOptions& opt) {
  return FormEvaluator(3, [flag, i, j, k, opt](std::span<const TangentVector> f) {
    std::array<Matrix, 3> a, b, c;
    for (std::size_t m = 0; m < 3; ++m) {
      a[m] = dP(flag, i, f[m], opt);
      b[m] = dP(flag, j, f[m], opt);
      c[m] = dP(flag, k, f[m], opt);
    }
    return antisymmetrized_triple(a, b, c);
  });
}

FormEvaluator log_derivative_form(int i) {
  return FormEvaluator(1, [i](std::span<const TangentVector> f) {
    if (f[0].real.size() <= i) throw BaseMismatchError("log_derivative_form: no torus component");
    return kI * kTwoPi * f[0].real[i];
  });
}

FormEvaluator trace_cube_mc(const SpecialUnitary& g) {
  return FormEvaluator(3, [g](std::span<const TangentVector> f) {
    std::array<Matrix, 3> xi;
    for (std::size_t m = 0; m < 3; ++m) xi[m] = maurer_cartan(g, f[m]);
    return antisymmetrized_triple(xi, xi, xi);
  });
}

FormEvaluator wedge(const FormEvaluator& a, const FormEvaluator& b, int max_arity) {
  const int k1 = a.arity(), k2 = b.arity(), k = k1 + k2;
  if (max_arity > 0 && k > max_arity) {
    std::ostringstream os;
    os << "wedge: arity " << k << " exceeds dimension " << max_arity;
    throw DimensionError(os.str());
  }
  // Enumerate (k1, k2)-shuffles as k1-subsets of positions, with sign
  // (−1)^{Σ (pos_j − j)}.
  std::vector<std::pair<std::vector<int>, double>> shuffles;
  std::vector<int> pos(static_cast<std::size_t>(k1));
  for (int j = 0; j < k1; ++j) pos[static_cast<std::size_t>(j)] = j;
  while (true) {
    int inversions = 0;
    for (int j = 0; j < k1; ++j) inversions += pos[static_cast<std::size_t>(j)] - j;
    shuffles.emplace_back(pos, inversions % 2 == 0 ? 1.0 : -1.0);
    int j = k1 - 1;
    while (j >= 0 && pos[static_cast<std::size_t>(j)] == k - k1 + j) --j;
    if (j < 0) break;
    ++pos[static_cast<std::size_t>(j)];
    for (int m = j + 1; m < k1; ++m)
      pos[static_cast<std::size_t>(m)] = pos[static_cast<std::size_t>(m - 1)] + 1;
  }
  return FormEvaluator(k, [a, b, k, shuffles = std::move(shuffles)](
                              std::span<const TangentVector> f) {
    cplx sum = 0.0;
    TangentFrame left, right;
    std::vector<bool> chosen(static_cast<std::size_t>(k));
    for (const auto& [sel, sign] : shuffles) {
      std::fill(chosen.begin(), chosen.end(), false);
      for (int p : sel) chosen[static_cast<std::size_t>(p)] = true;
      left.clear();
      right.clear();
      for (int m = 0; m < k; ++m)
        (chosen[static_cast<std::size_t>(m)] ? left : right).push_back(f[static_cast<std::size_t>(m)]);
      sum += sign * a(left) * b(right);
    }
    return sum;
  });
}

// --- exterior derivative ---------------------------------------------------

namespace {

cplx central_difference(const CoordinateForm& form, const Params& s, int axis,
                        std::span<const int> idx, double h, const FdOptions& opt) {
  Params up = s, dn = s;
  up[axis] += h;
  dn[axis] -= h;
  if (!opt.domain.empty()) {
    const auto& [lo, hi] = opt.domain[static_cast<std::size_t>(axis)];
    if (up[axis] > hi || dn[axis] < lo)
      throw DimensionError("numerical_d: finite-difference probe leaves the chart");
  }
  return (form.component(up, idx) - form.component(dn, idx)) / (2.0 * h);
}

}  // namespace

CoordinateForm numerical_d(CoordinateForm form, FdOptions opt) {
  const int arity = form.arity + 1;
  return {arity, [form = std::move(form), opt = std::move(opt)](const Params& s,
                                                                 std::span<const int> idx) {
            cplx sum = 0.0;
            std::vector<int> rest;
            for (std::size_t i = 0; i < idx.size(); ++i) {
              rest.clear();
              for (std::size_t m = 0; m < idx.size(); ++m)
                if (m != i) rest.push_back(idx[m]);
              cplx deriv = central_difference(form, s, idx[i], rest, opt.step, opt);
              if (opt.richardson) {
                const cplx half = central_difference(form, s, idx[i], rest, 0.5 * opt.step, opt);
                deriv = (4.0 * half - deriv) / 3.0;
              }
              sum += (i % 2 == 0 ? 1.0 : -1.0) * deriv;
            }
            return sum;
          }};
}

}  // namespace gerbe
