#pragma once

// Pointwise evaluation of matrix-valued differential forms.
//
// Conventions: k-forms are alternating multilinear maps on tangent frames;
// wedge products use the determinant convention (sum over shuffles, no 1/k!
// factor), so (α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X) and
// dω(X_0..X_k) = Σ (−1)^i X_i ω(X_0..X̂_i..X_k) on commuting coordinate fields.

#include <array>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gerbe/lie_core.hpp"

namespace gerbe {

using TangentFrame = std::vector<TangentVector>;

/// A k-form at a fixed base point.
class FormEvaluator {
 public:
  using Fn = std::function<cplx(std::span<const TangentVector>)>;

  FormEvaluator(int arity, Fn fn) : arity_(arity), fn_(std::move(fn)) {}

  static FormEvaluator zero(int arity);
  static FormEvaluator constant(cplx value);

  int arity() const { return arity_; }
  cplx operator()(std::span<const TangentVector> frame) const;
  cplx operator()(std::initializer_list<TangentVector> frame) const {
    return (*this)(std::span<const TangentVector>(frame.begin(), frame.size()));
  }

  friend FormEvaluator operator+(const FormEvaluator& a, const FormEvaluator& b);
  friend FormEvaluator operator-(const FormEvaluator& a, const FormEvaluator& b);
  friend FormEvaluator operator*(cplx s, const FormEvaluator& a);

 private:
  int arity_;
  Fn fn_;
};

/// Σ_i c_i ω_i for forms of equal arity.
FormEvaluator linear_combination(const std::vector<std::pair<cplx, FormEvaluator>>& terms);

/// Largest |ω(..Y..X..) + ω(..X..Y..)| over all transpositions of the frame.
double alternation_defect(const FormEvaluator& form, std::span<const TangentVector> frame);

/// |ω(.., a·v + w, ..) − a·ω(.., v, ..) − ω(.., w, ..)| in the given slot.
double multilinearity_defect(const FormEvaluator& form, std::span<const TangentVector> frame,
                             int slot, const TangentVector& w, double a);

// --- derivatives of projections -------------------------------------------

enum class DerivativeMode { Exact, FiniteDifference };

struct DerivativeOptions {
  DerivativeMode mode = DerivativeMode::Exact;
  double step = 1e-5;
};

/// dP_i(v) = [ξ, P_i] for the flag direction generated by ξ = v.gen.
Matrix dP(const ProjectionTuple& flag, int i, const TangentVector& v);
/// Central difference of P_i along s ↦ exp(sξ) P_i exp(−sξ).
Matrix dP_fd(const ProjectionTuple& flag, int i, const TangentVector& v, double step);
Matrix dP(const ProjectionTuple& flag, int i, const TangentVector& v,
          const DerivativeOptions& opt);

/// (g⁻¹dg)(v) = v.gen for v = d/ds g·exp(s·v.gen).
Matrix maurer_cartan(const SpecialUnitary& g, const TangentVector& v);

// --- trace forms -----------------------------------------------------------

/// 2-form tr(P_i dP_j dP_k): (X,Y) ↦ tr(P_i (dP_j(X) dP_k(Y) − dP_j(Y) dP_k(X))).
FormEvaluator trace_form(const ProjectionTuple& flag, int i, int j, int k,
                         const DerivativeOptions& opt = {});

/// tr(P_i dP_i dP_i), the curvature of the projected trivial connection on
/// the image line bundle of P_i.
FormEvaluator two_form_trPdPdP(const ProjectionTuple& flag, int i,
                               const DerivativeOptions& opt = {});

/// tr(P dP dP) for an arbitrary projection P with a supplied derivative.
FormEvaluator projection_curvature(Matrix p, std::function<Matrix(const TangentVector&)> dp);

/// 3-form tr(dP_i dP_j dP_k) = Σ_{σ∈S_3} sgn σ tr(dP_i(X_σ1) dP_j(X_σ2) dP_k(X_σ3)).
FormEvaluator trace_three_form(const ProjectionTuple& flag, int i, int j, int k,
                               const DerivativeOptions& opt = {});

/// Σ_{σ∈S_3} sgn σ tr(a_σ1 b_σ2 c_σ3) for per-vector matrix values a, b, c.
cplx antisymmetrized_triple(const std::array<Matrix, 3>& a, const std::array<Matrix, 3>& b,
                            const std::array<Matrix, 3>& c);

/// p_i⁻¹ dp_i on the torus factor: X ↦ 2πi·X.real[i].
FormEvaluator log_derivative_form(int i);

/// 3-form Σ_{σ∈S_3} sgn σ tr(ξ_σ1 ξ_σ2 ξ_σ3) with ξ = g⁻¹dg, i.e. tr(g⁻¹dg)³.
FormEvaluator trace_cube_mc(const SpecialUnitary& g);

/// Shuffle product without 1/k! normalisation. Throws DimensionError when the
/// combined arity exceeds `max_arity` (if positive).
FormEvaluator wedge(const FormEvaluator& a, const FormEvaluator& b, int max_arity = 0);

// --- charts and the exterior derivative -----------------------------------

using Params = Eigen::VectorXd;

/// Coordinate chart: parameter box, parameter → point, parameter → coordinate
/// tangent vectors ∂/∂s_a at the image point.
template <class Point>
struct Chart {
  int dim = 0;
  std::vector<std::pair<double, double>> domain;
  std::function<Point(const Params&)> map;
  std::function<std::vector<TangentVector>(const Params&)> tangents;

  bool contains(const Params& s) const {
    for (int a = 0; a < dim; ++a)
      if (!(s[a] >= domain[static_cast<std::size_t>(a)].first &&
            s[a] <= domain[static_cast<std::size_t>(a)].second))
        return false;
    return true;
  }
};

template <class Point>
using FormField = std::function<FormEvaluator(const Point&)>;

/// Component function of a k-form in a chart: (s, a_1..a_k) ↦ ω_s(∂_{a_1}, .., ∂_{a_k}).
struct CoordinateForm {
  int arity = 0;
  std::function<cplx(const Params&, std::span<const int>)> component;

  cplx operator()(const Params& s, std::initializer_list<int> idx) const {
    return component(s, std::span<const int>(idx.begin(), idx.size()));
  }
};

template <class Point>
Params midpoint(const Chart<Point>& chart) {
  Params s(chart.dim);
  for (int a = 0; a < chart.dim; ++a)
    s[a] = 0.5 * (chart.domain[static_cast<std::size_t>(a)].first +
                  chart.domain[static_cast<std::size_t>(a)].second);
  return s;
}

/// Components of a form field on the chart's coordinate frames.
template <class Point>
CoordinateForm components(FormField<Point> field, Chart<Point> chart) {
  const int arity = field(chart.map(midpoint(chart))).arity();
  return {arity, [field = std::move(field), chart = std::move(chart)](
                     const Params& s, std::span<const int> idx) {
            const auto basis = chart.tangents(s);
            TangentFrame frame;
            frame.reserve(idx.size());
            for (int a : idx) frame.push_back(basis[static_cast<std::size_t>(a)]);
            return field(chart.map(s))(frame);
          }};
}

struct FdOptions {
  double step = 1e-5;
  bool richardson = false;
  /// Parameter box for the probe points; empty means unbounded.
  std::vector<std::pair<double, double>> domain;
};

/// Exterior derivative of a coordinate form by central differences:
/// dω(∂_0..∂_k) = Σ (−1)^i ∂_i ω(∂_0..∂̂_i..∂_k). Error O(h²), or O(h⁴) with
/// Richardson extrapolation. Throws DimensionError when a probe leaves the
/// domain.
CoordinateForm numerical_d(CoordinateForm form, FdOptions opt = {});

template <class Point>
CoordinateForm numerical_d(FormField<Point> field, const Chart<Point>& chart, FdOptions opt = {}) {
  if (opt.domain.empty()) opt.domain = chart.domain;
  return numerical_d(components(std::move(field), chart), std::move(opt));
}

// --- simplicial δ ---------------------------------------------------------

/// Form on a fibre product Y^{[q]}, evaluated at a q-tuple of points. Factors of
/// one fibre product share the frame because they cover the same base point.
template <class Point>
using TupleFormField = std::function<FormEvaluator(std::span<const Point>)>;

/// Lift a form on Y to a TupleFormField on 1-tuples.
template <class Point>
TupleFormField<Point> on_single(FormField<Point> field) {
  return [field = std::move(field)](std::span<const Point> pts) {
    if (pts.size() != 1) throw DimensionError("on_single: expected a 1-tuple");
    return field(pts[0]);
  };
}

/// δ = Σ_{i=1}^{p} (−1)^{i+1} π_i^* where π_i omits the i-th factor; on a
/// function, δ(h)(y_1, y_2) = h(y_2) − h(y_1).
template <class Point>
FormEvaluator simplicial_delta(const TupleFormField<Point>& form, std::span<const Point> tuple) {
  if (tuple.size() < 2) throw DimensionError("simplicial_delta: need at least a pair");
  std::vector<FormEvaluator> faces;
  faces.reserve(tuple.size());
  for (std::size_t omit = 0; omit < tuple.size(); ++omit) {
    std::vector<Point> face;
    face.reserve(tuple.size() - 1);
    for (std::size_t j = 0; j < tuple.size(); ++j)
      if (j != omit) face.push_back(tuple[j]);
    faces.push_back(form(std::span<const Point>(face)));
  }
  const int arity = faces.front().arity();
  for (const auto& f : faces)
    if (f.arity() != arity) throw DimensionError("simplicial_delta: face arity mismatch");
  return FormEvaluator(arity, [faces = std::move(faces)](std::span<const TangentVector> frame) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < faces.size(); ++i)
      sum += (i % 2 == 0 ? 1.0 : -1.0) * faces[i](frame);
    return sum;
  });
}

}  // namespace gerbe
