#pragma once

// Gauss–Legendre quadrature of top-degree forms over coordinate charts of
// S² ≅ SU(2)/T, SU(2) ≅ S³ and the surfaces Σ_n ⊂ T × Proj_n, and the
// integrals built on them.

#include <string>
#include <vector>

#include "gerbe/forms.hpp"
#include "gerbe/gerbe.hpp"
#include "gerbe/parallel.hpp"
#include "gerbe/quadrature.hpp"

namespace gerbe {

struct QuadratureGrid {
  std::vector<Params> nodes;
  std::vector<double> weights;
};

/// Tensor product of counts[a]-point Gauss–Legendre rules over the box.
QuadratureGrid tensor_grid(const std::vector<std::pair<double, double>>& domain,
                           const std::vector<int>& counts);

/// Σ_j w_j ω_{map(s_j)}(∂_1, …, ∂_k) in chart order, summed pairwise so the
/// result does not depend on the worker count.
template <class Point>
cplx integrate_form(const FormField<Point>& field, const Chart<Point>& chart,
                    const QuadratureGrid& grid) {
  if (!grid.nodes.empty() && grid.nodes.front().size() != chart.dim)
    throw DimensionError("integrate_form: grid and chart dimensions differ");
  const auto values = parallel_map<cplx>(grid.nodes.size(), [&](std::size_t j) {
    const Params& s = grid.nodes[j];
    const auto form = field(chart.map(s));
    if (form.arity() != chart.dim)
      throw DimensionError("integrate_form: form degree differs from chart dimension");
    return grid.weights[j] * form(chart.tangents(s));
  });
  return pairwise_sum(values);
}

template <class Point>
QuadratureGrid tensor_grid(const Chart<Point>& chart, const std::vector<int>& counts) {
  return tensor_grid(chart.domain, counts);
}

// --- charts ----------------------------------------------------------------

/// Unit vector n̂(θ, φ) and the projection ½(I + n̂·σ).
Matrix bloch_projection(double theta, double phi);

/// (θ, φ) ∈ (0, π) × (0, 2π) ↦ (P, I − P), P = ½(I + n̂·σ); the coordinate
/// fields are generated by −(i/2) ω·σ with ω_θ = (−sin φ, cos φ, 0), ω_φ = ẑ.
Chart<ProjectionTuple> bloch_chart();

/// Euler angles g = e^{αξ₃} e^{βξ₂} e^{γξ₃}, ξ_a = iσ_a/2, over
/// (0, 2π) × (0, π) × (0, 4π). orientation = −1 reflects α.
Chart<SpecialUnitary> euler_chart_su2(int orientation = 1);

/// Haar density of euler_chart_su2 with respect to dα dβ dγ: sin β / 8.
double euler_jacobian(const Params& s);

/// Σ_n: torus frozen at t0, flag given by the Bloch chart in the upper-left
/// 2×2 block and the remaining coordinate projections.
Chart<FlagPoint> sigma_surface(int n, const TorusElement& t0);
/// t0 with p_1 = e^{iπ/4}, p_2 = e^{−iπ/4}, p_k = 1 for k ≥ 3.
TorusElement default_sigma_torus(int n);

/// Chart of T × Proj_n near `base`: torus coordinates u_a along e_a − e_n
/// (a < n), flag coordinates w_b acting by U(w) = Π_b exp(w_b ξ_b).
Chart<FlagPoint> torus_flag_chart(const FlagPoint& base, std::vector<Matrix> generators,
                                  double half_width);
/// The same chart with ℝ^{n-1} in place of T (points are CupPoints).
Chart<CupPoint> cup_flag_chart(const CupPoint& base, std::vector<Matrix> generators,
                               double half_width);

/// Off-diagonal generators E_kl − E_lk and i(E_kl + E_lk), k < l, which span
/// the directions of Proj_n.
std::vector<Matrix> flag_generators(int n);

// --- integrals -------------------------------------------------------------

/// (i/2π) ∫ tr(P_i dP_i dP_i) over a closed surface chart of flags.
double chern_number(int i, const Chart<ProjectionTuple>& chart, const QuadratureGrid& grid);
double chern_number(int i, const Chart<ProjectionTuple>& chart, int n_theta, int n_phi);

/// Orientation of euler_chart_su2 under which the WZW integral is +1.
inline constexpr int kWzwOrientation = -1;

/// −(1/24π²) ∫ tr(g⁻¹dg)³ over euler_chart_su2 with m³ nodes.
double wzw_normalization(int m, int orientation = kWzwOrientation);

struct HolonomyResult {
  cplx integral;  // ∫_{Σ_n} β_n
  cplx ratio;     // exp(integral)
};

HolonomyResult holonomy_obstruction(int n, int n_theta, int n_phi);

/// −(i/4π)(p² − p⁻²) ∫ tr(P dP dP) with p = p_1 of default_sigma_torus.
cplx holonomy_oracle(int n_theta, int n_phi);

}  // namespace gerbe
