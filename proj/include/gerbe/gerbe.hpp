#pragma once

// Connective data of the cup product bundle gerbe over T × SU(n)/T and of the
// pullback of the basic bundle gerbe along the Weyl map, together with the
// data relating them: h_i, β, the trivialising curvature F_R, and a cocycle
// predicate for Deligne triples.
//
// Notation: τ_ik = tr(P_i dP_k dP_k). Torus components of a tangent vector are
// phase velocities in turns, so p_i⁻¹dp_i(v) = 2πi·v.real[i].

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gerbe/forms.hpp"
#include "gerbe/spectral.hpp"

namespace gerbe {

/// Point of (ℝ^{n-1} ×_T Y_T) × SU(n)/T.
class FiberProductPoint {
 public:
  static FiberProductPoint make(RealVector x, ZPoint z, TorusElement t, ProjectionTuple flag,
                                const SpectralTolerances& tol = kDefaultSpectralTol);
  /// Uses the torus element determined by x.
  static FiberProductPoint over(RealVector x, ZPoint z, ProjectionTuple flag,
                                const SpectralTolerances& tol = kDefaultSpectralTol);

  const RealVector& x() const { return x_; }
  const ZPoint& z() const { return z_; }
  const TorusElement& t() const { return t_; }
  const ProjectionTuple& flag() const { return flag_; }
  int dim() const { return t_.dim(); }

 private:
  FiberProductPoint(RealVector x, ZPoint z, TorusElement t, ProjectionTuple flag)
      : x_(std::move(x)), z_(z), t_(std::move(t)), flag_(std::move(flag)) {}
  RealVector x_;
  ZPoint z_;
  TorusElement t_;
  ProjectionTuple flag_;
};

inline constexpr double kIntegralTol = 1e-9;

/// d_i(x, y) = y_i − x_i, required to be an integer.
int d_i(const RealVector& x, const RealVector& y, int i, double tol = kIntegralTol);

/// x_i − (1/2πi) log_z p_i(t) before rounding.
cplx h_i_raw(const FiberProductPoint& p, int i);
/// The rounded integer; FibreError if the raw value is not integral within tol.
int h_i(const FiberProductPoint& p, int i, double tol = kIntegralTol);

// --- cup product gerbe -----------------------------------------------------

/// f_c = −Σ x_i τ_ii.
FormEvaluator curving_cup(const CupPoint& p, const DerivativeOptions& opt = {});

/// Two-curvature on the fibre pair ((x, F), (y, F)): −Σ d_i(x, y) τ_ii, the
/// value forced by δ(f_c) with δ(h)(y_1, y_2) = h(y_2) − h(y_1).
FormEvaluator two_curvature_cup(const RealVector& x, const RealVector& y,
                                const ProjectionTuple& flag, const DerivativeOptions& opt = {});

/// ω_c = −(1/2πi) Σ p_i⁻¹dp_i ∧ τ_ii.
FormEvaluator three_curvature_cup(const TorusElement& t, const ProjectionTuple& flag,
                                  const DerivativeOptions& opt = {});

// --- basic gerbe -----------------------------------------------------------

/// f_b(z, g) from the residues of the resolvent integrand at each eigenvalue.
FormEvaluator curving_basic_residue(const ZPoint& z, const SpecialUnitary& g,
                                    const SpectralTolerances& tol = kDefaultSpectralTol);

struct ContourOptions {
  int nodes = 4096;
  double inner_radius = 0.5;
  double outer_radius = 1.5;
};

/// f_b(z, g) by quadrature of the contour integral over a keyhole around the
/// unit circle slit along R_z.
FormEvaluator curving_basic_contour(const ZPoint& z, const SpecialUnitary& g,
                                    const ContourOptions& opt = {},
                                    const SpectralTolerances& tol = kDefaultSpectralTol);

/// Two-curvature of the basic gerbe at (z1, z2, g): ±tr(P dP dP) on Y^{[2]}_±
/// and 0 on Y^{[2]}_0, with P = spectral_projection(z1, z2, g).
FormEvaluator basic_two_curvature(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                                  const SpectralTolerances& tol = kDefaultSpectralTol);

/// −(i/12π) tr(g⁻¹dg)³.
FormEvaluator basic_three_form(const SpecialUnitary& g);

/// Pull a form at weyl_map(t, F) back to T × Proj_n through weyl_pushforward.
FormEvaluator weyl_pullback(const FormEvaluator& form, const TorusElement& t,
                            const ProjectionTuple& flag);

/// f_{p*b} = (i/4π) Σ_{i≠k} (log_z p_i − log_z p_k + (p_k − p_i)p_k⁻¹) τ_ik.
FormEvaluator curving_pullback(const PullbackPoint& p, const DerivativeOptions& opt = {});

/// ω_{p*b} = (i/4π) Σ_{i≠k} [(p_i⁻¹dp_i − p_k⁻¹dp_k − p_k⁻¹dp_i + p_k⁻¹dp_k p_k⁻¹p_i) ∧ τ_ik
///                            − p_i p_k⁻¹ tr(dP_i dP_k dP_k)].
FormEvaluator three_curvature_pullback(const TorusElement& t, const ProjectionTuple& flag,
                                       const DerivativeOptions& opt = {});

/// −(1/2πi) Σ_k p_k⁻¹dp_k ∧ τ_kk.
FormEvaluator reduced_three_curvature(const TorusElement& t, const ProjectionTuple& flag,
                                      const DerivativeOptions& opt = {});

/// β = −(i/4π) Σ_{i≠k} p_i p_k⁻¹ τ_ik.
FormEvaluator beta(const TorusElement& t, const ProjectionTuple& flag,
                   const DerivativeOptions& opt = {});

/// F_R = Σ h_i τ_ii.
FormEvaluator curvature_R(const FiberProductPoint& p, const DerivativeOptions& opt = {});

/// |f_{p*b} − f_c − F_R − β| on the frame.
double verify_stable_iso_relation(const FiberProductPoint& p, std::span<const TangentVector> frame,
                                  const DerivativeOptions& opt = {});

// --- Deligne cocycles ------------------------------------------------------

/// Sampled Deligne 2-cochain on a finite nerve, all forms given by their
/// components at one common sample point of a chart of dimension `dim`.
struct DeligneCochain {
  using Pair = std::pair<int, int>;
  using Triple = std::tuple<int, int, int>;

  int dim = 0;
  std::vector<int> indices;
  std::map<Triple, cplx> h;                 // U(1)-valued
  std::map<Triple, Eigen::VectorXcd> dlog_h; // components of h⁻¹dh
  std::map<Pair, Eigen::VectorXcd> theta;    // 1-form components
  std::map<Pair, Eigen::MatrixXcd> dtheta;   // 2-form components (antisymmetric)
  std::map<int, Eigen::MatrixXcd> nu;        // 2-form components (antisymmetric)
};

struct DeligneResiduals {
  double cocycle = 0.0;     // max |h_βγδ h_αγδ⁻¹ h_αβδ h_αβγ⁻¹ − 1|
  double connection = 0.0;  // max |θ_βγ − θ_αγ + θ_αβ + h⁻¹dh|
  double curving = 0.0;     // max |ν_β − ν_α − dθ_αβ|
  bool pass = false;
};

/// Checks the three cocycle equations on every ordered overlap of the nerve.
/// Throws InvariantError when overlap data is missing.
DeligneResiduals deligne_cocycle_check(const DeligneCochain& c, double tol = 1e-9);

}  // namespace gerbe
