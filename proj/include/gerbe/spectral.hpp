#pragma once

// Circle-ordered spectral data of unitary matrices: the space Z = U(1)∖{1}
// with its order by argument, triple classification, eigenprojections, the
// sign functions ε_i and the branch logarithm log_z.

#include <vector>

#include "gerbe/lie_core.hpp"

namespace gerbe {

struct SpectralTolerances {
  double tol_spec = 1e-8;     // minimum distance of z from the spectrum
  double tol_one = 1e-10;     // minimum distance of z from 1
  double tol_ray = 1e-10;     // minimum distance of ζ from the cut ray R_z
  double cluster_tol = 1e-8;  // eigenvalues closer than this are merged
};

inline constexpr SpectralTolerances kDefaultSpectralTol{};

/// Point of Z = U(1)∖{1}, stored with arg ∈ (0, 2π).
class ZPoint {
 public:
  static ZPoint from_arg(double arg, double tol_one = kDefaultSpectralTol.tol_one);
  static ZPoint from_value(cplx z, double tol_one = kDefaultSpectralTol.tol_one);

  cplx value() const { return std::polar(1.0, arg_); }
  double arg() const { return arg_; }

 private:
  explicit ZPoint(double arg) : arg_(arg) {}
  double arg_;
};

/// arg of a unit complex number in [0, 2π).
double circle_arg(cplx lambda);

struct Eigenpair {
  cplx lambda;        // snapped to |λ| = 1
  Matrix projection;  // orthogonal projection onto the λ-eigenspace
  int multiplicity;
};

struct EigenDecomposition {
  std::vector<Eigenpair> pairs;

  Matrix reconstruct() const;
  int dim() const;
};

/// Eigenvalues and eigenprojections of a unitary matrix. Eigenvalues whose
/// circular distance is below `cluster_tol` share one projection.
EigenDecomposition eigen_circle(const Matrix& g,
                                double cluster_tol = kDefaultSpectralTol.cluster_tol);

/// Exact decomposition of a torus element: the clustered {p_i(t)} with the
/// coordinate projections summed per cluster.
EigenDecomposition eigen_circle(const TorusElement& t,
                                double cluster_tol = kDefaultSpectralTol.cluster_tol);

/// Distance from z to the nearest eigenvalue.
double spectral_distance(const ZPoint& z, const EigenDecomposition& eig);

/// True iff λ lies in the component of U(1)∖{z1, z2} not containing 1.
/// Throws DegenerateInputError when arg λ coincides with arg z1 or arg z2
/// within `tol`. λ = 1 is never between.
bool between(cplx lambda, const ZPoint& z1, const ZPoint& z2,
             double tol = kDefaultSpectralTol.tol_spec);
bool between(const ZPoint& lambda, const ZPoint& z1, const ZPoint& z2,
             double tol = kDefaultSpectralTol.tol_spec);

enum class TripleClass { Positive, Null, Negative };

/// +1, 0, -1 for Positive, Null, Negative.
int sign_of(TripleClass c);

struct SpectralTriple {
  ZPoint z1;
  ZPoint z2;
  SpecialUnitary g;
  TripleClass kind;
};

/// Positive iff some eigenvalue λ has arg z1 > arg λ > arg z2, Negative iff
/// arg z2 > arg λ > arg z1, Null otherwise.
SpectralTriple classify_triple(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                               const SpectralTolerances& tol = kDefaultSpectralTol);
TripleClass classify(const ZPoint& z1, const ZPoint& z2, const EigenDecomposition& eig,
                     const SpectralTolerances& tol = kDefaultSpectralTol);

/// Projection onto the sum of eigenspaces with eigenvalue between z1 and z2
/// (zero for Null triples; Negative triples use the swapped pair).
Matrix spectral_projection(const ZPoint& z1, const ZPoint& z2, const EigenDecomposition& eig,
                           const SpectralTolerances& tol = kDefaultSpectralTol);
Matrix spectral_projection(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                           const SpectralTolerances& tol = kDefaultSpectralTol);

/// Derivative of spectral_projection(z1, z2, ·) at g in the direction dg,
/// by the first divided difference of the indicator function.
Matrix spectral_projection_derivative(const ZPoint& z1, const ZPoint& z2,
                                      const EigenDecomposition& eig, const Matrix& dg,
                                      const SpectralTolerances& tol = kDefaultSpectralTol);

/// ε_i(z1, z2, t) ∈ {-1, 0, 1}.
int epsilon_i(const ZPoint& z1, const ZPoint& z2, const TorusElement& t, int i,
              const SpectralTolerances& tol = kDefaultSpectralTol);

/// Branch of the logarithm on ℂ∖R_z with log_z(1) = 0; the imaginary part lies
/// in (arg z - 2π, arg z).
cplx log_branch(cplx zeta, const ZPoint& z, double tol_ray = kDefaultSpectralTol.tol_ray);

/// Point of p⁻¹(Y): (flag, t, z) with z off the spectrum of t.
class PullbackPoint {
 public:
  static PullbackPoint make(ProjectionTuple flag, TorusElement t, ZPoint z,
                            const SpectralTolerances& tol = kDefaultSpectralTol);

  const ProjectionTuple& flag() const { return flag_; }
  const TorusElement& t() const { return t_; }
  const ZPoint& z() const { return z_; }

 private:
  PullbackPoint(ProjectionTuple flag, TorusElement t, ZPoint z)
      : flag_(std::move(flag)), t_(std::move(t)), z_(z) {}
  ProjectionTuple flag_;
  TorusElement t_;
  ZPoint z_;
};

}  // namespace gerbe
