#include "gerbe/spectral.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gerbe {

// --- ZPoint ----------------------------------------------------------------

ZPoint ZPoint::from_arg(double arg, double tol_one) {
  if (!(arg > 0.0 && arg < kTwoPi)) {
    std::ostringstream os;
    os << "ZPoint: arg " << arg << " outside (0, 2π)";
    throw InvariantError(os.str());
  }
  if (std::abs(std::polar(1.0, arg) - 1.0) <= tol_one)
    throw InvariantError("ZPoint: z too close to 1");
  return ZPoint(arg);
}

ZPoint ZPoint::from_value(cplx z, double tol_one) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InvariantError("ZPoint: |z| != 1");
  return from_arg(circle_arg(z), tol_one);
}

double circle_arg(cplx lambda) {
  double a = std::arg(lambda);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// --- eigen decomposition ---------------------------------------------------

Matrix EigenDecomposition::reconstruct() const {
  const Eigen::Index n = pairs.empty() ? 0 : pairs.front().projection.rows();
  Matrix g = Matrix::Zero(n, n);
  for (const auto& p : pairs) g += p.lambda * p.projection;
  return g;
}

int EigenDecomposition::dim() const {
  int n = 0;
  for (const auto& p : pairs) n += p.multiplicity;
  return n;
}

namespace {

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, kTwoPi - d);
}

struct RawEigen {
  double arg;
  cplx lambda;
  Eigen::VectorXcd vec;
};

// Groups eigenvalues sorted by argument into clusters of circular distance
// below tol, including the wrap-around between the last and first entries.
EigenDecomposition cluster(std::vector<RawEigen> raw, double tol, Eigen::Index n) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.arg < b.arg; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!groups.empty() && circular_distance(raw[groups.back().back()].arg, raw[k].arg) < tol)
      groups.back().push_back(k);
    else
      groups.push_back({k});
  }
  if (groups.size() > 1 &&
      circular_distance(raw[groups.back().back()].arg, raw[groups.front().front()].arg) < tol) {
    groups.front().insert(groups.front().begin(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }
  EigenDecomposition out;
  for (const auto& grp : groups) {
    Matrix proj = Matrix::Zero(n, n);
    cplx mean = 0.0;
    for (auto k : grp) {
      proj += raw[k].vec * raw[k].vec.adjoint();
      mean += raw[k].lambda;
    }
    out.pairs.push_back({mean / std::abs(mean), std::move(proj), static_cast<int>(grp.size())});
  }
  return out;
}

}  // namespace

EigenDecomposition eigen_circle(const Matrix& g, double cluster_tol) {
  const Eigen::Index n = g.rows();
  if (n != g.cols() || n == 0) throw DimensionError("eigen_circle: matrix not square");
  if (max_abs(g.adjoint() * g - Matrix::Identity(n, n)) > 1e-10)
    throw InvariantError("eigen_circle: matrix is not unitary");
  // A unitary matrix is normal, so its Schur form is diagonal and the Schur
  // vectors are an orthonormal eigenbasis even for repeated eigenvalues.
  Eigen::ComplexSchur<Matrix> schur(g);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  std::vector<RawEigen> raw;
  raw.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = t(k, k) / std::abs(t(k, k));
    raw.push_back({circle_arg(lam), lam, q.col(k)});
  }
  return cluster(std::move(raw), cluster_tol, n);
}

EigenDecomposition eigen_circle(const TorusElement& t, double cluster_tol) {
  const int n = t.dim();
  std::vector<RawEigen> raw;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e[i] = 1.0;
    const cplx lam = t.eigenvalue(i);
    raw.push_back({circle_arg(lam), lam, std::move(e)});
  }
  return cluster(std::move(raw), cluster_tol, n);
}

double spectral_distance(const ZPoint& z, const EigenDecomposition& eig) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : eig.pairs) d = std::min(d, std::abs(z.value() - p.lambda));
  return d;
}

// --- ordering --------------------------------------------------------------

bool between(cplx lambda, const ZPoint& z1, const ZPoint& z2, double tol) {
  const double a = circle_arg(lambda);
  if (std::abs(lambda - 1.0) <= tol) return false;
  if (std::abs(a - z1.arg()) <= tol || std::abs(a - z2.arg()) <= tol) {
    std::ostringstream os;
    os << "between: arg " << a << " coincides with an endpoint";
    throw DegenerateInputError(os.str());
  }
  const double lo = std::min(z1.arg(), z2.arg());
  const double hi = std::max(z1.arg(), z2.arg());
  return lo < a && a < hi;
}

bool between(const ZPoint& lambda, const ZPoint& z1, const ZPoint& z2, double tol) {
  return between(lambda.value(), z1, z2, tol);
}

int sign_of(TripleClass c) {
  switch (c) {
    case TripleClass::Positive:
      return 1;
    case TripleClass::Negative:
      return -1;
    case TripleClass::Null:
      break;
  }
  return 0;
}

namespace {

void require_off_spectrum(const ZPoint& z, const EigenDecomposition& eig, double tol) {
  const double d = spectral_distance(z, eig);
  if (d <= tol) {
    std::ostringstream os;
    os << "z at arg " << z.arg() << " is within " << d << " of the spectrum";
    throw SpectrumError(os.str());
  }
}

std::vector<bool> between_mask(const ZPoint& z1, const ZPoint& z2, const EigenDecomposition& eig,
                               const SpectralTolerances& tol) {
  require_off_spectrum(z1, eig, tol.tol_spec);
  require_off_spectrum(z2, eig, tol.tol_spec);
  std::vector<bool> mask;
  mask.reserve(eig.pairs.size());
  for (const auto& p : eig.pairs) mask.push_back(between(p.lambda, z1, z2, tol.tol_spec));
  return mask;
}

}  // namespace

TripleClass classify(const ZPoint& z1, const ZPoint& z2, const EigenDecomposition& eig,
                     const SpectralTolerances& tol) {
  const auto mask = between_mask(z1, z2, eig, tol);
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) return TripleClass::Null;
  return z1.arg() > z2.arg() ? TripleClass::Positive : TripleClass::Negative;
}

SpectralTriple classify_triple(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                               const SpectralTolerances& tol) {
  const auto eig = eigen_circle(g.matrix(), tol.cluster_tol);
  return {z1, z2, g, classify(z1, z2, eig, tol)};
}

Matrix spectral_projection(const ZPoint& z1, const ZPoint& z2, const EigenDecomposition& eig,
                           const SpectralTolerances& tol) {
  const auto mask = between_mask(z1, z2, eig, tol);
  const Eigen::Index n = eig.dim();
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) p += eig.pairs[k].projection;
  return p;
}

Matrix spectral_projection(const ZPoint& z1, const ZPoint& z2, const SpecialUnitary& g,
                           const SpectralTolerances& tol) {
  return spectral_projection(z1, z2, eigen_circle(g.matrix(), tol.cluster_tol), tol);
}

Matrix spectral_projection_derivative(const ZPoint& z1, const ZPoint& z2,
                                      const EigenDecomposition& eig, const Matrix& dg,
                                      const SpectralTolerances& tol) {
  const auto mask = between_mask(z1, z2, eig, tol);
  const Eigen::Index n = eig.dim();
  Matrix dp = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    const auto& ek = eig.pairs[k];
    for (std::size_t l = 0; l < mask.size(); ++l) {
      if (mask[l]) continue;
      const auto& el = eig.pairs[l];
      dp += (ek.projection * dg * el.projection + el.projection * dg * ek.projection) /
            (ek.lambda - el.lambda);
    }
  }
  return dp;
}

int epsilon_i(const ZPoint& z1, const ZPoint& z2, const TorusElement& t, int i,
              const SpectralTolerances& tol) {
  if (i < 0 || i >= t.dim()) throw DimensionError("epsilon_i: index out of range");
  for (int k = 0; k < t.dim(); ++k) {
    if (std::abs(z1.value() - t.eigenvalue(k)) <= tol.tol_spec ||
        std::abs(z2.value() - t.eigenvalue(k)) <= tol.tol_spec)
      throw SpectrumError("epsilon_i: z lies on the spectrum of t");
  }
  if (!between(t.eigenvalue(i), z1, z2, tol.tol_spec)) return 0;
  return z1.arg() > z2.arg() ? 1 : -1;
}

cplx log_branch(cplx zeta, const ZPoint& z, double tol_ray) {
  if (zeta == 0.0) throw BranchCutError("log_branch: zero argument");
  const cplx rotated = zeta * std::conj(z.value());
  const double ray_distance = rotated.real() >= 0.0 ? std::abs(rotated.imag()) : std::abs(zeta);
  if (ray_distance <= tol_ray) {
    std::ostringstream os;
    os << "log_branch: argument within " << ray_distance << " of the cut ray";
    throw BranchCutError(os.str());
  }
  double theta = circle_arg(zeta);
  if (theta >= z.arg()) theta -= kTwoPi;
  return {std::log(std::abs(zeta)), theta};
}

PullbackPoint PullbackPoint::make(ProjectionTuple flag, TorusElement t, ZPoint z,
                                  const SpectralTolerances& tol) {
  if (flag.dim() != t.dim()) throw DimensionError("PullbackPoint: dimension mismatch");
  for (int i = 0; i < t.dim(); ++i)
    if (std::abs(z.value() - t.eigenvalue(i)) <= tol.tol_spec)
      throw SpectrumError("PullbackPoint: z lies on the spectrum of t");
  return PullbackPoint(std::move(flag), std::move(t), z);
}

}  // namespace gerbe
