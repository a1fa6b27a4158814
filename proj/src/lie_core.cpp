#include "gerbe/lie_core.hpp"

#include <cmath>
#include <sstream>

namespace gerbe {

namespace {

void require_dim(int n) {
  if (n < 2) {
    std::ostringstream os;
    os << "dimension must be at least 2, got " << n;
    throw DimensionError(os.str());
  }
}

}  // namespace

// --- SpecialUnitary --------------------------------------------------------

double SpecialUnitary::invariant_residual(const Matrix& m) {
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  return std::max(max_abs(m.adjoint() * m - id), std::abs(m.determinant() - 1.0));
}

SpecialUnitary SpecialUnitary::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("SpecialUnitary: matrix not square");
  require_dim(static_cast<int>(m.rows()));
  const double r = invariant_residual(m);
  if (r > tol) {
    std::ostringstream os;
    os << "SpecialUnitary: invariant residual " << r << " exceeds " << tol;
    throw InvariantError(os.str());
  }
  return SpecialUnitary(std::move(m));
}

SpecialUnitary SpecialUnitary::identity(int n) {
  require_dim(n);
  return SpecialUnitary(Matrix::Identity(n, n));
}

SpecialUnitary SpecialUnitary::inverse() const { return SpecialUnitary(m_.adjoint()); }

SpecialUnitary operator*(const SpecialUnitary& a, const SpecialUnitary& b) {
  if (a.dim() != b.dim()) throw DimensionError("SpecialUnitary product: dimension mismatch");
  return SpecialUnitary(a.m_ * b.m_);
}

// --- TorusElement ----------------------------------------------------------

TorusElement TorusElement::from_phases(RealVector phases, double tol) {
  require_dim(static_cast<int>(phases.size()));
  if (std::abs(phases.sum()) > tol) {
    std::ostringstream os;
    os << "TorusElement: phases sum to " << phases.sum() << ", expected 0";
    throw InvariantError(os.str());
  }
  return TorusElement(std::move(phases));
}

cplx TorusElement::eigenvalue(int i) const { return std::polar(1.0, kTwoPi * x_[i]); }

Matrix TorusElement::as_matrix() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) m(i, i) = eigenvalue(i);
  return m;
}

SpecialUnitary TorusElement::as_unitary() const {
  return SpecialUnitary::from_matrix(as_matrix());
}

// --- ProjectionTuple -------------------------------------------------------

double ProjectionTuple::invariant_residual(const std::vector<Matrix>& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Matrix sum = Matrix::Zero(n, n);
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    r = std::max(r, max_abs(p[i] - p[i].adjoint()));
    r = std::max(r, max_abs(p[i] * p[i] - p[i]));
    r = std::max(r, std::abs(p[i].trace() - 1.0));
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j) r = std::max(r, max_abs(p[i] * p[j]));
    sum += p[i];
  }
  return std::max(r, max_abs(sum - Matrix::Identity(n, n)));
}

ProjectionTuple ProjectionTuple::from_projections(std::vector<Matrix> projections, double tol) {
  const int n = static_cast<int>(projections.size());
  require_dim(n);
  for (const auto& p : projections)
    if (p.rows() != n || p.cols() != n)
      throw DimensionError("ProjectionTuple: need n projections of size n×n");
  const double r = invariant_residual(projections);
  if (r > tol) {
    std::ostringstream os;
    os << "ProjectionTuple: invariant residual " << r << " exceeds " << tol;
    throw InvariantError(os.str());
  }
  return ProjectionTuple(std::move(projections));
}

ProjectionTuple ProjectionTuple::standard(int n) {
  require_dim(n);
  std::vector<Matrix> p(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)](i, i) = 1.0;
  return ProjectionTuple(std::move(p));
}

ProjectionTuple ProjectionTuple::conjugated(const Matrix& h) const {
  if (h.rows() != dim()) throw DimensionError("ProjectionTuple::conjugated: dimension mismatch");
  std::vector<Matrix> q;
  q.reserve(p_.size());
  const Matrix hinv = h.adjoint();
  for (const auto& p : p_) q.push_back(h * p * hinv);
  return ProjectionTuple(std::move(q));
}

// --- TangentVector ---------------------------------------------------------

TangentVector TangentVector::zero(int n, int real_dim) {
  return {RealVector::Zero(real_dim), Matrix::Zero(n, n)};
}

TangentVector TangentVector::flag_direction(Matrix generator, int real_dim) {
  return {RealVector::Zero(real_dim), std::move(generator)};
}

TangentVector TangentVector::torus_direction(RealVector velocity, int n) {
  return {std::move(velocity), Matrix::Zero(n, n)};
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  return {real + o.real, gen + o.gen};
}

TangentVector TangentVector::operator*(double a) const { return {a * real, a * gen}; }

TangentVector TangentVector::conjugated(const Matrix& h) const {
  return {real, h * gen * h.adjoint()};
}

// --- CupPoint --------------------------------------------------------------

CupPoint CupPoint::make(RealVector x, ProjectionTuple flag, double tol) {
  if (x.size() != flag.dim()) throw DimensionError("CupPoint: x and flag dimensions differ");
  if (std::abs(x.sum()) > tol) throw InvariantError("CupPoint: x must sum to zero");
  return CupPoint(std::move(x), std::move(flag));
}

TorusElement CupPoint::torus_image() const {
  RealVector phases = x_;
  for (auto& v : phases) v -= std::floor(v + 0.5);
  // Reduction changed the sum by an integer; push it onto the last entry.
  phases[phases.size() - 1] -= std::round(phases.sum());
  return TorusElement::from_phases(std::move(phases), 1e-9);
}

// --- helpers ---------------------------------------------------------------

Matrix exp_anti_hermitian(const Matrix& xi) {
  const Matrix h = kI * xi;  // Hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd& mu = es.eigenvalues();
  Eigen::VectorXcd phase(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) phase[k] = std::polar(1.0, -mu[k]);
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

double generator_residual(const Matrix& xi) {
  return std::max(max_abs(xi + xi.adjoint()), std::abs(xi.trace()));
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// --- sampling --------------------------------------------------------------

SpecialUnitary haar_sample(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_sample(n, rng);
}

SpecialUnitary haar_sample(int n, std::mt19937_64& rng) {
  require_dim(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  const cplx det = q.determinant();
  const cplx root = std::polar(1.0, -std::arg(det) / n);
  q *= root;
  return SpecialUnitary::from_matrix(std::move(q));
}

Matrix random_generator(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  Matrix xi = 0.5 * (g - g.adjoint());
  xi -= (xi.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  return xi / xi.norm();
}

RealVector random_sum_zero(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RealVector x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  x.array() -= x.mean();
  return x;
}

TorusElement random_torus(int n, std::mt19937_64& rng) {
  return TorusElement::from_phases(random_sum_zero(n, rng));
}

ProjectionTuple random_flag(int n, std::mt19937_64& rng) { return flag_of(haar_sample(n, rng)); }

TangentVector random_tangent(int n, std::mt19937_64& rng) {
  RealVector v = random_sum_zero(n, rng);
  return {v, random_generator(n, rng)};
}

// --- Weyl map --------------------------------------------------------------

SpecialUnitary weyl_map(const TorusElement& t, const ProjectionTuple& flag) {
  if (t.dim() != flag.dim()) throw DimensionError("weyl_map: torus and flag dimensions differ");
  const int n = t.dim();
  Matrix g = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) g += t.eigenvalue(i) * flag[i];
  return SpecialUnitary::from_matrix(std::move(g), 1e-10);
}

ProjectionTuple flag_of(const SpecialUnitary& g) {
  const int n = g.dim();
  std::vector<Matrix> p;
  p.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd col = g.matrix().col(i);
    p.push_back(col * col.adjoint());
  }
  return ProjectionTuple::from_projections(std::move(p));
}

Matrix weyl_derivative(const TorusElement& t, const ProjectionTuple& flag,
                       const TangentVector& v) {
  const int n = t.dim();
  if (flag.dim() != n || v.gen.rows() != n || (v.real.size() != 0 && v.real.size() != n))
    throw BaseMismatchError("weyl_pushforward: tangent vector not based at (t, F)");
  Matrix dg = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const cplx p = t.eigenvalue(i);
    if (v.real.size() == n) dg += (kI * kTwoPi * v.real[i] * p) * flag[i];
    dg += p * commutator(v.gen, flag[i]);
  }
  return dg;
}

TangentVector weyl_pushforward(const TorusElement& t, const ProjectionTuple& flag,
                               const TangentVector& v) {
  const Matrix g = weyl_map(t, flag).matrix();
  Matrix eta = g.adjoint() * weyl_derivative(t, flag, v);
  // Remove rounding drift so the generator is exactly anti-Hermitian traceless.
  eta = 0.5 * (eta - eta.adjoint());
  eta -= (eta.trace() / static_cast<double>(t.dim())) * Matrix::Identity(t.dim(), t.dim());
  return {RealVector(), std::move(eta)};
}

FlagPoint flow(const FlagPoint& p, const TangentVector& v, double s) {
  RealVector x = p.t.phases();
  if (v.real.size() == x.size()) x += s * v.real;
  const Matrix u = exp_anti_hermitian(s * v.gen);
  return {TorusElement::from_phases(std::move(x), 1e-9), p.flag.conjugated(u)};
}

}  // namespace gerbe
