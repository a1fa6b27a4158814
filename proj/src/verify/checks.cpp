#include "gerbe/verify/check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "gerbe/integrate.hpp"

namespace gerbe::verify {

double Tolerances::get(const std::string& name, double fallback) const {
  if (auto it = overrides_.find(name); it != overrides_.end()) return it->second;
  if (auto it = overrides_.find("*"); it != overrides_.end()) return it->second;
  return fallback;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::mt19937_64 sample_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  return std::mt19937_64(splitmix(splitmix(seed ^ fnv1a(tag)) + index));
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(const CheckContext& ctx, std::string name, std::string anchor, std::vector<int> ns,
      double default_tol)
      : start_(Clock::now()) {
    rec_.name = std::move(name);
    rec_.anchor = std::move(anchor);
    rec_.n = std::move(ns);
    rec_.tolerance = ctx.tol.get(rec_.name, default_tol);
  }

  CheckRecord at_most(double residual, long samples) {
    rec_.residual = residual;
    rec_.samples = samples;
    rec_.pass = std::isfinite(residual) && residual <= rec_.tolerance;
    return finish();
  }

  CheckRecord exceeds(double measured, long samples) {
    rec_.comparison = ">";
    rec_.residual = measured;
    rec_.samples = samples;
    rec_.pass = std::isfinite(measured) && measured > rec_.tolerance;
    return finish();
  }

  CheckRecord& record() { return rec_; }

 private:
  CheckRecord finish() {
    rec_.runtime_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return rec_;
  }

  CheckRecord rec_;
  Clock::time_point start_;
};

double fold_max(const std::vector<double>& v) {
  double w = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return std::numeric_limits<double>::infinity();
    w = std::max(w, x);
  }
  return w;
}

/// Max over n ∈ ns and samples of fn(n, rng), evaluated in parallel.
template <class Fn>
double worst(const CheckContext& ctx, std::string_view tag, const std::vector<int>& ns,
             int samples, Fn fn) {
  const auto per = static_cast<std::size_t>(samples);
  const auto values = parallel_map<double>(ns.size() * per, [&](std::size_t k) {
    auto rng = sample_rng(ctx.seed, tag, k);
    return fn(ns[k / per], rng);
  });
  return fold_max(values);
}

long total(const std::vector<int>& ns, int samples) {
  return static_cast<long>(ns.size()) * samples;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<cplx> torus_spectrum(const TorusElement& t) {
  std::vector<cplx> s;
  for (int i = 0; i < t.dim(); ++i) s.push_back(t.eigenvalue(i));
  return s;
}

std::vector<cplx> group_spectrum(const SpecialUnitary& g) {
  std::vector<cplx> s;
  for (const auto& p : eigen_circle(g.matrix()).pairs) s.push_back(p.lambda);
  return s;
}

/// z ∈ Z with |z − 1| and the distance to `avoid` both above `margin`.
ZPoint random_z(std::mt19937_64& rng, const std::vector<cplx>& avoid, double margin = 1e-6) {
  while (true) {
    const double a = uniform(rng, 0.0, kTwoPi);
    const cplx z = std::polar(1.0, a);
    if (std::abs(z - 1.0) <= margin) continue;
    bool ok = true;
    for (const auto& l : avoid) ok = ok && std::abs(z - l) > margin;
    if (ok && a > 0.0) return ZPoint::from_arg(a);
  }
}

/// Integer vector with zero sum.
RealVector integer_shift(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  RealVector v = RealVector::Zero(n);
  for (int i = 0; i + 1 < n; ++i) {
    v[i] = d(rng);
    v[n - 1] -= v[i];
  }
  return v;
}

FiberProductPoint random_fibre_point(int n, std::mt19937_64& rng, const TorusElement& t,
                                     const ProjectionTuple& flag) {
  RealVector x = t.phases() + integer_shift(n, rng);
  return FiberProductPoint::make(std::move(x), random_z(rng, torus_spectrum(t)), t, flag);
}

TangentVector group_tangent(int n, std::mt19937_64& rng) {
  return TangentVector::flag_direction(random_generator(n, rng), 0);
}

/// Element of SU(n) with a repeated eigenvalue (n ≥ 3) or a generic one.
SpecialUnitary random_group_element(int n, std::mt19937_64& rng, bool degenerate) {
  if (!degenerate || n < 3) return haar_sample(n, rng);
  RealVector x = random_sum_zero(n, rng);
  x[1] = x[0];
  x[n - 1] = 0.0;
  x[n - 1] = -x.sum();
  const auto t = TorusElement::from_phases(x, 1e-12);
  const auto h = haar_sample(n, rng);
  return SpecialUnitary::from_matrix(h.matrix() * t.as_matrix() * h.matrix().adjoint(), 1e-10);
}

double abs_diff(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

// --- lie_core / spectral -----------------------------------------------------

CheckRecord check_haar_invariants(const CheckContext& ctx, const std::vector<int>& ns,
                                  int samples) {
  Run run(ctx, "haar_invariants", "U†U = I, det U = 1 for Haar samples", ns, 1e-12);
  const double r = worst(ctx, "haar_invariants", ns, samples, [](int n, auto& rng) {
    return SpecialUnitary::invariant_residual(haar_sample(n, rng).matrix());
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_haar_moment(const CheckContext& ctx, int samples) {
  Run run(ctx, "haar_moment", "E|U_11|² = 1/n for Haar measure on SU(2)", {2}, 1e-2);
  const auto values = parallel_map<double>(static_cast<std::size_t>(samples), [&](std::size_t k) {
    auto rng = sample_rng(ctx.seed, "haar_moment", k);
    return std::norm(haar_sample(2, rng).matrix()(0, 0));
  });
  const double mean = pairwise_sum(values) / samples;
  run.record().value = mean;
  return run.at_most(std::abs(mean - 0.5), samples);
}

CheckRecord check_weyl_conjugation(const CheckContext& ctx, const std::vector<int>& ns,
                                   int samples) {
  Run run(ctx, "weyl_conjugation", "p(t, flag_of(g)) = g t g⁻¹", ns, 1e-12);
  const double r = worst(ctx, "weyl_conjugation", ns, samples, [](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto t = random_torus(n, rng);
    const Matrix direct = g.matrix() * t.as_matrix() * g.matrix().adjoint();
    return max_abs(weyl_map(t, flag_of(g)).matrix() - direct);
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_weyl_equivariance(const CheckContext& ctx, const std::vector<int>& ns,
                                    int samples) {
  Run run(ctx, "weyl_equivariance", "p(t, hF) = h p(t, F) h⁻¹", ns, 1e-12);
  const double r = worst(ctx, "weyl_equivariance", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto f = random_flag(n, rng);
    const Matrix h = haar_sample(n, rng).matrix();
    return max_abs(weyl_map(t, f.conjugated(h)).matrix() -
                   h * weyl_map(t, f).matrix() * h.adjoint());
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_flag_coset(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "flag_coset", "flag_of(g h) = flag_of(g) for diagonal h", ns, 1e-12);
  const double r = worst(ctx, "flag_coset", ns, samples, [](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto h = random_torus(n, rng).as_unitary();
    const auto a = flag_of(g), b = flag_of(g * h);
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max(d, max_abs(a[i] - b[i]));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_flow_invariants(const CheckContext& ctx, const std::vector<int>& ns,
                                  int samples) {
  Run run(ctx, "flow_invariants", "projection tuple and group invariants along flows", ns, 1e-12);
  const double r = worst(ctx, "flow_invariants", ns, samples, [](int n, auto& rng) {
    const FlagPoint p{random_torus(n, rng), random_flag(n, rng)};
    const auto moved = flow(p, random_tangent(n, rng), uniform(rng, -1.0, 1.0));
    const double rp = ProjectionTuple::invariant_residual(moved.flag.projections());
    const double rg = SpecialUnitary::invariant_residual(weyl_map(moved.t, moved.flag).matrix());
    return std::max(rp, rg);
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_weyl_pushforward(const CheckContext& ctx, const std::vector<int>& ns,
                                   int samples) {
  Run run(ctx, "weyl_pushforward_fd", "dp(v) agrees with central differences of p", ns, 1e-7);
  const double h = ctx.fd_step;
  const double r = worst(ctx, "weyl_pushforward_fd", ns, samples, [h](int n, auto& rng) {
    const FlagPoint p{random_torus(n, rng), random_flag(n, rng)};
    const auto v = random_tangent(n, rng);
    const Matrix g = weyl_map(p.t, p.flag).matrix();
    const Matrix exact = g * weyl_pushforward(p.t, p.flag, v).gen;
    const auto up = flow(p, v, h), dn = flow(p, v, -h);
    const Matrix fd =
        (weyl_map(up.t, up.flag).matrix() - weyl_map(dn.t, dn.flag).matrix()) / (2.0 * h);
    return max_abs(exact - fd);
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_eigen_reconstruction(const CheckContext& ctx, const std::vector<int>& ns,
                                       int samples) {
  Run run(ctx, "eigen_reconstruction", "Σ λ E_λ = g with orthogonal eigenprojections", ns,
          1e-10);
  const double r = worst(ctx, "eigen_reconstruction", ns, samples, [](int n, auto& rng) {
    const bool degenerate = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const auto g = random_group_element(n, rng, degenerate);
    const auto eig = eigen_circle(g.matrix());
    double d = max_abs(eig.reconstruct() - g.matrix());
    d = std::max(d, std::abs(static_cast<double>(eig.dim() - n)));
    for (std::size_t a = 0; a < eig.pairs.size(); ++a) {
      const Matrix& e = eig.pairs[a].projection;
      d = std::max(d, max_abs(e - e.adjoint()));
      d = std::max(d, max_abs(e * e - e));
      d = std::max(d, std::abs(e.trace() - static_cast<double>(eig.pairs[a].multiplicity)));
      for (std::size_t b = a + 1; b < eig.pairs.size(); ++b)
        d = std::max(d, max_abs(e * eig.pairs[b].projection));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_spectral_equivariance(const CheckContext& ctx, const std::vector<int>& ns,
                                        int samples) {
  Run run(ctx, "spectral_equivariance", "P(z1, z2, hgh⁻¹) = h P(z1, z2, g) h⁻¹", ns, 1e-10);
  const double r = worst(ctx, "spectral_equivariance", ns, samples, [](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto spec = group_spectrum(g);
    const auto z1 = random_z(rng, spec, 1e-4), z2 = random_z(rng, spec, 1e-4);
    const Matrix h = haar_sample(n, rng).matrix();
    const auto hg = SpecialUnitary::from_matrix(h * g.matrix() * h.adjoint(), 1e-10);
    return max_abs(spectral_projection(z1, z2, hg) -
                   h * spectral_projection(z1, z2, g) * h.adjoint());
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_dimension_additivity(const CheckContext& ctx, const std::vector<int>& ns,
                                       int samples) {
  Run run(ctx, "dimension_additivity", "dim L(z1,z2) + dim L(z2,z3) = dim L(z1,z3)", ns, 1e-12);
  const double r = worst(ctx, "dimension_additivity", ns, samples, [](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto eig = eigen_circle(g.matrix());
    const auto spec = group_spectrum(g);
    std::array<ZPoint, 3> z{random_z(rng, spec), random_z(rng, spec), random_z(rng, spec)};
    std::sort(z.begin(), z.end(), [](const ZPoint& a, const ZPoint& b) { return a.arg() > b.arg(); });
    auto rank = [&](const ZPoint& a, const ZPoint& b) {
      return std::round(spectral_projection(a, b, eig).trace().real());
    };
    return std::abs(rank(z[0], z[1]) + rank(z[1], z[2]) - rank(z[0], z[2]));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_triple_swap(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "triple_swap", "class(z2, z1, g) = −class(z1, z2, g); between is symmetric", ns,
          1e-12);
  const double r = worst(ctx, "triple_swap", ns, samples, [](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto spec = group_spectrum(g);
    const auto z1 = random_z(rng, spec), z2 = random_z(rng, spec);
    const int a = sign_of(classify_triple(z1, z2, g).kind);
    const int b = sign_of(classify_triple(z2, z1, g).kind);
    double d = std::abs(a + b);
    const auto lam = random_z(rng, {z1.value(), z2.value()});
    d = std::max(d, between(lam, z1, z2) == between(lam, z2, z1) ? 0.0 : 1.0);
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_epsilon_cocycle(const CheckContext& ctx, const std::vector<int>& ns,
                                  int samples) {
  Run run(ctx, "epsilon_cocycle", "ε_i(z2,z3) − ε_i(z1,z3) + ε_i(z1,z2) = 0", ns, 1e-12);
  const double r = worst(ctx, "epsilon_cocycle", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto spec = torus_spectrum(t);
    const auto z1 = random_z(rng, spec), z2 = random_z(rng, spec), z3 = random_z(rng, spec);
    double d = 0.0;
    for (int i = 0; i < n; ++i)
      d = std::max(d, std::abs(static_cast<double>(epsilon_i(z2, z3, t, i) -
                                                   epsilon_i(z1, z3, t, i) +
                                                   epsilon_i(z1, z2, t, i))));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_log_epsilon(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "log_epsilon", "ε_i(z, w, t) = (log_z p_i − log_w p_i)/2πi", ns, 1e-12);
  const double r = worst(ctx, "log_epsilon", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto spec = torus_spectrum(t);
    const auto z = random_z(rng, spec), w = random_z(rng, spec);
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx p = t.eigenvalue(i);
      const cplx rhs = (log_branch(p, z) - log_branch(p, w)) / (kI * kTwoPi);
      d = std::max(d, abs_diff(rhs, static_cast<double>(epsilon_i(z, w, t, i))));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_h_integrality(const CheckContext& ctx, const std::vector<int>& ns,
                                int samples) {
  Run run(ctx, "h_integrality", "h_i = x_i − (1/2πi) log_z p_i(t) ∈ ℤ", ns, 1e-9);
  const double r = worst(ctx, "h_integrality", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto p = random_fibre_point(n, rng, t, random_flag(n, rng));
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx raw = h_i_raw(p, i);
      d = std::max(d, std::abs(raw - std::round(raw.real())));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

namespace {

CheckRecord h_relation(const CheckContext& ctx, const std::vector<int>& ns, int samples,
                       const std::string& name, const std::string& anchor, double eps_sign) {
  Run run(ctx, name, anchor, ns, 1e-9);
  std::vector<long> violations(ns.size() * static_cast<std::size_t>(samples), 0);
  const double r = worst(ctx, name, ns, samples, [&](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto flag = random_flag(n, rng);
    const auto a = random_fibre_point(n, rng, t, flag);
    const auto b = random_fibre_point(n, rng, t, flag);
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const double lhs = b.x()[i] - a.x()[i] + eps_sign * epsilon_i(a.z(), b.z(), t, i);
      d = std::max(d, std::abs(lhs - (h_i(b, i) - h_i(a, i))));
    }
    return d;
  });
  const auto failing = parallel_map<int>(ns.size() * static_cast<std::size_t>(samples),
                                         [&](std::size_t k) {
    auto rng = sample_rng(ctx.seed, name, k);
    const int n = ns[k / static_cast<std::size_t>(samples)];
    const auto t = random_torus(n, rng);
    const auto flag = random_flag(n, rng);
    const auto a = random_fibre_point(n, rng, t, flag);
    const auto b = random_fibre_point(n, rng, t, flag);
    for (int i = 0; i < n; ++i) {
      const double lhs = b.x()[i] - a.x()[i] + eps_sign * epsilon_i(a.z(), b.z(), t, i);
      if (std::abs(lhs - (h_i(b, i) - h_i(a, i))) > 1e-9) return 1;
    }
    return 0;
  });
  long bad = 0;
  for (int f : failing) bad += f;
  run.record().value = {{"failing_pairs", bad}};
  return run.at_most(r, total(ns, samples));
}

}  // namespace

CheckRecord check_h_relation_stated(const CheckContext& ctx, const std::vector<int>& ns,
                                    int samples) {
  return h_relation(ctx, ns, samples, "h_relation_stated",
                    "y_i − x_i − ε_i(z, w, t) = h_i(y, w) − h_i(x, z)", -1.0);
}

CheckRecord check_h_relation(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  return h_relation(ctx, ns, samples, "h_relation",
                    "y_i − x_i + ε_i(z, w, t) = h_i(y, w) − h_i(x, z)", 1.0);
}

CheckRecord check_d_cocycle(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "d_cocycle", "d_i(y,w) − d_i(x,w) + d_i(x,y) = 0", ns, 1e-12);
  const double r = worst(ctx, "d_cocycle", ns, samples, [](int n, auto& rng) {
    const RealVector x = random_sum_zero(n, rng);
    const RealVector y = x + integer_shift(n, rng), w = x + integer_shift(n, rng);
    double d = 0.0;
    for (int i = 0; i < n; ++i)
      d = std::max(d, std::abs(static_cast<double>(d_i(y, w, i) - d_i(x, w, i) + d_i(x, y, i))));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

// --- forms -------------------------------------------------------------------

CheckRecord check_projection_lemma(const CheckContext& ctx, Lemma lemma, bool finite_difference,
                                   const std::vector<int>& ns, int samples) {
  std::string name, anchor;
  switch (lemma) {
    case Lemma::Distinct:
      name = "projection_lemma_distinct";
      anchor = "tr(P_i dP_j dP_k) = 0 for distinct i, j, k";
      break;
    case Lemma::Swap:
      name = "projection_lemma_swap";
      anchor = "tr(P_i dP_j dP_j) = −tr(P_j dP_i dP_i)";
      break;
    case Lemma::Sum:
      name = "projection_lemma_sum";
      anchor = "Σ_{i≠k} p_i⁻¹dp_i ∧ τ_ik = Σ_i p_i⁻¹dp_i ∧ τ_ii";
      break;
  }
  if (finite_difference) name += "_fd";
  Run run(ctx, name, anchor, ns, finite_difference ? 1e-6 : 1e-9);
  DerivativeOptions opt;
  if (finite_difference) opt = {DerivativeMode::FiniteDifference, ctx.fd_step};
  const double r = worst(ctx, name, ns, samples, [&](int n, auto& rng) {
    const auto f = random_flag(n, rng);
    const auto x = random_tangent(n, rng), y = random_tangent(n, rng);
    double d = 0.0;
    if (lemma == Lemma::Distinct) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (i != j && j != k && i != k)
              d = std::max(d, std::abs(trace_form(f, i, j, k, opt)({x, y})));
    } else if (lemma == Lemma::Swap) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            d = std::max(d, std::abs(trace_form(f, i, j, j, opt)({x, y}) +
                                     trace_form(f, j, i, i, opt)({x, y})));
    } else {
      const auto z = random_tangent(n, rng);
      cplx lhs = 0.0, rhs = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto a = log_derivative_form(i);
        for (int k = 0; k < n; ++k) {
          const cplx v = wedge(a, trace_form(f, i, k, k, opt))({x, y, z});
          (i == k ? rhs : lhs) += v;
        }
      }
      d = std::abs(lhs - rhs);
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_dp_fd(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "dp_exact_vs_fd", "[ξ, P_i] equals the derivative along exp(sξ)", ns, 1e-7);
  const double h = ctx.fd_step;
  const double r = worst(ctx, "dp_exact_vs_fd", ns, samples, [h](int n, auto& rng) {
    const auto f = random_flag(n, rng);
    const auto v = random_tangent(n, rng);
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max(d, max_abs(dP(f, i, v) - dP_fd(f, i, v, h)));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

namespace {

struct NamedForms {
  std::vector<FormEvaluator> forms;
};

// Every named form at one random configuration of size n, all accepting
// tangent vectors with torus and flag components.
std::vector<FormEvaluator> named_forms(int n, std::mt19937_64& rng) {
  const auto t = random_torus(n, rng);
  const auto flag = random_flag(n, rng);
  const auto fp = random_fibre_point(n, rng, t, flag);
  const auto pp = PullbackPoint::make(flag, t, fp.z());
  const auto g = weyl_map(t, flag);
  std::vector<FormEvaluator> out{
      two_form_trPdPdP(flag, 0),
      curving_cup(CupPoint::make(fp.x(), flag)),
      three_curvature_cup(t, flag),
      curving_pullback(pp),
      three_curvature_pullback(t, flag),
      beta(t, flag),
      curvature_R(fp),
      weyl_pullback(trace_cube_mc(g), t, flag),
      weyl_pullback(curving_basic_residue(fp.z(), g), t, flag),
  };
  if (n >= 3) out.push_back(trace_form(flag, 0, 1, 2));
  return out;
}

}  // namespace

CheckRecord check_form_alternation(const CheckContext& ctx, const std::vector<int>& ns,
                                   int samples) {
  Run run(ctx, "form_alternation", "transposing two vectors negates every named form", ns, 1e-9);
  const double r = worst(ctx, "form_alternation", ns, samples, [](int n, auto& rng) {
    double d = 0.0;
    for (const auto& w : named_forms(n, rng)) {
      TangentFrame frame;
      for (int k = 0; k < w.arity(); ++k) frame.push_back(random_tangent(n, rng));
      d = std::max(d, alternation_defect(w, frame));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_form_multilinearity(const CheckContext& ctx, const std::vector<int>& ns,
                                      int samples) {
  Run run(ctx, "form_multilinearity", "every named form is linear in each slot", ns, 1e-9);
  const double r = worst(ctx, "form_multilinearity", ns, samples, [](int n, auto& rng) {
    double d = 0.0;
    for (const auto& w : named_forms(n, rng)) {
      TangentFrame frame;
      for (int k = 0; k < w.arity(); ++k) frame.push_back(random_tangent(n, rng));
      const int slot = std::uniform_int_distribution<int>(0, w.arity() - 1)(rng);
      d = std::max(d, multilinearity_defect(w, frame, slot, random_tangent(n, rng),
                                            uniform(rng, -2.0, 2.0)));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_wedge(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "wedge_product", "(α∧β)∧γ = α∧(β∧γ), α∧α = 0, shuffle convention", ns, 1e-10);
  const double r = worst(ctx, "wedge_product", ns, samples, [](int n, auto& rng) {
    auto one_form = [&](const Matrix& m) {
      return FormEvaluator(1, [m](std::span<const TangentVector> f) {
        return (m * f[0].gen).trace() + f[0].real.sum() * m(0, 0);
      });
    };
    auto random_matrix = [&] { return Matrix(Matrix::Random(n, n)); };
    const auto a = one_form(random_matrix()), b = one_form(random_matrix()),
               c = one_form(random_matrix());
    const auto flag = random_flag(n, rng);
    const auto tau = two_form_trPdPdP(flag, 0);
    TangentFrame f;
    for (int k = 0; k < 4; ++k) f.push_back(random_tangent(n, rng));
    const std::span<const TangentVector> f2(f.data(), 2), f3(f.data(), 3), f4(f.data(), 4);
    double d = abs_diff(wedge(wedge(a, b), c)(f3), wedge(a, wedge(b, c))(f3));
    d = std::max(d, std::abs(wedge(a, a)(f2)));
    d = std::max(d, abs_diff(wedge(a, b)(f2), a({f[0]}) * b({f[1]}) - a({f[1]}) * b({f[0]})));
    d = std::max(d, abs_diff(wedge(a, tau)(f3), a({f[0]}) * tau({f[1], f[2]}) -
                                                    a({f[1]}) * tau({f[0], f[2]}) +
                                                    a({f[2]}) * tau({f[0], f[1]})));
    d = std::max(d, abs_diff(wedge(tau, tau)(f4), wedge(tau, tau)(f4)));
    d = std::max(d, abs_diff(wedge(wedge(a, b), tau)(f4), wedge(a, wedge(b, tau))(f4)));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_delta_squared(const CheckContext& ctx, const std::vector<int>& ns,
                                int samples) {
  Run run(ctx, "delta_squared", "δ∘δ = 0 on fibre products of Y", ns, 1e-10);
  const double r = worst(ctx, "delta_squared", ns, samples, [](int n, auto& rng) {
    const auto flag = random_flag(n, rng);
    const RealVector x = random_sum_zero(n, rng);
    std::vector<CupPoint> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(CupPoint::make(x + integer_shift(n, rng), flag));
    const FormField<CupPoint> fc = [](const CupPoint& p) { return curving_cup(p); };
    const TupleFormField<CupPoint> single = on_single(fc);
    const TupleFormField<CupPoint> once = [single](std::span<const CupPoint> pair) {
      return simplicial_delta(single, pair);
    };
    const auto twice = simplicial_delta(once, std::span<const CupPoint>(pts));
    const auto x1 = random_tangent(n, rng), x2 = random_tangent(n, rng);
    double d = std::abs(twice({x1, x2}));
    // On functions: δ(h)(y1, y2) = h(y2) − h(y1).
    const TupleFormField<CupPoint> h = [](std::span<const CupPoint> p) {
      return FormEvaluator::constant(p[0].x()[0]);
    };
    const auto dh = simplicial_delta(h, std::span<const CupPoint>(pts.data(), 2));
    d = std::max(d, abs_diff(dh({}), pts[1].x()[0] - pts[0].x()[0]));
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_form_equivariance(const CheckContext& ctx, const std::vector<int>& ns,
                                    int samples) {
  Run run(ctx, "form_equivariance", "f_c, ω_c, f_{p*b}, ω_{p*b}, β are SU(n)-invariant", ns,
          1e-9);
  const double r = worst(ctx, "form_equivariance", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto flag = random_flag(n, rng);
    const auto fp = random_fibre_point(n, rng, t, flag);
    const Matrix h = haar_sample(n, rng).matrix();
    const auto hflag = flag.conjugated(h);
    auto forms = [&](const ProjectionTuple& f) {
      return std::vector<FormEvaluator>{curving_cup(CupPoint::make(fp.x(), f)),
                                        three_curvature_cup(t, f),
                                        curving_pullback(PullbackPoint::make(f, t, fp.z())),
                                        three_curvature_pullback(t, f), beta(t, f)};
    };
    const auto base = forms(flag), moved = forms(hflag);
    TangentFrame frame, hframe;
    for (int k = 0; k < 3; ++k) {
      frame.push_back(random_tangent(n, rng));
      hframe.push_back(frame.back().conjugated(h));
    }
    double d = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const auto a = static_cast<std::size_t>(base[k].arity());
      d = std::max(d, abs_diff(base[k](std::span<const TangentVector>(frame.data(), a)),
                               moved[k](std::span<const TangentVector>(hframe.data(), a))));
    }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

// --- curvings ----------------------------------------------------------------

CheckRecord check_cup_delta_curving(const CheckContext& ctx, const std::vector<int>& ns,
                                    int samples) {
  Run run(ctx, "cup_delta_curving", "δ(f_c) = F_{∇_c}", ns, 1e-9);
  const double r = worst(ctx, "cup_delta_curving", ns, samples, [](int n, auto& rng) {
    const auto flag = random_flag(n, rng);
    const RealVector x = random_sum_zero(n, rng);
    const RealVector y = x + integer_shift(n, rng);
    const std::vector<CupPoint> pair{CupPoint::make(x, flag), CupPoint::make(y, flag)};
    const FormField<CupPoint> fc = [](const CupPoint& p) { return curving_cup(p); };
    const auto delta = simplicial_delta(on_single(fc), std::span<const CupPoint>(pair));
    const auto f = two_curvature_cup(x, y, flag);
    const auto a = random_tangent(n, rng), b = random_tangent(n, rng);
    return abs_diff(delta({a, b}), f({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_cup_curving_shift(const CheckContext& ctx, const std::vector<int>& ns,
                                    int samples) {
  Run run(ctx, "cup_curving_shift", "δ(f_c + π*φ) = F_{∇_c} for a 2-form φ on the base", ns,
          1e-9);
  const double r = worst(ctx, "cup_curving_shift", ns, samples, [](int n, auto& rng) {
    const auto flag = random_flag(n, rng);
    const RealVector x = random_sum_zero(n, rng);
    const RealVector y = x + integer_shift(n, rng);
    const Matrix m = random_generator(n, rng);
    const RealVector c = random_sum_zero(n, rng);
    // φ depends on the point only through its image in T × Proj_n.
    const FormField<CupPoint> shifted = [m, c](const CupPoint& p) {
      const auto t = p.torus_image();
      cplx phase = 0.0;
      for (int i = 0; i < t.dim(); ++i) phase += c[i] * t.eigenvalue(i);
      const auto phi = FormEvaluator(2, [m, phase](std::span<const TangentVector> f) {
        return phase * (m * commutator(f[0].gen, f[1].gen)).trace();
      });
      return curving_cup(p) + phi;
    };
    const std::vector<CupPoint> pair{CupPoint::make(x, flag), CupPoint::make(y, flag)};
    const auto delta = simplicial_delta(on_single(shifted), std::span<const CupPoint>(pair));
    const auto a = random_tangent(n, rng), b = random_tangent(n, rng);
    return abs_diff(delta({a, b}), two_curvature_cup(x, y, flag)({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_cup_three_curvature(const CheckContext& ctx, const std::vector<int>& ns,
                                      int samples) {
  Run run(ctx, "cup_three_curvature", "d f_c = ω_c (central differences)", ns, 1e-5);
  const double h = ctx.fd_step;
  const double r = worst(ctx, "cup_three_curvature", ns, samples, [h](int n, auto& rng) {
    const auto base = CupPoint::make(random_sum_zero(n, rng), random_flag(n, rng));
    const auto chart = cup_flag_chart(base, flag_generators(n), 0.5);
    const FormField<CupPoint> fc = [](const CupPoint& p) { return curving_cup(p); };
    const auto dfc = numerical_d(fc, chart, FdOptions{h, false, {}});
    Params s(chart.dim);
    for (int a = 0; a < chart.dim; ++a) s[a] = uniform(rng, -0.25, 0.25);
    const auto p = chart.map(s);
    const auto w = three_curvature_cup(p.torus_image(), p.flag());
    const auto tg = chart.tangents(s);
    double d = 0.0;
    for (int a = 0; a < chart.dim; ++a)
      for (int b = a + 1; b < chart.dim; ++b)
        for (int c = b + 1; c < chart.dim; ++c) {
          const auto sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(b),
                     sc = static_cast<std::size_t>(c);
          d = std::max(d, abs_diff(dfc(s, {a, b, c}), w({tg[sa], tg[sb], tg[sc]})));
        }
    return d;
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_basic_delta_curving(const CheckContext& ctx, const std::vector<int>& ns,
                                      int samples) {
  Run run(ctx, "basic_delta_curving", "δ(f_b) = ±tr(P dP dP) on Y^{[2]}_±, 0 on Y^{[2]}_0", ns,
          1e-6);
  const ContourOptions copt{ctx.contour_nodes};
  const double r = worst(ctx, "basic_delta_curving", ns, samples, [&](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto spec = group_spectrum(g);
    const auto z1 = random_z(rng, spec), z2 = random_z(rng, spec);
    const auto a = group_tangent(n, rng), b = group_tangent(n, rng);
    const cplx delta =
        curving_basic_contour(z2, g, copt)({a, b}) - curving_basic_contour(z1, g, copt)({a, b});
    return abs_diff(delta, basic_two_curvature(z1, z2, g)({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_contour_vs_residue(const CheckContext& ctx, const std::vector<int>& ns,
                                     int samples) {
  Run run(ctx, "contour_vs_residue", "contour quadrature of f_b equals its residue sum", ns,
          1e-6);
  const ContourOptions copt{ctx.contour_nodes};
  const double r = worst(ctx, "contour_vs_residue", ns, samples, [&](int n, auto& rng) {
    const auto g = haar_sample(n, rng);
    const auto z = random_z(rng, group_spectrum(g));
    const auto a = group_tangent(n, rng), b = group_tangent(n, rng);
    return abs_diff(curving_basic_contour(z, g, copt)({a, b}),
                    curving_basic_residue(z, g)({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_weyl_pullback_curving(const CheckContext& ctx, const std::vector<int>& ns,
                                        int samples) {
  Run run(ctx, "weyl_pullback_curving", "p*f_b equals the closed form f_{p*b}", ns, 1e-6);
  const ContourOptions copt{ctx.contour_nodes};
  const double r = worst(ctx, "weyl_pullback_curving", ns, samples, [&](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto flag = random_flag(n, rng);
    const auto z = random_z(rng, torus_spectrum(t));
    const auto g = weyl_map(t, flag);
    const auto a = random_tangent(n, rng), b = random_tangent(n, rng);
    const cplx pulled = weyl_pullback(curving_basic_contour(z, g, copt), t, flag)({a, b});
    return abs_diff(pulled, curving_pullback(PullbackPoint::make(flag, t, z))({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_stable_iso(const CheckContext& ctx, const std::vector<int>& ns, int samples) {
  Run run(ctx, "stable_iso_relation", "f_{p*b} − f_c = F_{∇_R} + π*β", ns, 1e-7);
  const double r = worst(ctx, "stable_iso_relation", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto p = random_fibre_point(n, rng, t, random_flag(n, rng));
    const TangentFrame frame{random_tangent(n, rng), random_tangent(n, rng)};
    return verify_stable_iso_relation(p, frame);
  });
  return run.at_most(r, total(ns, samples));
}

namespace {

template <class Build>
double chart_three_form_defect(int n, std::mt19937_64& rng, double h, Build build_rhs) {
  const FlagPoint base{random_torus(n, rng), random_flag(n, rng)};
  const auto chart = torus_flag_chart(base, flag_generators(n), 0.5);
  const FormField<FlagPoint> b = [](const FlagPoint& p) { return beta(p.t, p.flag); };
  const auto db = numerical_d(b, chart, FdOptions{h, false, {}});
  Params s(chart.dim);
  for (int a = 0; a < chart.dim; ++a) s[a] = uniform(rng, -0.25, 0.25);
  const auto p = chart.map(s);
  const auto rhs = build_rhs(p);
  const auto tg = chart.tangents(s);
  double d = 0.0;
  for (int a = 0; a < chart.dim; ++a)
    for (int c = a + 1; c < chart.dim; ++c)
      for (int e = c + 1; e < chart.dim; ++e) {
        const TangentFrame f{tg[static_cast<std::size_t>(a)], tg[static_cast<std::size_t>(c)],
                             tg[static_cast<std::size_t>(e)]};
        d = std::max(d, abs_diff(db(s, {a, c, e}), rhs(f)));
      }
  return d;
}

}  // namespace

CheckRecord check_three_curvature_decomposition(const CheckContext& ctx,
                                                const std::vector<int>& ns, int samples) {
  Run run(ctx, "three_curvature_decomposition", "ω_{p*b} − ω_c = dβ (central differences)", ns,
          1e-4);
  const double h = ctx.fd_step;
  const double r =
      worst(ctx, "three_curvature_decomposition", ns, samples, [h](int n, auto& rng) {
        return chart_three_form_defect(n, rng, h, [](const FlagPoint& p) {
          return three_curvature_pullback(p.t, p.flag) - three_curvature_cup(p.t, p.flag);
        });
      });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_basic_three_form_pullback(const CheckContext& ctx, const std::vector<int>& ns,
                                            int samples) {
  Run run(ctx, "basic_three_form_pullback", "p*(−(i/12π) tr(g⁻¹dg)³) = ω_{p*b}", ns, 1e-5);
  const double r = worst(ctx, "basic_three_form_pullback", ns, samples, [](int n, auto& rng) {
    const auto t = random_torus(n, rng);
    const auto flag = random_flag(n, rng);
    const auto pulled = weyl_pullback(basic_three_form(weyl_map(t, flag)), t, flag);
    const auto w = three_curvature_pullback(t, flag);
    const TangentFrame f{random_tangent(n, rng), random_tangent(n, rng), random_tangent(n, rng)};
    return abs_diff(pulled(f), w(f));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_beta_reduction(const CheckContext& ctx, int samples) {
  Run run(ctx, "beta_n2_reduction", "β_2 = −(i/4π)(p² − p⁻²) tr(P dP dP)", {2}, 1e-10);
  std::vector<double> stated(static_cast<std::size_t>(samples), 0.0);
  const double r = worst(ctx, "beta_n2_reduction", {2}, samples, [&](int, auto& rng) {
    const auto t = random_torus(2, rng);
    const auto flag = random_flag(2, rng);
    const auto a = random_tangent(2, rng), b = random_tangent(2, rng);
    const cplx p = t.eigenvalue(0);
    const cplx closed = (kI / (4.0 * kPi)) * (p * p - 1.0 / (p * p)) *
                        two_form_trPdPdP(flag, 0)({a, b});
    return abs_diff(beta(t, flag)({a, b}), -closed);
  });
  const double rs = worst(ctx, "beta_n2_reduction", {2}, samples, [&](int, auto& rng) {
    const auto t = random_torus(2, rng);
    const auto flag = random_flag(2, rng);
    const auto a = random_tangent(2, rng), b = random_tangent(2, rng);
    const cplx p = t.eigenvalue(0);
    const cplx closed = (kI / (4.0 * kPi)) * (p * p - 1.0 / (p * p)) *
                        two_form_trPdPdP(flag, 0)({a, b});
    return abs_diff(beta(t, flag)({a, b}), closed);
  });
  run.record().value = {{"residual_with_plus_sign", rs}};
  return run.at_most(r, samples);
}

CheckRecord check_beta_embedding(const CheckContext& ctx, const std::vector<int>& ns,
                                 int samples) {
  Run run(ctx, "beta_block_embedding", "ι*β_n = β_2 under the block embedding", ns, 1e-9);
  const double r = worst(ctx, "beta_block_embedding", ns, samples, [](int n, auto& rng) {
    const auto t2 = random_torus(2, rng);
    const auto f2 = random_flag(2, rng);
    RealVector xn = RealVector::Zero(n);
    xn.head(2) = t2.phases();
    const auto tn = TorusElement::from_phases(xn);
    std::vector<Matrix> proj;
    for (int i = 0; i < n; ++i) {
      Matrix p = Matrix::Zero(n, n);
      if (i < 2)
        p.topLeftCorner(2, 2) = f2[i];
      else
        p(i, i) = 1.0;
      proj.push_back(std::move(p));
    }
    const auto fn = ProjectionTuple::from_projections(std::move(proj));
    auto lift = [n](const TangentVector& v) {
      RealVector r = RealVector::Zero(n);
      r.head(2) = v.real;
      Matrix g = Matrix::Zero(n, n);
      g.topLeftCorner(2, 2) = v.gen;
      return TangentVector{r, g};
    };
    const auto a = random_tangent(2, rng), b = random_tangent(2, rng);
    return abs_diff(beta(tn, fn)({lift(a), lift(b)}), beta(t2, f2)({a, b}));
  });
  return run.at_most(r, total(ns, samples));
}

CheckRecord check_chern_form_closed(const CheckContext& ctx, int samples) {
  Run run(ctx, "chern_form_closed", "d tr(P dP dP) = 0 on Proj_3", {3}, 1e-5);
  const double h = ctx.fd_step;
  const double r = worst(ctx, "chern_form_closed", {3}, samples, [h](int n, auto& rng) {
    const FlagPoint base{random_torus(n, rng), random_flag(n, rng)};
    const auto chart = torus_flag_chart(base, flag_generators(n), 0.5);
    const FormField<FlagPoint> w = [](const FlagPoint& p) { return two_form_trPdPdP(p.flag, 0); };
    const auto dw = numerical_d(w, chart, FdOptions{h, false, {}});
    Params s(chart.dim);
    for (int a = 0; a < chart.dim; ++a) s[a] = uniform(rng, -0.25, 0.25);
    double d = 0.0;
    for (int a = n - 1; a < chart.dim; ++a)
      for (int b = a + 1; b < chart.dim; ++b)
        for (int c = b + 1; c < chart.dim; ++c) d = std::max(d, std::abs(dw(s, {a, b, c})));
    return d;
  });
  return run.at_most(r, samples);
}

// --- integrals ---------------------------------------------------------------

namespace {

// Area 2-form of S² evaluated through the rotation vectors of the generators.
FormEvaluator sphere_area_form(const ProjectionTuple& f) {
  return FormEvaluator(2, [f](std::span<const TangentVector> fr) {
    Eigen::Vector3d nhat, w[2];
    const std::array<Matrix, 3> s{
        (Matrix(2, 2) << 0, 1, 1, 0).finished(),
        (Matrix(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
        (Matrix(2, 2) << 1, 0, 0, -1).finished()};
    for (int a = 0; a < 3; ++a) {
      nhat[a] = (f[0] * s[static_cast<std::size_t>(a)]).trace().real();
      for (int k = 0; k < 2; ++k)
        w[k][a] = (kI * (fr[static_cast<std::size_t>(k)].gen * s[static_cast<std::size_t>(a)])
                            .trace())
                      .real();
    }
    return cplx(nhat.dot(w[0].cross(nhat).cross(w[1].cross(nhat))));
  });
}

}  // namespace

CheckRecord check_bloch_area(const CheckContext& ctx) {
  Run run(ctx, "bloch_area", "∫_{S²} area = 4π on the Bloch chart", {2}, 1e-10);
  const auto chart = bloch_chart();
  const FormField<ProjectionTuple> field = sphere_area_form;
  const cplx area =
      integrate_form(field, chart, tensor_grid(chart.domain, {ctx.grid_theta, ctx.grid_phi}));
  run.record().value = area.real();
  return run.at_most(std::abs(area - 4.0 * kPi), 1);
}

CheckRecord check_chern_tautological(const CheckContext& ctx) {
  Run run(ctx, "chern_tautological", "(i/2π) ∫_{S²} tr(P dP dP) = −1", {2}, 1e-3);
  const double c = chern_number(0, bloch_chart(), ctx.grid_theta, ctx.grid_phi);
  run.record().value = c;
  return run.at_most(std::abs(c + 1.0), 1);
}

CheckRecord check_chern_complement(const CheckContext& ctx) {
  Run run(ctx, "chern_complement", "(i/2π) ∫_{S²} tr(Q dQ dQ) = +1 for Q = I − P", {2}, 1e-3);
  const double c = chern_number(1, bloch_chart(), ctx.grid_theta, ctx.grid_phi);
  run.record().value = c;
  return run.at_most(std::abs(c - 1.0), 1);
}

CheckRecord check_chern_constant(const CheckContext& ctx) {
  Run run(ctx, "chern_constant", "a constant projection family has Chern number 0", {2}, 1e-3);
  auto chart = bloch_chart();
  const auto fixed = chart.map(midpoint(chart));
  chart.map = [fixed](const Params&) { return fixed; };
  chart.tangents = [](const Params&) {
    return std::vector<TangentVector>{TangentVector::zero(2, 0), TangentVector::zero(2, 0)};
  };
  const double c = chern_number(0, chart, ctx.grid_theta, ctx.grid_phi);
  run.record().value = c;
  return run.at_most(std::abs(c), 1);
}

CheckRecord check_chern_convergence(const CheckContext& ctx) {
  Run run(ctx, "chern_grid_convergence", "Chern number changes little when the grid is halved",
          {2}, 1e-2);
  const double full = chern_number(0, bloch_chart(), ctx.grid_theta, ctx.grid_phi);
  const double half = chern_number(0, bloch_chart(), std::max(1, ctx.grid_theta / 2),
                                   std::max(1, ctx.grid_phi / 2));
  run.record().value = {{"full", full}, {"half", half}};
  return run.at_most(std::abs(full - half), 2);
}

CheckRecord check_euler_volume(const CheckContext& ctx) {
  Run run(ctx, "euler_haar_volume", "∫ sin β / 8 dα dβ dγ = 2π²", {2}, 1e-6);
  const auto chart = euler_chart_su2();
  const auto grid = tensor_grid(chart.domain, {ctx.su2_grid, ctx.su2_grid, ctx.su2_grid});
  std::vector<double> v(grid.nodes.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = grid.weights[j] * euler_jacobian(grid.nodes[j]);
  const double vol = pairwise_sum(v);
  run.record().value = vol;
  return run.at_most(std::abs(vol - 2.0 * kPi * kPi), 1);
}

CheckRecord check_wzw(const CheckContext& ctx) {
  Run run(ctx, "wzw_normalization", "−(1/24π²) ∫_{SU(2)} tr(g⁻¹dg)³ = 1", {2}, 1e-2);
  const double w = wzw_normalization(ctx.su2_grid);
  run.record().value = {{"value", w}, {"orientation", kWzwOrientation}};
  return run.at_most(std::abs(w - 1.0), 1);
}

CheckRecord check_wzw_reversed(const CheckContext& ctx) {
  Run run(ctx, "wzw_reversed", "the reversed chart gives −1", {2}, 1e-2);
  const double w = wzw_normalization(ctx.su2_grid, -kWzwOrientation);
  run.record().value = w;
  return run.at_most(std::abs(w + 1.0), 1);
}

CheckRecord check_wzw_convergence(const CheckContext& ctx) {
  Run run(ctx, "wzw_grid_convergence", "WZW integral changes little when the grid is halved",
          {2}, 1e-2);
  const double full = wzw_normalization(ctx.su2_grid);
  const double half = wzw_normalization(std::max(1, ctx.su2_grid / 2));
  run.record().value = {{"full", full}, {"half", half}};
  return run.at_most(std::abs(full - half), 2);
}

namespace {

nlohmann::ordered_json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

CheckRecord check_holonomy_integral(const CheckContext& ctx) {
  Run run(ctx, "holonomy_integral",
          "∫_{Σ_2} β_2 = −(i/4π)(p² − p⁻²) ∫ tr(P dP dP), purely imaginary and nonzero", {2},
          1e-3);
  const auto res = holonomy_obstruction(2, ctx.grid_theta, ctx.grid_phi);
  const cplx oracle = holonomy_oracle(ctx.grid_theta, ctx.grid_phi);
  double r = std::abs(res.integral - oracle);
  r = std::max(r, std::abs(res.integral.real()));
  if (std::abs(res.integral) <= run.record().tolerance) r = std::numeric_limits<double>::infinity();
  run.record().value = {{"integral", complex_json(res.integral)},
                        {"oracle", complex_json(oracle)},
                        {"printed_candidate", complex_json(1.0 / (kPi * kI))},
                        {"plus_sign_candidate", complex_json(-res.integral)}};
  return run.at_most(r, 1);
}

CheckRecord check_holonomy_ratio(const CheckContext& ctx) {
  Run run(ctx, "holonomy_ratio", "|exp(∫_{Σ_2} β_2) − 1| > 0.05", {2}, 0.05);
  const auto res = holonomy_obstruction(2, ctx.grid_theta, ctx.grid_phi);
  run.record().value = {{"ratio", complex_json(res.ratio)}};
  return run.exceeds(std::abs(res.ratio - 1.0), 1);
}

CheckRecord check_holonomy_n_independence(const CheckContext& ctx, const std::vector<int>& ns) {
  Run run(ctx, "holonomy_n_independence", "∫_{Σ_n} β_n = ∫_{Σ_2} β_2", ns, 1e-3);
  const cplx base = holonomy_obstruction(2, ctx.grid_theta, ctx.grid_phi).integral;
  double r = 0.0;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (int n : ns) {
    const cplx v = holonomy_obstruction(n, ctx.grid_theta, ctx.grid_phi).integral;
    values[std::to_string(n)] = complex_json(v);
    r = std::max(r, std::abs(v - base));
  }
  run.record().value = values;
  return run.at_most(r, static_cast<long>(ns.size()));
}

// --- Deligne predicate ---------------------------------------------------------

namespace {

constexpr int kChartDim = 3;

DeligneCochain coboundary_cochain(std::mt19937_64& rng, int count) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto vec = [&] {
    Eigen::VectorXcd v(kChartDim);
    for (int a = 0; a < kChartDim; ++a) v[a] = cplx(normal(rng), normal(rng));
    return v;
  };
  auto two_form = [&] {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kChartDim, kChartDim);
    for (int a = 0; a < kChartDim; ++a)
      for (int b = a + 1; b < kChartDim; ++b) {
        m(a, b) = cplx(normal(rng), normal(rng));
        m(b, a) = -m(a, b);
      }
    return m;
  };
  DeligneCochain c;
  c.dim = kChartDim;
  std::map<int, Eigen::VectorXcd> a;
  std::map<int, Eigen::MatrixXcd> da;
  std::map<DeligneCochain::Pair, cplx> g;
  std::map<DeligneCochain::Pair, Eigen::VectorXcd> dlog_g;
  for (int k = 0; k < count; ++k) {
    c.indices.push_back(k);
    a[k] = vec();
    da[k] = two_form();
    c.nu[k] = da[k];
  }
  for (int p = 0; p < count; ++p)
    for (int q = p + 1; q < count; ++q) {
      g[{p, q}] = std::polar(1.0, uniform(rng, 0.0, kTwoPi));
      dlog_g[{p, q}] = kI * vec().real().cast<cplx>();
      c.theta[{p, q}] = a[q] - a[p] - dlog_g[{p, q}];
      c.dtheta[{p, q}] = da[q] - da[p];
    }
  for (int p = 0; p < count; ++p)
    for (int q = p + 1; q < count; ++q)
      for (int r = q + 1; r < count; ++r) {
        c.h[{p, q, r}] = g[{q, r}] / g[{p, r}] * g[{p, q}];
        c.dlog_h[{p, q, r}] = dlog_g[{q, r}] - dlog_g[{p, r}] + dlog_g[{p, q}];
      }
  return c;
}

}  // namespace

CheckRecord check_deligne_trivial(const CheckContext& ctx) {
  Run run(ctx, "deligne_trivial", "h ≡ 1, θ ≡ 0, ν ≡ 0 is a cocycle", {}, 1e-12);
  DeligneCochain c;
  c.dim = kChartDim;
  c.indices = {0, 1, 2, 3};
  for (int p = 0; p < 4; ++p) {
    c.nu[p] = Eigen::MatrixXcd::Zero(kChartDim, kChartDim);
    for (int q = p + 1; q < 4; ++q) {
      c.theta[{p, q}] = Eigen::VectorXcd::Zero(kChartDim);
      c.dtheta[{p, q}] = Eigen::MatrixXcd::Zero(kChartDim, kChartDim);
      for (int r = q + 1; r < 4; ++r) {
        c.h[{p, q, r}] = 1.0;
        c.dlog_h[{p, q, r}] = Eigen::VectorXcd::Zero(kChartDim);
      }
    }
  }
  const auto res = deligne_cocycle_check(c);
  const double r = std::max({res.cocycle, res.connection, res.curving});
  return run.at_most(res.pass ? r : std::numeric_limits<double>::infinity(), 1);
}

CheckRecord check_deligne_coboundary(const CheckContext& ctx, int samples) {
  Run run(ctx, "deligne_coboundary", "the coboundary of a 1-cochain passes the predicate", {},
          1e-9);
  const auto values = parallel_map<double>(static_cast<std::size_t>(samples), [&](std::size_t k) {
    auto rng = sample_rng(ctx.seed, "deligne_coboundary", k);
    const auto res = deligne_cocycle_check(coboundary_cochain(rng, 5));
    const double r = std::max({res.cocycle, res.connection, res.curving});
    return res.pass ? r : std::numeric_limits<double>::infinity();
  });
  return run.at_most(fold_max(values), samples);
}

CheckRecord check_deligne_perturbed(const CheckContext& ctx, int samples) {
  Run run(ctx, "deligne_perturbed",
          "perturbing one h fails the predicate with residual |h′ − h|", {}, 1e-9);
  const auto values = parallel_map<double>(static_cast<std::size_t>(samples), [&](std::size_t k) {
    auto rng = sample_rng(ctx.seed, "deligne_perturbed", k);
    auto c = coboundary_cochain(rng, 5);
    auto it = c.h.begin();
    std::advance(it, std::uniform_int_distribution<int>(0, static_cast<int>(c.h.size()) - 1)(rng));
    const cplx before = it->second;
    it->second *= std::polar(1.0, uniform(rng, 1e-3, 1e-1));
    const double magnitude = std::abs(it->second - before);
    const auto res = deligne_cocycle_check(c);
    if (res.pass) return std::numeric_limits<double>::infinity();
    return std::abs(res.cocycle - magnitude);
  });
  return run.at_most(fold_max(values), samples);
}

}  // namespace gerbe::verify
