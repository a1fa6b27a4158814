#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gerbe::verify {

/// One executed check. `comparison` is "<=" (residual must not exceed the
/// tolerance) or ">" (the measured value must exceed the threshold).
struct CheckRecord {
  std::string name;
  std::string anchor;
  std::vector<int> n;
  long samples = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string comparison = "<=";
  bool pass = false;
  double runtime_ms = 0.0;
  nlohmann::ordered_json value;  // optional measured quantity
};

/// Per-check tolerance overrides; "*" applies to every check.
class Tolerances {
 public:
  void set(const std::string& name, double value) { overrides_[name] = value; }
  double get(const std::string& name, double fallback) const;
  const std::map<std::string, double>& overrides() const { return overrides_; }

 private:
  std::map<std::string, double> overrides_;
};

struct CheckContext {
  std::uint64_t seed = 1;
  double fd_step = 1e-5;
  int contour_nodes = 4096;
  int grid_theta = 200;
  int grid_phi = 400;
  int su2_grid = 64;
  Tolerances tol;
};

/// Independent stream for sample `index` of check `tag`.
std::mt19937_64 sample_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index);

// Each check evaluates `samples` independent random configurations per n,
// records the worst residual and decides pass/fail against its tolerance.

// --- lie_core / spectral -----------------------------------------------------
CheckRecord check_haar_invariants(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_haar_moment(const CheckContext&, int samples);
CheckRecord check_weyl_conjugation(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_weyl_equivariance(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_flag_coset(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_flow_invariants(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_weyl_pushforward(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_eigen_reconstruction(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_spectral_equivariance(const CheckContext&, const std::vector<int>& ns,
                                        int samples);
CheckRecord check_dimension_additivity(const CheckContext&, const std::vector<int>& ns,
                                       int samples);
CheckRecord check_triple_swap(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_epsilon_cocycle(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_log_epsilon(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_h_integrality(const CheckContext&, const std::vector<int>& ns, int samples);
/// y_i − x_i − ε_i(z, w, t) = h_i(y, w) − h_i(x, z), the relation as stated.
CheckRecord check_h_relation_stated(const CheckContext&, const std::vector<int>& ns, int samples);
/// y_i − x_i + ε_i(z, w, t) = h_i(y, w) − h_i(x, z), the relation that holds.
CheckRecord check_h_relation(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_d_cocycle(const CheckContext&, const std::vector<int>& ns, int samples);

// --- forms -------------------------------------------------------------------
enum class Lemma { Distinct, Swap, Sum };
CheckRecord check_projection_lemma(const CheckContext&, Lemma lemma, bool finite_difference,
                                   const std::vector<int>& ns, int samples);
CheckRecord check_dp_fd(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_form_alternation(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_form_multilinearity(const CheckContext&, const std::vector<int>& ns,
                                      int samples);
CheckRecord check_wedge(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_delta_squared(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_form_equivariance(const CheckContext&, const std::vector<int>& ns, int samples);

// --- curvings ----------------------------------------------------------------
CheckRecord check_cup_delta_curving(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_cup_curving_shift(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_cup_three_curvature(const CheckContext&, const std::vector<int>& ns,
                                      int samples);
CheckRecord check_basic_delta_curving(const CheckContext&, const std::vector<int>& ns,
                                      int samples);
CheckRecord check_contour_vs_residue(const CheckContext&, const std::vector<int>& ns,
                                     int samples);
CheckRecord check_weyl_pullback_curving(const CheckContext&, const std::vector<int>& ns,
                                        int samples);
CheckRecord check_stable_iso(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_three_curvature_decomposition(const CheckContext&, const std::vector<int>& ns,
                                                int samples);
CheckRecord check_basic_three_form_pullback(const CheckContext&, const std::vector<int>& ns,
                                            int samples);
CheckRecord check_beta_reduction(const CheckContext&, int samples);
CheckRecord check_beta_embedding(const CheckContext&, const std::vector<int>& ns, int samples);
CheckRecord check_chern_form_closed(const CheckContext&, int samples);

// --- integrals and the Deligne predicate -----------------------------------------
CheckRecord check_bloch_area(const CheckContext&);
CheckRecord check_chern_tautological(const CheckContext&);
CheckRecord check_chern_complement(const CheckContext&);
CheckRecord check_chern_constant(const CheckContext&);
CheckRecord check_chern_convergence(const CheckContext&);
CheckRecord check_euler_volume(const CheckContext&);
CheckRecord check_wzw(const CheckContext&);
CheckRecord check_wzw_reversed(const CheckContext&);
CheckRecord check_wzw_convergence(const CheckContext&);
CheckRecord check_holonomy_integral(const CheckContext&);
CheckRecord check_holonomy_ratio(const CheckContext&);
CheckRecord check_holonomy_n_independence(const CheckContext&, const std::vector<int>& ns);
CheckRecord check_deligne_trivial(const CheckContext&);
CheckRecord check_deligne_coboundary(const CheckContext&, int samples);
CheckRecord check_deligne_perturbed(const CheckContext&, int samples);

}  // namespace gerbe::verify
