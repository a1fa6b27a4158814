#include "gerbe/verify/suites.hpp"

#include <algorithm>

namespace gerbe::verify {

namespace {

std::vector<int> at_least(const std::vector<int>& ns, int lo) {
  std::vector<int> out;
  std::copy_if(ns.begin(), ns.end(), std::back_inserter(out), [lo](int n) { return n >= lo; });
  return out;
}

std::vector<int> at_most(const std::vector<int>& ns, int hi) {
  std::vector<int> out;
  std::copy_if(ns.begin(), ns.end(), std::back_inserter(out), [hi](int n) { return n <= hi; });
  return out;
}

}  // namespace

Report cmd_identities(const RunConfig& cfg) {
  Report r{cfg, {}};
  const auto ctx = cfg.context();
  const auto& ns = cfg.ns;
  const auto ns3 = at_least(ns, 3);

  r.add(check_haar_invariants(ctx, ns, cfg.count(1000)));
  r.add(check_haar_moment(ctx, std::max(cfg.count(100000), 10000)));
  r.add(check_weyl_conjugation(ctx, ns, cfg.count(1000)));
  r.add(check_weyl_equivariance(ctx, ns, cfg.count(1000)));
  r.add(check_flag_coset(ctx, ns, cfg.count(1000)));
  r.add(check_flow_invariants(ctx, ns, cfg.count(1000)));
  r.add(check_weyl_pushforward(ctx, ns, cfg.count(100)));
  r.add(check_eigen_reconstruction(ctx, ns, cfg.count(1000)));
  r.add(check_spectral_equivariance(ctx, ns, cfg.count(1000)));
  r.add(check_dimension_additivity(ctx, ns, cfg.count(10000)));
  r.add(check_triple_swap(ctx, ns, cfg.count(10000)));
  r.add(check_epsilon_cocycle(ctx, ns, cfg.count(10000)));
  r.add(check_log_epsilon(ctx, ns, cfg.count(10000)));
  r.add(check_h_integrality(ctx, ns, cfg.count(10000)));
  r.add(check_h_relation(ctx, ns, cfg.count(10000)));
  r.add(check_d_cocycle(ctx, ns, cfg.count(1000)));
  for (bool fd : {false, true}) {
    if (!ns3.empty()) r.add(check_projection_lemma(ctx, Lemma::Distinct, fd, ns3, cfg.count(100)));
    r.add(check_projection_lemma(ctx, Lemma::Swap, fd, ns, cfg.count(100)));
    r.add(check_projection_lemma(ctx, Lemma::Sum, fd, ns, cfg.count(100)));
  }
  r.add(check_dp_fd(ctx, ns, cfg.count(100)));
  r.add(check_form_alternation(ctx, ns, cfg.count(100)));
  r.add(check_form_multilinearity(ctx, ns, cfg.count(100)));
  r.add(check_wedge(ctx, ns, cfg.count(100)));
  r.add(check_delta_squared(ctx, ns, cfg.count(100)));
  r.add(check_form_equivariance(ctx, ns, cfg.count(100)));
  return r;
}

Report cmd_curvings(const RunConfig& cfg) {
  Report r{cfg, {}};
  const auto ctx = cfg.context();
  const auto& ns = cfg.ns;
  const auto ns3 = at_least(ns, 3);
  const auto small = at_most(ns, 3);

  r.add(check_cup_delta_curving(ctx, ns, cfg.count(1000)));
  r.add(check_cup_curving_shift(ctx, ns, cfg.count(100)));
  r.add(check_cup_three_curvature(ctx, ns, cfg.heavy(10)));
  r.add(check_basic_delta_curving(ctx, ns, cfg.heavy(1000)));
  r.add(check_contour_vs_residue(ctx, ns, cfg.heavy(1000)));
  if (!small.empty()) r.add(check_weyl_pullback_curving(ctx, small, cfg.heavy(1000)));
  r.add(check_stable_iso(ctx, ns, cfg.count(1000)));
  r.add(check_three_curvature_decomposition(ctx, ns, cfg.heavy(10)));
  r.add(check_basic_three_form_pullback(ctx, ns, cfg.count(100)));
  r.add(check_beta_reduction(ctx, cfg.count(1000)));
  if (!ns3.empty()) r.add(check_beta_embedding(ctx, ns3, cfg.count(100)));
  r.add(check_chern_form_closed(ctx, cfg.heavy(10)));
  return r;
}

Report cmd_invariants(const RunConfig& cfg) {
  Report r{cfg, {}};
  const auto ctx = cfg.context();
  r.add(check_bloch_area(ctx));
  r.add(check_chern_tautological(ctx));
  r.add(check_chern_complement(ctx));
  r.add(check_chern_constant(ctx));
  r.add(check_chern_convergence(ctx));
  r.add(check_euler_volume(ctx));
  r.add(check_wzw(ctx));
  r.add(check_wzw_reversed(ctx));
  r.add(check_wzw_convergence(ctx));
  r.add(check_holonomy_integral(ctx));
  r.add(check_holonomy_ratio(ctx));
  r.add(check_holonomy_n_independence(ctx, cfg.ns));
  r.add(check_deligne_trivial(ctx));
  r.add(check_deligne_coboundary(ctx, cfg.count(100)));
  r.add(check_deligne_perturbed(ctx, cfg.count(100)));
  return r;
}

Report run_command(const RunConfig& cfg) {
  if (cfg.command == "identities") return cmd_identities(cfg);
  if (cfg.command == "curvings") return cmd_curvings(cfg);
  if (cfg.command == "invariants") return cmd_invariants(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

}  // namespace gerbe::verify
