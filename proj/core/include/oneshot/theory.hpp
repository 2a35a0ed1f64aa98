#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "oneshot/actions.hpp"
#include "oneshot/belief.hpp"
#include "oneshot/belief_mdp.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/user_model.hpp"

namespace oneshot {

// Greedy approximation factor 1 - (1 - 1/k)^(k+1). Decreases towards
// 1 - 1/e from above; equals 1 at k = 1.
double beta(int k);

// The conservative constant 1 - 1/e, always a valid (weaker) factor.
double beta_conservative();

// Best belief-weighted continuation probability over all displays of exactly
// k items: rho(c) = max_w sum_m c(m) sum_{l in w} P(l|m,w).
double rho(const UserTypeModel& model, const Belief& c, int k);

// Worst-case belief-weighted submodularity slack of the one-step backup:
//   theta_bar(c) = max_{|w|=k, l' not in w}
//                  sum_m c(m) P(l'|m, w+l') * sum_{l in w} P(l|m,w) * gamma/(B-gamma).
// Returns 0 when no (w, l') pair exists (fewer than k+1 items).
double theta_bar(const UserTypeModel& model, const Belief& c, int k, double gamma, double B);

// Slack of one specific pair: adding l' to w_a.
double theta_pair(const UserTypeModel& model, const Belief& c, const Action& w_a, int extra,
                  double gamma, double B);

// Accumulated slack over t backups: Omega_{t,c} = (k-1) theta_bar(c) *
// sum_{i=0}^{t-1} (beta gamma rho(c))^i.
double omega(int t, double beta_value, double gamma, double rho_c, double theta_bar_c, int k);

// Relative slack ratio bound (k-1) theta_bar(c) / rho(c); +infinity when
// rho(c) = 0 (vacuous instance).
double lambda_bound(double rho_c, double theta_bar_c, int k);

// Model-free heuristic bound gamma / (B (B - gamma)).
double lambda_heuristic(double gamma, double B);

// -- Theorem 1: greedy value iteration sandwich ------------------------------
//
// Runs, from the all-zero value function and over the same arithmetic path,
//   * exact VI at discount gamma,
//   * greedy VI at discount gamma,
//   * exact VI at the shrunk discounts beta*gamma (both beta readings),
// and evaluates per state and per sweep
//   upper:  (greedy VI)(c)  <=  (exact VI)(c)
//   lower:  beta * ((exact VI at beta*gamma)(c) - Omega_{t,c})  <=  (greedy VI)(c).
// The lower inequality is part of the theorem only under its hypothesis
// B >= 2; `hypothesis_met` gates how callers interpret the lower residuals.
struct Theorem1Report {
  int t = 0;
  int k = 0;
  double gamma = 0.0;
  double B = 0.0;
  bool hypothesis_met = false;  // B >= 2
  double beta_stated = 0.0;
  double beta_cons = 0.0;
  double lambda_heur = 0.0;

  std::vector<double> rho_c;        // per net state
  std::vector<double> theta_bar_c;  // per net state
  std::vector<double> omega_stated;  // Omega_{t,c} at the final horizon
  std::vector<double> omega_cons;
  std::vector<double> lambda_bound_c;

  std::vector<double> v_exact;   // exact VI after t sweeps
  std::vector<double> v_greedy;  // greedy VI after t sweeps
  std::vector<double> v_shrunk_stated;  // exact VI at beta_stated*gamma
  std::vector<double> v_shrunk_cons;    // exact VI at (1-1/e)*gamma

  std::vector<double> upper_residual;         // greedy - exact at final sweep
  std::vector<double> lower_residual_stated;  // beta(v_shrunk - omega) - greedy
  std::vector<double> lower_residual_cons;

  // Maxima over every sweep 1..t and every state.
  double max_upper_violation = 0.0;
  double max_lower_violation_stated = 0.0;
  double max_lower_violation_cons = 0.0;
  bool upper_ok = false;
  bool lower_ok_stated = false;
  bool lower_ok_cons = false;
};

Theorem1Report check_theorem1(const BeliefMdpAdapter& mdp, double gamma, int t,
                              double tolerance = 1e-9);

// -- Theorem 2: discretized greedy VI against a finer reference --------------
//
// Solves greedy VI on the coarse net and exact VI on a finer net whose
// resolution is a multiple of the coarse one (so every coarse point is also a
// fine point), then bounds (greedy on coarse) - (exact on fine) by the
// accumulated per-sweep discretization error
//   bound = epsilon_d * sum_{i=0}^{t-1} (gamma/B)^i,
//   epsilon_d = epsilon/(B-gamma) + 2*epsilon*gamma/(B-gamma)^2,  epsilon = 2/resolution.
struct Theorem2Report {
  int resolution = 0;
  int fine_resolution = 0;
  int t = 0;
  double gamma = 0.0;
  double B = 0.0;
  double epsilon = 0.0;
  double epsilon_d = 0.0;
  double bound = 0.0;
  double max_gap = 0.0;                 // max over coarse states: greedy(coarse) - exact(fine)
  double max_discretization_gap = 0.0;  // max |exact(coarse) - exact(fine)|
  bool ok = false;
};

Theorem2Report check_theorem2(const UserTypeModel& model, int max_set_size, double gamma, int t,
                              int resolution, int fine_resolution, double tolerance = 1e-9);

// -- Greedy bound for almost-monotone, almost-submodular set functions -------
//
// Requires f(empty) = 0. Brute-forces OPT over all sets of size <= k and
// asserts  f(greedy_k) >= beta * (OPT - (k-1)*theta - k*epsilon)  for the
// supplied slack parameters.
struct NemhauserReport {
  Action greedy_set;
  double greedy_value = 0.0;
  Action opt_set;
  double opt_value = 0.0;
  double beta_value = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  double bound = 0.0;
  bool ok = false;
};

NemhauserReport check_nemhauser(const std::function<double(const Action&)>& f, int num_items,
                                int k, double theta, double epsilon, double beta_value,
                                double tolerance = 1e-9);

// Exhaustively measures the monotonicity slack (largest value drop when
// adding one item) and the submodularity slack (largest excess of a
// superset's marginal gain over a nested subset's) over every subset of the
// ground set. Work grows as 3^n; guarded.
struct SlackReport {
  double epsilon = 0.0;
  double theta = 0.0;
  uint64_t tuples_checked = 0;
};

SlackReport measure_slacks(const std::function<double(const Action&)>& f, int num_items,
                           uint64_t work_cap = 200'000'000);

// Unweighted set-coverage function over a universe of <= 64 elements:
// f(w) = |union of the covered sets|. Monotone and submodular, f(empty) = 0.
class CoverageFunction {
 public:
  explicit CoverageFunction(std::vector<uint64_t> item_masks);

  double operator()(const Action& w) const;
  int num_items() const { return static_cast<int>(item_masks_.size()); }

  // Each element of the universe is covered by each item independently with
  // probability `density`.
  static CoverageFunction sample(Rng& rng, int num_items, int universe_size, double density);

 private:
  std::vector<uint64_t> item_masks_;
};

// Random ratio-score model with per-type no-click mass p_m = k * (top row
// score) * U[1,2], which forces every continuation probability below 1/2 and
// hence B >= 2 (the regime Theorem 1's lower bound assumes).
UserTypeModel random_conforming_model(Rng& rng, int num_types, int num_items, int max_set_size);

// Random ratio-score model with p_m >= gamma * k * (top row score) * (1 +
// margin), which forces B >= 1 + gamma — the regime where the greedy-VI Q
// sequence is monotone in the displayed set.
UserTypeModel random_q_monotone_model(Rng& rng, int num_types, int num_items, int max_set_size,
                                      double gamma, double margin = 0.05);

}  // namespace oneshot
