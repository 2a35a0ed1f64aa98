#include "oneshot/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "oneshot/errors.hpp"
#include "oneshot/planner.hpp"

namespace oneshot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All subsets of size exactly k over {0..n-1}, canonical order, guarded.
std::vector<Action> size_k_subsets(int n, int k) {
  if (k <= 0 || n < k) throw ValidationError("size_k_subsets: need 0 < k <= num_items");
  if (count_actions(n, k) > 2'000'000) {
    throw GuardError("size_k_subsets: subset count too large for brute force");
  }
  std::vector<Action> out;
  for (Action& w : enumerate_actions(n, k)) {
    if (static_cast<int>(w.size()) == k) out.push_back(std::move(w));
  }
  return out;
}

Action mask_to_action(uint64_t mask) {
  Action w;
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    w.push_back(bit);
    mask &= mask - 1;
  }
  return w;
}

}  // namespace

double beta(int k) {
  if (k < 1) throw ValidationError("beta: k must be >= 1");
  return 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(k), k + 1);
}

double beta_conservative() { return 1.0 - std::exp(-1.0); }

double rho(const UserTypeModel& model, const Belief& c, int k) {
  if (c.num_types() != model.num_types()) throw ValidationError("rho: belief/model type mismatch");
  double best = 0.0;
  for (const Action& w : size_k_subsets(model.num_items(), k)) {
    best = std::max(best, mixture_continuation_prob(model, c, w));
  }
  return best;
}

double theta_pair(const UserTypeModel& model, const Belief& c, const Action& w_a, int extra,
                  double gamma, double B) {
  if (std::binary_search(w_a.begin(), w_a.end(), extra)) {
    throw ValidationError("theta_pair: extra item already displayed");
  }
  Action grown = w_a;
  grown.insert(std::upper_bound(grown.begin(), grown.end(), extra), extra);
  double total = 0.0;
  for (int m = 0; m < model.num_types(); ++m) {
    total += c[m] * model.choice_prob(m, grown, extra) * model.continuation_prob(m, w_a);
  }
  return total * (gamma / (B - gamma));
}

double theta_bar(const UserTypeModel& model, const Belief& c, int k, double gamma, double B) {
  if (c.num_types() != model.num_types()) {
    throw ValidationError("theta_bar: belief/model type mismatch");
  }
  const int n = model.num_items();
  if (n < k + 1) return 0.0;  // no (w, l') pair exists; the slack term vanishes
  double best = 0.0;
  for (const Action& w : size_k_subsets(n, k)) {
    for (int extra = 0; extra < n; ++extra) {
      if (std::binary_search(w.begin(), w.end(), extra)) continue;
      Action grown = w;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), extra), extra);
      double total = 0.0;
      for (int m = 0; m < model.num_types(); ++m) {
        total += c[m] * model.choice_prob(m, grown, extra) * model.continuation_prob(m, w);
      }
      best = std::max(best, total);
    }
  }
  return best * (gamma / (B - gamma));
}

double omega(int t, double beta_value, double gamma, double rho_c, double theta_bar_c, int k) {
  if (t < 0) throw ValidationError("omega: t must be >= 0");
  const double x = beta_value * gamma * rho_c;
  double sum = 0.0, term = 1.0;
  for (int i = 0; i < t; ++i) {
    sum += term;
    term *= x;
  }
  return sum * (k - 1) * theta_bar_c;
}

double lambda_bound(double rho_c, double theta_bar_c, int k) {
  if (rho_c <= 0.0) return kInf;
  return (k - 1) * theta_bar_c / rho_c;
}

double lambda_heuristic(double gamma, double B) { return gamma / (B * (B - gamma)); }

Theorem1Report check_theorem1(const BeliefMdpAdapter& mdp, double gamma, int t,
                              double tolerance) {
  if (t < 1) throw ValidationError("check_theorem1: t must be >= 1");
  const UserTypeModel& model = mdp.model();
  const BeliefNet& net = mdp.net();
  const int k = mdp.max_set_size();
  const int S = mdp.state_count();

  Theorem1Report rep;
  rep.t = t;
  rep.k = k;
  rep.gamma = gamma;
  rep.B = model.assumption_B(k);
  rep.hypothesis_met = rep.B >= 2.0;
  rep.beta_stated = beta(k);
  rep.beta_cons = beta_conservative();
  rep.lambda_heur = lambda_heuristic(gamma, rep.B);

  rep.rho_c.resize(S);
  rep.theta_bar_c.resize(S);
  rep.lambda_bound_c.resize(S);
  for (int s = 0; s < S; ++s) {
    rep.rho_c[s] = rho(model, net.point(s), k);
    rep.theta_bar_c[s] = theta_bar(model, net.point(s), k, gamma, rep.B);
    rep.lambda_bound_c[s] = lambda_bound(rep.rho_c[s], rep.theta_bar_c[s], k);
  }

  // Four synchronized runs from zero, compared sweep by sweep. All four use
  // the shared q_value path, so the upper comparison is free of independent
  // rounding.
  ValueFunction v_exact = ValueFunction::zero(S);
  ValueFunction v_greedy = ValueFunction::zero(S);
  ValueFunction v_bs = ValueFunction::zero(S);
  ValueFunction v_bc = ValueFunction::zero(S);
  rep.max_upper_violation = -kInf;
  rep.max_lower_violation_stated = -kInf;
  rep.max_lower_violation_cons = -kInf;
  for (int sweep = 1; sweep <= t; ++sweep) {
    v_exact = exact_bellman(mdp, v_exact, gamma).values;
    v_greedy = greedy_bellman(mdp, v_greedy, gamma).values;
    v_bs = exact_bellman(mdp, v_bs, rep.beta_stated * gamma).values;
    v_bc = exact_bellman(mdp, v_bc, rep.beta_cons * gamma).values;
    for (int s = 0; s < S; ++s) {
      rep.max_upper_violation = std::max(rep.max_upper_violation, v_greedy[s] - v_exact[s]);
      const double om_s =
          omega(sweep, rep.beta_stated, gamma, rep.rho_c[s], rep.theta_bar_c[s], k);
      const double om_c = omega(sweep, rep.beta_cons, gamma, rep.rho_c[s], rep.theta_bar_c[s], k);
      rep.max_lower_violation_stated = std::max(
          rep.max_lower_violation_stated, rep.beta_stated * (v_bs[s] - om_s) - v_greedy[s]);
      rep.max_lower_violation_cons = std::max(rep.max_lower_violation_cons,
                                              rep.beta_cons * (v_bc[s] - om_c) - v_greedy[s]);
    }
  }

  rep.v_exact = v_exact.values;
  rep.v_greedy = v_greedy.values;
  rep.v_shrunk_stated = v_bs.values;
  rep.v_shrunk_cons = v_bc.values;
  rep.omega_stated.resize(S);
  rep.omega_cons.resize(S);
  rep.upper_residual.resize(S);
  rep.lower_residual_stated.resize(S);
  rep.lower_residual_cons.resize(S);
  for (int s = 0; s < S; ++s) {
    rep.omega_stated[s] = omega(t, rep.beta_stated, gamma, rep.rho_c[s], rep.theta_bar_c[s], k);
    rep.omega_cons[s] = omega(t, rep.beta_cons, gamma, rep.rho_c[s], rep.theta_bar_c[s], k);
    rep.upper_residual[s] = v_greedy[s] - v_exact[s];
    rep.lower_residual_stated[s] =
        rep.beta_stated * (v_bs[s] - rep.omega_stated[s]) - v_greedy[s];
    rep.lower_residual_cons[s] = rep.beta_cons * (v_bc[s] - rep.omega_cons[s]) - v_greedy[s];
  }
  rep.upper_ok = rep.max_upper_violation <= tolerance;
  rep.lower_ok_stated = rep.max_lower_violation_stated <= tolerance;
  rep.lower_ok_cons = rep.max_lower_violation_cons <= tolerance;
  return rep;
}

Theorem2Report check_theorem2(const UserTypeModel& model, int max_set_size, double gamma, int t,
                              int resolution, int fine_resolution, double tolerance) {
  if (t < 1) throw ValidationError("check_theorem2: t must be >= 1");
  if (resolution < 1 || fine_resolution < resolution || fine_resolution % resolution != 0) {
    throw ValidationError(
        "check_theorem2: fine_resolution must be a positive multiple of resolution");
  }
  const int M = model.num_types();
  const BeliefNet coarse = BeliefNet::build(M, resolution);
  const BeliefNet fine = BeliefNet::build(M, fine_resolution);
  const BeliefMdpAdapter mdp_coarse(model, coarse, max_set_size);
  const BeliefMdpAdapter mdp_fine(model, fine, max_set_size);

  Theorem2Report rep;
  rep.resolution = resolution;
  rep.fine_resolution = fine_resolution;
  rep.t = t;
  rep.gamma = gamma;
  rep.B = model.assumption_B(max_set_size);
  rep.epsilon = coarse.epsilon();
  const double bg = rep.B - gamma;
  rep.epsilon_d = rep.epsilon / bg + 2.0 * rep.epsilon * gamma / (bg * bg);

  ValueFunction vg_coarse = ValueFunction::zero(coarse.size());
  ValueFunction ve_coarse = ValueFunction::zero(coarse.size());
  ValueFunction ve_fine = ValueFunction::zero(fine.size());
  double contraction_sum = 0.0, term = 1.0;
  for (int sweep = 1; sweep <= t; ++sweep) {
    vg_coarse = greedy_bellman(mdp_coarse, vg_coarse, gamma).values;
    ve_coarse = exact_bellman(mdp_coarse, ve_coarse, gamma).values;
    ve_fine = exact_bellman(mdp_fine, ve_fine, gamma).values;
    contraction_sum += term;
    term *= gamma / rep.B;
  }
  rep.bound = rep.epsilon_d * contraction_sum;

  const int scale = fine_resolution / resolution;
  rep.max_gap = -kInf;
  rep.max_discretization_gap = 0.0;
  for (int i = 0; i < coarse.size(); ++i) {
    std::vector<int> comp = coarse.composition(i);
    for (int& part : comp) part *= scale;
    const int j = fine.index_of_composition(comp);
    rep.max_gap = std::max(rep.max_gap, vg_coarse[i] - ve_fine[j]);
    rep.max_discretization_gap =
        std::max(rep.max_discretization_gap, std::abs(ve_coarse[i] - ve_fine[j]));
  }
  rep.ok = rep.max_gap <= rep.bound + tolerance;
  return rep;
}

NemhauserReport check_nemhauser(const std::function<double(const Action&)>& f, int num_items,
                                int k, double theta, double epsilon, double beta_value,
                                double tolerance) {
  if (num_items < 1 || k < 1) throw ValidationError("check_nemhauser: need items and k >= 1");
  if (std::abs(f(Action{})) > 1e-12) {
    throw ValidationError("check_nemhauser: f(empty set) must be 0");
  }
  if (count_actions(num_items, k) > 5'000'000) {
    throw GuardError("check_nemhauser: action space too large for brute-force OPT");
  }
  NemhauserReport rep;
  rep.theta = theta;
  rep.epsilon = epsilon;
  rep.beta_value = beta_value;
  rep.greedy_set = greedy_argmax(f, num_items, k, &rep.greedy_value);
  rep.opt_value = -kInf;
  for (const Action& w : enumerate_actions(num_items, k)) {
    const double v = f(w);
    if (v > rep.opt_value) {
      rep.opt_value = v;
      rep.opt_set = w;
    }
  }
  rep.bound = beta_value * (rep.opt_value - (k - 1) * theta - k * epsilon);
  rep.ok = rep.greedy_value >= rep.bound - tolerance;
  return rep;
}

SlackReport measure_slacks(const std::function<double(const Action&)>& f, int num_items,
                           uint64_t work_cap) {
  if (num_items < 1 || num_items > 25) {
    throw ValidationError("measure_slacks: num_items must lie in [1, 25]");
  }
  // Nested-pair scan touches every (superset, subset) pair: 3^n of them.
  uint64_t pairs = 1;
  for (int i = 0; i < num_items; ++i) pairs *= 3;
  if (pairs * static_cast<uint64_t>(num_items) > work_cap) {
    throw GuardError("measure_slacks: 3^n scan exceeds work cap");
  }

  const uint64_t full = uint64_t{1} << num_items;
  std::vector<double> value(full, 0.0);
  for (uint64_t mask = 0; mask < full; ++mask) value[mask] = f(mask_to_action(mask));

  SlackReport rep;
  for (uint64_t wb = 0; wb < full; ++wb) {
    for (int l = 0; l < num_items; ++l) {
      const uint64_t bit = uint64_t{1} << l;
      if ((wb & bit) != 0) continue;
      const double gain_b = value[wb | bit] - value[wb];
      rep.epsilon = std::max(rep.epsilon, -gain_b);
      ++rep.tuples_checked;
      // Strict submasks of wb.
      for (uint64_t wa = (wb - 1) & wb; wa != wb; wa = (wa - 1) & wb) {
        const double gain_a = value[wa | bit] - value[wa];
        rep.theta = std::max(rep.theta, gain_b - gain_a);
        ++rep.tuples_checked;
        if (wa == 0) break;
      }
    }
  }
  return rep;
}

CoverageFunction::CoverageFunction(std::vector<uint64_t> item_masks)
    : item_masks_(std::move(item_masks)) {
  if (item_masks_.empty()) throw ValidationError("CoverageFunction: need at least one item");
}

double CoverageFunction::operator()(const Action& w) const {
  uint64_t covered = 0;
  for (int item : w) {
    if (item < 0 || item >= num_items()) {
      throw ValidationError("CoverageFunction: item out of range");
    }
    covered |= item_masks_[static_cast<size_t>(item)];
  }
  return static_cast<double>(std::popcount(covered));
}

CoverageFunction CoverageFunction::sample(Rng& rng, int num_items, int universe_size,
                                          double density) {
  if (num_items < 1) throw ValidationError("CoverageFunction: need at least one item");
  if (universe_size < 1 || universe_size > 64) {
    throw ValidationError("CoverageFunction: universe_size must lie in [1, 64]");
  }
  if (density < 0.0 || density > 1.0) {
    throw ValidationError("CoverageFunction: density must lie in [0, 1]");
  }
  std::vector<uint64_t> masks(static_cast<size_t>(num_items), 0);
  for (int item = 0; item < num_items; ++item) {
    for (int u = 0; u < universe_size; ++u) {
      if (rng.next_double() < density) masks[static_cast<size_t>(item)] |= uint64_t{1} << u;
    }
  }
  return CoverageFunction(std::move(masks));
}

namespace {

UserTypeModel random_ratio_model(Rng& rng, int num_types, int num_items,
                                 const std::function<double(double)>& termination_of_rowmax) {
  std::vector<std::vector<double>> scores(static_cast<size_t>(num_types));
  std::vector<double> termination(static_cast<size_t>(num_types));
  for (int m = 0; m < num_types; ++m) {
    scores[static_cast<size_t>(m)].resize(static_cast<size_t>(num_items));
    double rowmax = 0.0;
    for (int i = 0; i < num_items; ++i) {
      const double s = rng.uniform(0.05, 1.0);
      scores[static_cast<size_t>(m)][static_cast<size_t>(i)] = s;
      rowmax = std::max(rowmax, s);
    }
    termination[static_cast<size_t>(m)] = termination_of_rowmax(rowmax);
  }
  return UserTypeModel(std::move(scores), std::move(termination));
}

}  // namespace

UserTypeModel random_conforming_model(Rng& rng, int num_types, int num_items, int max_set_size) {
  // p_m >= k * rowmax >= (top-k score sum) forces continuation <= 1/2.
  return random_ratio_model(rng, num_types, num_items, [&](double rowmax) {
    return max_set_size * rowmax * rng.uniform(1.0, 2.0);
  });
}

UserTypeModel random_q_monotone_model(Rng& rng, int num_types, int num_items, int max_set_size,
                                      double gamma, double margin) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("random_q_monotone_model: gamma must lie in [0, 1]");
  }
  if (margin < 0.0) throw ValidationError("random_q_monotone_model: margin must be >= 0");
  // p_m >= gamma * k * rowmax forces continuation <= 1/(1+gamma), i.e.
  // B >= 1 + gamma. The floor keeps p_m positive when gamma = 0.
  return random_ratio_model(rng, num_types, num_items, [&](double rowmax) {
    return std::max(0.05, gamma * max_set_size * rowmax * (1.0 + margin));
  });
}

}  // namespace oneshot
