#include "mprs/engine/master_problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mprs {

double stored_value(const Instance& inst, const HistoryEntry& entry, const GammaVector& gamma) {
  double v = 0.0;
  for (int k = 0; k < gamma.size(); ++k) v += gamma[k] * entry.pi[k];
  for (int j = 0; j < inst.n; ++j) {
    v += (entry.variant ? 1.0 : inst.deviations[j]) * entry.rho[j];
    v += inst.c_lower[j] * entry.x[j];
  }
  return v;
}

HistoryEntry entry_from_robust(const RobustSolution& sol, const GammaVector& gamma) {
  HistoryEntry e;
  e.pi = sol.pi;
  e.rho = sol.rho;
  e.x = sol.x;
  e.w = sol.w;
  e.alpha = sol.alpha;
  e.gamma = gamma;
  e.variant = sol.formulation == RobustMode::kVariant;
  return e;
}

namespace {

void check_inputs(const Instance& inst, const OmegaSpec& omega,
                  const std::vector<HistoryEntry>& history, bool variant) {
  if (history.empty()) throw ModelError("master problem needs a nonempty history");
  if (omega.dim() != inst.num_groups()) throw ModelError("omega dimension differs from K");
  for (const auto& e : history) {
    if (e.variant != variant) {
      throw ModelError(variant ? "variant master problem needs variant certificates"
                               : "standard master problem got variant certificates");
    }
    if (static_cast<int>(e.pi.size()) != inst.num_groups() ||
        static_cast<int>(e.x.size()) != inst.n || static_cast<int>(e.rho.size()) != inst.n) {
      throw ModelError("history entry dimensions differ from the instance");
    }
  }
}

void require_kind(const OmegaSpec& omega, OmegaKind kind) {
  if (omega.kind() != kind) {
    throw ModelError("master problem builder for " + std::string(to_string(kind)) +
                     " got a " + std::string(to_string(omega.kind())) + " domain");
  }
}

// d.rho^i + c_lower.x^i (variant: sum(rho^i) + c_lower.x^i).
double gamma_free_part(const Instance& inst, const HistoryEntry& e) {
  GammaVector zero(std::vector<double>(e.pi.size(), 0.0));
  return stored_value(inst, e, zero);
}

void negate_objective(MilpModel& m) {
  for (int j = 0; j < m.num_vars(); ++j) m.set_objective(j, -m.objective()[j]);
  m.set_sense(Sense::kMaximize);
}

// R(0) turned into "max -(d.rho + c_lower.x)" plus sigma.
QModel standard_base(const Instance& inst, bool relaxed) {
  const int K = inst.num_groups();
  auto rm = build_robust_milp(inst, GammaVector(std::vector<double>(K, 0.0)));
  QModel q;
  q.model = std::move(rm.model);
  negate_objective(q.model);
  if (relaxed) {
    std::vector<int> subset;
    for (int j = 0; j < inst.n; ++j) {
      subset.push_back(rm.layout.rho + j);
      subset.push_back(rm.layout.x + j);
    }
    q.model = relax_binaries(q.model, subset);
  }
  q.layout.groups = K;
  q.layout.n = inst.n;
  q.layout.pi = rm.layout.pi;
  q.layout.rho = rm.layout.rho;
  q.layout.x = rm.layout.x;
  q.layout.sigma = q.model.add_continuous(-kInfinity, kInfinity, "sigma", 1.0);
  return q;
}

// Continuous Gamma variables restricted to omega. Returns the first index.
int add_gamma_block(QModel& q, const OmegaSpec& omega) {
  auto& m = q.model;
  const int K = omega.dim();
  const auto ub = omega.upper_bound();
  int first = m.num_vars();
  switch (omega.kind()) {
    case OmegaKind::kInterval:
      for (int k = 0; k < K; ++k) {
        m.add_continuous(omega.lower()[k], omega.upper()[k], "gamma" + std::to_string(k));
      }
      break;
    case OmegaKind::kSegment: {
      for (int k = 0; k < K; ++k) m.add_continuous(0.0, ub[k], "gamma" + std::to_string(k));
      const int a = m.add_continuous(omega.alpha_lo(), omega.alpha_hi(), "alpha");
      q.layout.segment_alpha = a;
      for (int k = 0; k < K; ++k) {
        m.add_constraint({{first + k, 1.0}, {a, -omega.gamma0()[k]}}, Relation::kEqual, 0.0);
      }
      break;
    }
    case OmegaKind::kBudgeted: {
      for (int k = 0; k < K; ++k) {
        m.add_continuous(omega.gamma_lo()[k], ub[k], "gamma" + std::to_string(k));
      }
      const int b = m.num_vars();
      q.layout.beta = b;
      std::vector<LinearTerm> total;
      for (int k = 0; k < K; ++k) {
        m.add_continuous(0.0, omega.spread()[k], "beta" + std::to_string(k));
        m.add_constraint({{first + k, 1.0}, {b + k, -1.0}}, Relation::kEqual, omega.gamma_lo()[k]);
        total.push_back({b + k, 1.0});
      }
      m.add_constraint(std::move(total), Relation::kLessEqual, omega.budget());
      break;
    }
  }
  q.layout.gamma = first;
  return first;
}

// w_k in [0, U_k] with objective -1.
int add_wk_block(QModel& q, const std::vector<double>& ub) {
  const int first = q.model.num_vars();
  for (int k = 0; k < q.layout.groups; ++k) {
    q.model.add_continuous(0.0, ub[k], "w" + std::to_string(k), -1.0);
  }
  q.layout.wk = first;
  return first;
}

}  // namespace

QModel build_q_general(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history, bool relaxed) {
  check_inputs(inst, omega, history, false);
  QModel q = standard_base(inst, relaxed);
  q.form = QForm::kGeneral;
  const int K = inst.num_groups();
  const auto ub = omega.upper_bound();
  const int g = add_gamma_block(q, omega);
  const int w = add_wk_block(q, ub);
  auto& m = q.model;
  const auto& lay = q.layout;
  for (int k = 0; k < K; ++k) {
    m.add_constraint({{w + k, 1.0}, {g + k, -1.0}, {lay.pi + k, -ub[k]}},
                     Relation::kGreaterEqual, -ub[k]);
  }
  for (const auto& e : history) {
    std::vector<LinearTerm> t{{lay.sigma, 1.0}};
    for (int k = 0; k < K; ++k) {
      if (e.pi[k] != 0.0) t.push_back({g + k, -e.pi[k]});
    }
    m.add_constraint(std::move(t), Relation::kLessEqual, gamma_free_part(inst, e));
  }
  return q;
}

QModel build_q_interval(const Instance& inst, const OmegaSpec& omega,
                        const std::vector<HistoryEntry>& history, bool relaxed) {
  require_kind(omega, OmegaKind::kInterval);
  check_inputs(inst, omega, history, false);
  QModel q = standard_base(inst, relaxed);
  q.form = QForm::kInterval;
  q.interval_lower = omega.lower();
  q.interval_upper = omega.upper();
  const int K = inst.num_groups();
  const auto& lo = omega.lower();
  const auto& up = omega.upper();
  auto& m = q.model;
  const auto& lay = q.layout;
  for (int k = 0; k < K; ++k) m.set_objective(lay.pi + k, -lo[k]);
  for (const auto& e : history) {
    std::vector<LinearTerm> t{{lay.sigma, 1.0}};
    double rhs = gamma_free_part(inst, e);
    for (int k = 0; k < K; ++k) {
      const double f = (up[k] - lo[k]) * e.pi[k];
      if (f != 0.0) t.push_back({lay.pi + k, f});
      rhs += up[k] * e.pi[k];
    }
    m.add_constraint(std::move(t), Relation::kLessEqual, rhs);
  }
  return q;
}

QModel build_q_segment(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history, bool relaxed) {
  require_kind(omega, OmegaKind::kSegment);
  check_inputs(inst, omega, history, false);
  QModel q = standard_base(inst, relaxed);
  q.form = QForm::kSegment;
  const int K = inst.num_groups();
  const auto& g0 = omega.gamma0();
  const double ahi = omega.alpha_hi();
  auto& m = q.model;
  const int a = m.add_continuous(omega.alpha_lo(), ahi, "alpha");
  q.layout.segment_alpha = a;
  std::vector<double> ub(K);
  for (int k = 0; k < K; ++k) ub[k] = ahi * g0[k];
  const int w = add_wk_block(q, ub);
  const auto& lay = q.layout;
  for (int k = 0; k < K; ++k) {
    m.add_constraint({{w + k, 1.0}, {a, -g0[k]}, {lay.pi + k, -ub[k]}},
                     Relation::kGreaterEqual, -ub[k]);
  }
  for (const auto& e : history) {
    double slope = 0.0;
    for (int k = 0; k < K; ++k) slope += g0[k] * e.pi[k];
    std::vector<LinearTerm> t{{lay.sigma, 1.0}};
    if (slope != 0.0) t.push_back({a, -slope});
    m.add_constraint(std::move(t), Relation::kLessEqual, gamma_free_part(inst, e));
  }
  return q;
}

QModel build_q_budgeted(const Instance& inst, const OmegaSpec& omega,
                        const std::vector<HistoryEntry>& history, bool relaxed) {
  require_kind(omega, OmegaKind::kBudgeted);
  check_inputs(inst, omega, history, false);
  QModel q = standard_base(inst, relaxed);
  q.form = QForm::kBudgeted;
  const int K = inst.num_groups();
  const auto& glo = omega.gamma_lo();
  const auto& spread = omega.spread();
  auto& m = q.model;
  const int b = m.num_vars();
  q.layout.beta = b;
  std::vector<LinearTerm> total;
  for (int k = 0; k < K; ++k) {
    m.add_continuous(0.0, spread[k], "beta" + std::to_string(k));
    total.push_back({b + k, 1.0});
  }
  m.add_constraint(std::move(total), Relation::kLessEqual, omega.budget());
  const auto ub = omega.upper_bound();
  const int w = add_wk_block(q, ub);
  const auto& lay = q.layout;
  for (int k = 0; k < K; ++k) {
    m.add_constraint({{w + k, 1.0}, {b + k, -1.0}, {lay.pi + k, -ub[k]}},
                     Relation::kGreaterEqual, -spread[k]);
  }
  for (const auto& e : history) {
    std::vector<LinearTerm> t{{lay.sigma, 1.0}};
    double rhs = gamma_free_part(inst, e);
    for (int k = 0; k < K; ++k) {
      if (e.pi[k] != 0.0) t.push_back({b + k, -e.pi[k]});
      rhs += glo[k] * e.pi[k];
    }
    m.add_constraint(std::move(t), Relation::kLessEqual, rhs);
  }
  return q;
}

QModel build_q_variant(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history) {
  check_inputs(inst, omega, history, true);
  const int K = inst.num_groups();
  auto rm = build_robust_variant_milp(inst, GammaVector(std::vector<double>(K, 0.0)));
  QModel q;
  q.form = QForm::kVariant;
  q.model = std::move(rm.model);
  negate_objective(q.model);
  auto& m = q.model;
  auto& lay = q.layout;
  lay.groups = K;
  lay.n = inst.n;
  lay.w = rm.layout.w;
  lay.alpha = rm.layout.alpha;
  lay.rho = rm.layout.rho;
  lay.x = rm.layout.x;
  lay.sigma = m.add_continuous(-kInfinity, kInfinity, "sigma", 1.0);
  const int g = add_gamma_block(q, omega);
  const auto ub = omega.upper_bound();
  const auto group = group_of(inst);
  lay.z = m.num_vars();
  for (int s = 0; s < inst.n; ++s) {
    const int k = group[s];
    const double cap = k >= 0 ? ub[k] : 0.0;
    m.add_continuous(0.0, cap, "z" + std::to_string(s), -inst.deviations[s]);
  }
  for (int s = 0; s < inst.n; ++s) {
    const int k = group[s];
    if (k < 0 || inst.deviations[s] == 0.0) continue;
    m.add_constraint({{lay.z + s, 1.0}, {g + k, -1.0}, {lay.w + s, -ub[k]}},
                     Relation::kGreaterEqual, -ub[k]);
  }
  for (const auto& e : history) {
    std::vector<LinearTerm> t{{lay.sigma, 1.0}};
    for (int k = 0; k < K; ++k) {
      if (e.pi[k] != 0.0) t.push_back({g + k, -e.pi[k]});
    }
    m.add_constraint(std::move(t), Relation::kLessEqual, gamma_free_part(inst, e));
  }
  return q;
}

QModel build_q(const Instance& inst, const OmegaSpec& omega,
               const std::vector<HistoryEntry>& history, bool relaxed, bool use_general) {
  if (!history.empty() && history.front().variant) return build_q_variant(inst, omega, history);
  if (use_general) return build_q_general(inst, omega, history, relaxed);
  switch (omega.kind()) {
    case OmegaKind::kInterval: return build_q_interval(inst, omega, history, relaxed);
    case OmegaKind::kSegment: return build_q_segment(inst, omega, history, relaxed);
    case OmegaKind::kBudgeted: return build_q_budgeted(inst, omega, history, relaxed);
  }
  return build_q_general(inst, omega, history, relaxed);
}

QOptimum extract_q_optimum(const Instance& inst, const OmegaSpec& omega, const QModel& q,
                           const std::vector<HistoryEntry>& history,
                           const MilpSolution& solution, bool relaxed) {
  const auto& v = solution.values;
  const auto& lay = q.layout;
  const int K = lay.groups;
  std::vector<double> gamma(K);
  switch (q.form) {
    case QForm::kInterval:
      for (int k = 0; k < K; ++k) {
        const double p = v[lay.pi + k];
        gamma[k] = q.interval_lower[k] * p + q.interval_upper[k] * (1.0 - p);
      }
      break;
    case QForm::kSegment:
      for (int k = 0; k < K; ++k) gamma[k] = v[lay.segment_alpha] * omega.gamma0()[k];
      break;
    case QForm::kBudgeted:
      for (int k = 0; k < K; ++k) gamma[k] = omega.gamma_lo()[k] + v[lay.beta + k];
      break;
    case QForm::kGeneral:
    case QForm::kVariant:
      for (int k = 0; k < K; ++k) gamma[k] = v[lay.gamma + k];
      break;
  }
  for (auto& g : gamma) g = std::max(0.0, g);

  QOptimum out;
  out.gamma = GammaVector(gamma);
  auto& e = out.entry;
  e.gamma = out.gamma;
  e.x.assign(v.begin() + lay.x, v.begin() + lay.x + inst.n);
  e.rho.assign(v.begin() + lay.rho, v.begin() + lay.rho + inst.n);
  if (q.form == QForm::kVariant) {
    e.variant = true;
    e.w.assign(v.begin() + lay.w, v.begin() + lay.w + inst.n);
    e.alpha.assign(v.begin() + lay.alpha, v.begin() + lay.alpha + inst.n);
    e.pi = variant_breakpoints(inst, e.w);
  } else {
    e.pi.assign(v.begin() + lay.pi, v.begin() + lay.pi + K);
    if (relaxed) {
      for (auto& xj : e.x) {
        const double r = std::round(xj);
        if (std::abs(xj - r) > 1e-6) {
          throw std::logic_error("relaxed master problem returned fractional x");
        }
        xj = r;
      }
      const auto group = group_of(inst);
      for (int j = 0; j < inst.n; ++j) {
        e.rho[j] = group[j] < 0 ? 0.0 : (1.0 - e.pi[group[j]]) * e.x[j];
      }
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : history) best = std::min(best, stored_value(inst, h, out.gamma));
  out.value = best - stored_value(inst, e, out.gamma);
  e.q_value_at_discovery = out.value;
  return out;
}

}  // namespace mprs
