#include "mprs/engine/nominal.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mprs {
namespace {

void check(const ParametricNominal& p) {
  p.model.validate();
  if (p.model.sense() != Sense::kMinimize) throw ModelError("nominal model must minimise");
  const std::size_t np = p.params.size();
  if (p.lower.size() != np || p.upper.size() != np) {
    throw ModelError("cost box dimension differs from the parameter count");
  }
  std::vector<char> seen(p.model.num_vars(), 0);
  for (std::size_t i = 0; i < np; ++i) {
    const int j = p.params[i];
    if (j < 0 || j >= p.model.num_vars()) throw ModelError("parameter index out of range");
    if (seen[j]++) throw ModelError("parameter listed twice");
    if (p.model.var(j).kind != VarKind::kBinary) {
      throw ModelError("cost parameters must multiply 0-1 variables");
    }
    if (!(p.lower[i] <= p.upper[i])) throw ModelError("cost box has lower > upper");
  }
}

// Objective restricted to non-parameter variables, plus offset.
std::vector<double> fixed_costs(const ParametricNominal& p) {
  std::vector<double> c(p.model.objective().begin(), p.model.objective().end());
  for (int j : p.params) c[j] = 0.0;
  return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Cost of x under the parameter values `cost` (one per parameter).
double value_at(const ParametricNominal& p, const std::vector<double>& fixed,
                const std::vector<double>& cost, const std::vector<double>& x) {
  double v = dot(fixed, x) + p.model.objective_offset();
  for (std::size_t i = 0; i < p.params.size(); ++i) v += cost[i] * x[p.params[i]];
  return v;
}

}  // namespace

int NominalResult::distinct_solutions() const {
  std::vector<std::vector<double>> seen;
  for (const auto& s : solutions) {
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
  }
  return static_cast<int>(seen.size());
}

NominalMaster build_nominal_master(const ParametricNominal& p,
                                   const std::vector<std::vector<double>>& stored, bool general) {
  check(p);
  if (stored.empty()) throw ModelError("master problem needs a nonempty history");
  const auto fixed = fixed_costs(p);
  NominalMaster out;
  auto& m = out.model;
  m = p.model;
  for (int j = 0; j < m.num_vars(); ++j) m.set_objective(j, -fixed[j]);
  m.set_objective_offset(-p.model.objective_offset());
  m.set_sense(Sense::kMaximize);
  out.sigma = m.add_continuous(-kInfinity, kInfinity, "sigma", 1.0);
  const int np = static_cast<int>(p.params.size());
  if (general) {
    out.cost = m.num_vars();
    for (int i = 0; i < np; ++i) m.add_continuous(p.lower[i], p.upper[i]);
    out.w = m.num_vars();
    for (int i = 0; i < np; ++i) m.add_continuous(0.0, std::max(0.0, p.upper[i]), {}, -1.0);
    for (int i = 0; i < np; ++i) {
      m.add_constraint({{out.w + i, 1.0}, {out.cost + i, -1.0}, {p.params[i], -p.upper[i]}},
                       Relation::kGreaterEqual, -p.upper[i]);
    }
    for (const auto& x : stored) {
      std::vector<LinearTerm> t{{out.sigma, 1.0}};
      for (int i = 0; i < np; ++i) {
        if (x[p.params[i]] != 0.0) t.push_back({out.cost + i, -x[p.params[i]]});
      }
      m.add_constraint(std::move(t), Relation::kLessEqual,
                       dot(fixed, x) + p.model.objective_offset());
    }
  } else {
    for (int i = 0; i < np; ++i) m.set_objective(p.params[i], -p.lower[i]);
    for (const auto& x : stored) {
      std::vector<LinearTerm> t{{out.sigma, 1.0}};
      double rhs = dot(fixed, x) + p.model.objective_offset();
      for (int i = 0; i < np; ++i) {
        const double xi = x[p.params[i]];
        const double f = (p.upper[i] - p.lower[i]) * xi;
        if (f != 0.0) t.push_back({p.params[i], f});
        rhs += p.upper[i] * xi;
      }
      m.add_constraint(std::move(t), Relation::kLessEqual, rhs);
    }
  }
  return out;
}

NominalResult run_multiparametric_nominal(const ParametricNominal& p,
                                          const NominalOptions& options) {
  check(p);
  if (!(options.epsilon >= 0.0)) throw ModelError("epsilon must be >= 0");
  validate(options.solver);
  const auto fixed = fixed_costs(p);
  const int np = static_cast<int>(p.params.size());

  struct Entry {
    std::vector<double> x;
    std::vector<double> cost;
  };

  MilpModel start = p.model;
  for (int i = 0; i < np; ++i) start.set_objective(p.params[i], p.lower[i]);
  const auto first = submit(start, options.solver);
  if (!first.optimal()) {
    throw std::runtime_error("nominal solve at the lower cost corner ended with status " +
                             std::string(to_string(first.status)));
  }

  auto solve_master = [&](const std::vector<Entry>& history,
                          double seconds_left) -> std::optional<LoopStep<Entry>> {
    std::vector<std::vector<double>> stored;
    for (const auto& e : history) stored.push_back(e.x);
    const auto q = build_nominal_master(p, stored, options.general_master);
    SolverConfig cfg = options.solver;
    cfg.time_limit_seconds = std::min(cfg.time_limit_seconds, seconds_left);
    const auto sol = submit(q.model, cfg);
    if (sol.status == SolveStatus::kUnbounded || sol.status == SolveStatus::kInfeasible) {
      throw std::logic_error("nominal master problem ended with status " +
                             std::string(to_string(sol.status)));
    }
    if (sol.status != SolveStatus::kOptimal) return std::nullopt;
    Entry e;
    e.x.assign(sol.values.begin(), sol.values.begin() + p.model.num_vars());
    e.cost.resize(np);
    for (int i = 0; i < np; ++i) {
      e.cost[i] = options.general_master
                      ? sol.values[q.cost + i]
                      : (e.x[p.params[i]] > 0.5 ? p.lower[i] : p.upper[i]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : history) best = std::min(best, value_at(p, fixed, e.cost, h.x));
    const double v = best - value_at(p, fixed, e.cost, e.x);
    return LoopStep<Entry>{v, std::move(e)};
  };

  Entry init{first.values, p.lower};
  auto outcome = run_parametric_loop(std::move(init), solve_master, options.epsilon,
                                     options.budget, [](double, const Entry&, const auto&) {});
  NominalResult out;
  for (auto& e : outcome.entries) {
    out.solutions.push_back(std::move(e.x));
    out.cost_points.push_back(std::move(e.cost));
  }
  out.q_values = std::move(outcome.q_values);
  out.stop_reason = outcome.stop;
  return out;
}

}  // namespace mprs
