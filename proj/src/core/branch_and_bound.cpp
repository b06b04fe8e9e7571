#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "mprs/core/solver.hpp"
#include "simplex.hpp"

namespace mprs {
namespace {

struct Node {
  double bound;
  long id;
  // -1 free, 0/1 fixed; indexed by position in the binary list.
  std::vector<std::int8_t> fixing;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool lexicographically_smaller(const std::vector<double>& a, const std::vector<double>& b,
                               const std::vector<int>& binaries) {
  for (int j : binaries) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return false;
}

}  // namespace

MilpSolution solve_lp(const MilpModel& model, const SolverConfig& config) {
  validate(config);
  model.validate();
  std::vector<double> lo, up;
  for (const auto& v : model.vars()) {
    lo.push_back(v.lower);
    up.push_back(v.upper);
  }
  auto lp = detail::solve_lp_with_bounds(model, lo, up, config);
  MilpSolution out;
  out.status = lp.status;
  out.values = std::move(lp.values);
  out.objective = lp.objective;
  out.best_bound = lp.objective;
  out.has_incumbent = lp.status == SolveStatus::kOptimal;
  return out;
}

MilpSolution solve_milp(const MilpModel& model, const SolverConfig& config) {
  validate(config);
  model.validate();
  const auto start = std::chrono::steady_clock::now();
  // Internally everything is a minimisation of `sign * objective`.
  const double sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;

  std::vector<int> binaries;
  std::vector<double> base_lo, base_up;
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.var(j);
    base_lo.push_back(v.lower);
    base_up.push_back(v.upper);
    if (v.kind == VarKind::kBinary) binaries.push_back(j);
  }
  const int nb = static_cast<int>(binaries.size());

  MilpSolution out;
  std::vector<double> incumbent;
  double incumbent_value = kInfinity;  // internal (minimisation) units
  bool have_incumbent = false;
  bool unbounded = false;

  auto tolerance = [&](double ref) { return 1e-9 * std::max(1.0, std::abs(ref)); };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInfinity, next_id++, std::vector<std::int8_t>(nb, -1)});
  long nodes = 0;
  bool limit_hit = false;
  double best_open_bound = -kInfinity;

  std::vector<double> lo(base_lo.size()), up(base_up.size());
  while (!open.empty()) {
    if (nodes >= config.node_limit) {
      limit_hit = true;
      break;
    }
    if (std::isfinite(config.time_limit_seconds)) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > config.time_limit_seconds) {
        limit_hit = true;
        break;
      }
    }
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound >= incumbent_value - tolerance(incumbent_value)) continue;
    ++nodes;

    lo = base_lo;
    up = base_up;
    for (int b = 0; b < nb; ++b) {
      if (node.fixing[b] >= 0) lo[binaries[b]] = up[binaries[b]] = node.fixing[b];
    }
    auto lp = detail::solve_lp_with_bounds(model, lo, up, config);
    if (lp.status == SolveStatus::kInfeasible) continue;
    if (lp.status == SolveStatus::kUnbounded) {
      unbounded = true;
      break;
    }
    const double value = sign * lp.objective;
    if (have_incumbent && value >= incumbent_value - tolerance(incumbent_value)) {
      // Only an exact tie can still win, through the lexicographic rule; that
      // needs an integral LP point, so check below without branching.
      if (value > incumbent_value + tolerance(incumbent_value)) continue;
    }

    int branch = -1;
    double most = -1.0;
    for (int b = 0; b < nb; ++b) {
      const double v = lp.values[binaries[b]];
      const double frac = std::abs(v - std::round(v));
      if (frac > config.integrality_tol) {
        const double score = 0.5 - std::abs(v - std::floor(v) - 0.5);
        if (score > most + 1e-12) {
          most = score;
          branch = b;
        }
      }
    }

    if (branch < 0) {
      // Integral: round binaries and re-solve the continuous part exactly.
      std::vector<double> candidate = lp.values;
      double candidate_value = value;
      for (int j : binaries) candidate[j] = std::round(candidate[j]);
      if (nb > 0) {
        auto flo = lo;
        auto fup = up;
        for (int j : binaries) flo[j] = fup[j] = candidate[j];
        auto fixed = detail::solve_lp_with_bounds(model, flo, fup, config);
        if (fixed.status == SolveStatus::kOptimal) {
          candidate = std::move(fixed.values);
          for (int j : binaries) candidate[j] = std::round(candidate[j]);
          candidate_value = sign * fixed.objective;
        }
      }
      const bool better = !have_incumbent ||
                          candidate_value < incumbent_value - tolerance(incumbent_value);
      const bool tie = have_incumbent &&
                       std::abs(candidate_value - incumbent_value) <=
                           tolerance(incumbent_value) &&
                       lexicographically_smaller(candidate, incumbent, binaries);
      if (better || tie) {
        incumbent = std::move(candidate);
        incumbent_value = candidate_value;
        have_incumbent = true;
      }
      continue;
    }
    if (have_incumbent && value >= incumbent_value - tolerance(incumbent_value)) continue;

    for (std::int8_t side : {std::int8_t{0}, std::int8_t{1}}) {
      Node child{value, next_id++, node.fixing};
      child.fixing[branch] = side;
      open.push(std::move(child));
    }
  }

  out.nodes = nodes;
  if (unbounded) {
    out.status = SolveStatus::kUnbounded;
    return out;
  }
  if (limit_hit) {
    best_open_bound = open.empty() ? incumbent_value : open.top().bound;
    out.status = SolveStatus::kIncumbentOnly;
    out.has_incumbent = have_incumbent;
    if (have_incumbent) {
      out.values = incumbent;
      out.objective = model.evaluate_objective(incumbent);
    }
    out.best_bound = sign * std::min(best_open_bound, incumbent_value);
    return out;
  }
  if (!have_incumbent) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  out.status = SolveStatus::kOptimal;
  out.has_incumbent = true;
  out.values = std::move(incumbent);
  out.objective = model.evaluate_objective(out.values);
  out.best_bound = out.objective;
  return out;
}

}  // namespace mprs
