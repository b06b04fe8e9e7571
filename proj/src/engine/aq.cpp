#include "mprs/engine/aq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mprs/uncertainty/robustness.hpp"

namespace mprs {

std::string_view to_string(StopReason reason) {
  return reason == StopReason::kEpsilonMet ? "epsilon_met" : "budget_exceeded";
}

StopReason stop_reason_from_string(std::string_view text) {
  if (text == "epsilon_met") return StopReason::kEpsilonMet;
  if (text == "budget_exceeded") return StopReason::kBudgetExceeded;
  throw ModelError("unknown stop reason '" + std::string(text) + "'");
}

int MprsResult::distinct_solutions() const {
  return distinct_medians.empty() ? static_cast<int>(distinct_x.size())
                                  : static_cast<int>(distinct_medians.size());
}

void summarize_distinct(const Instance& inst, MprsResult& result) {
  result.distinct_x.clear();
  result.distinct_medians.clear();
  for (const auto& e : result.history) {
    if (std::find(result.distinct_x.begin(), result.distinct_x.end(), e.x) ==
        result.distinct_x.end()) {
      result.distinct_x.push_back(e.x);
    }
    if (inst.metadata.medians) {
      const int l = inst.metadata.medians->locations;
      std::vector<int> open;
      for (int i = 0; i < l; ++i) {
        if (e.x[l * l + i] > 0.5) open.push_back(i);
      }
      if (std::find(result.distinct_medians.begin(), result.distinct_medians.end(), open) ==
          result.distinct_medians.end()) {
        result.distinct_medians.push_back(open);
      }
    }
  }
}

MprsResult run_aq(const Instance& inst, const OmegaSpec& omega, const AqOptions& options) {
  validate(inst);
  if (omega.dim() != inst.num_groups()) throw ModelError("omega dimension differs from K");
  if (!(options.epsilon >= 0.0)) throw ModelError("epsilon must be >= 0");
  if (options.budget.max_iterations < 1) throw ModelError("iteration budget must be >= 1");
  validate(options.solver);
  const bool relaxed = options.mode == RobustMode::kTuRelaxed;
  if (relaxed && !inst.metadata.totally_unimodular) {
    throw ModelError("tu_relaxed mode needs an instance declared totally unimodular");
  }

  const GammaVector start = omega.initial_gamma();
  const auto first = solve_robust(inst, start, options.mode, options.solver);

  MprsResult result;
  result.mode = options.mode;
  result.initial_value = first.value;
  result.epsilon_used =
      options.relative_epsilon ? options.epsilon / 100.0 * first.value : options.epsilon;

  auto solve_master = [&](const std::vector<HistoryEntry>& history,
                          double seconds_left) -> std::optional<LoopStep<HistoryEntry>> {
    const QModel q = build_q(inst, omega, history, relaxed, options.general_master);
    SolverConfig cfg = options.solver;
    cfg.time_limit_seconds = std::min(cfg.time_limit_seconds, seconds_left);
    const auto sol = submit(q.model, cfg);
    if (sol.status == SolveStatus::kUnbounded) {
      throw std::logic_error("master problem is unbounded");
    }
    if (sol.status == SolveStatus::kInfeasible) {
      throw std::logic_error("master problem is infeasible");
    }
    if (sol.status != SolveStatus::kOptimal) return std::nullopt;
    auto opt = extract_q_optimum(inst, omega, q, history, sol, relaxed);
    return LoopStep<HistoryEntry>{opt.value, std::move(opt.entry)};
  };

  MprsResult partial;
  auto on_iteration = [&](double q_value, const HistoryEntry& entry,
                          const LoopOutcome<HistoryEntry>& so_far) {
    if (!options.trace) return;
    partial.history = so_far.entries;
    summarize_distinct(inst, partial);
    TraceRecord rec;
    rec.iteration = static_cast<int>(so_far.q_values.size());
    rec.q_value = q_value;
    rec.gamma = entry.gamma;
    rec.distinct_solutions = partial.distinct_solutions();
    rec.elapsed_seconds = so_far.elapsed_seconds;
    options.trace(rec);
  };

  auto outcome = run_parametric_loop(entry_from_robust(first, start), solve_master,
                                     result.epsilon_used, options.budget, on_iteration);
  result.history = std::move(outcome.entries);
  result.q_values = std::move(outcome.q_values);
  result.stop_reason = outcome.stop;
  result.elapsed_seconds = outcome.elapsed_seconds;
  for (double q : result.q_values) {
    result.relative_error_bounds.push_back(result.initial_value == 0.0
                                               ? std::numeric_limits<double>::infinity()
                                               : q / result.initial_value);
  }
  summarize_distinct(inst, result);
  return result;
}

Pick pick_best(const Instance& inst, const MprsResult& result, const Scenario& scenario) {
  if (result.history.empty()) throw ModelError("empty solution set");
  Pick best{-1, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < result.iterations(); ++i) {
    const auto& x = result.history[i].x;
    double v = 0.0;
    if (const auto* g = std::get_if<GammaVector>(&scenario)) {
      v = result.mode == RobustMode::kVariant ? robustness_value_variant(inst, x, *g)
                                              : robustness_value(inst, x, *g);
    } else {
      const auto& c = std::get<CostScenario>(scenario).c;
      if (static_cast<int>(c.size()) != inst.n) throw ModelError("cost dimension differs from n");
      for (int j = 0; j < inst.n; ++j) v += c[j] * x[j];
    }
    if (best.index < 0 || v < best.value) best = {i, v};
  }
  return best;
}

}  // namespace mprs
