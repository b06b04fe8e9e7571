#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "mprs/core/solver.hpp"
#include "mprs/engine/loop.hpp"
#include "mprs/engine/master_problems.hpp"
#include "mprs/robust/robust.hpp"
#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

struct TraceRecord {
  int iteration = 0;
  double q_value = 0.0;
  GammaVector gamma;
  int distinct_solutions = 0;
  double elapsed_seconds = 0.0;
};

struct AqOptions {
  double epsilon = 0.0;
  // epsilon is read as a percentage of v(R(Gamma_init)).
  bool relative_epsilon = false;
  RobustMode mode = RobustMode::kStandard;
  // Embed omega through Gamma variables instead of the specialised model.
  bool general_master = false;
  LoopBudget budget;
  SolverConfig solver;
  std::function<void(const TraceRecord&)> trace;
};

struct MprsResult {
  std::vector<HistoryEntry> history;
  // Unique x vectors in discovery order.
  std::vector<std::vector<double>> distinct_x;
  // Unique open-median index sets (medians instances only).
  std::vector<std::vector<int>> distinct_medians;
  std::vector<double> q_values;
  double epsilon_used = 0.0;
  double initial_value = 0.0;
  // q_values / v(R(Gamma_init)); +inf when that value is 0.
  std::vector<double> relative_error_bounds;
  StopReason stop_reason = StopReason::kEpsilonMet;
  RobustMode mode = RobustMode::kStandard;
  double elapsed_seconds = 0.0;

  int iterations() const { return static_cast<int>(history.size()); }
  // Paths for shortest-path instances, median sets for medians instances,
  // distinct x otherwise.
  int distinct_solutions() const;
};

// The A-Q algorithm: start from R(Gamma_init), then alternate master
// problem and append until v(Q) <= epsilon.
MprsResult run_aq(const Instance& inst, const OmegaSpec& omega, const AqOptions& options = {});

// Fills distinct_x / distinct_medians from the history.
void summarize_distinct(const Instance& inst, MprsResult& result);

struct CostScenario {
  std::vector<double> c;
};
using Scenario = std::variant<GammaVector, CostScenario>;

struct Pick {
  int index = 0;
  double value = 0.0;
};

// argmin over the history of W(x^i, Gamma) or c.x^i; ties go to the
// smallest index.
Pick pick_best(const Instance& inst, const MprsResult& result, const Scenario& scenario);

}  // namespace mprs
