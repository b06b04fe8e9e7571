#pragma once

#include <span>
#include <vector>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/solver.hpp"

namespace mprs::detail {

struct LpOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  // In the model's own sense, offset included.
  double objective = 0.0;
  long iterations = 0;
};

// Bounded-variable primal simplex on a dense tableau. `lower`/`upper`
// override the model bounds (branch-and-bound passes tightened copies).
LpOutcome solve_lp_with_bounds(const MilpModel& model, std::span<const double> lower,
                               std::span<const double> upper, const SolverConfig& config);

}  // namespace mprs::detail
