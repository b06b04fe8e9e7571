#include "mprs/core/solver.hpp"

#include <cstdlib>
#include <string>

namespace mprs {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIncumbentOnly: return "incumbent-only";
  }
  return "unknown";
}

void validate(const SolverConfig& config) {
  if (!(config.feasibility_tol > 0.0) || !(config.integrality_tol > 0.0) ||
      !(config.pivot_tol > 0.0)) {
    throw ModelError("solver tolerances must be positive");
  }
  if (config.node_limit <= 0) throw ModelError("node limit must be positive");
}

std::string default_backend_id() {
  if (const char* env = std::getenv("MPRS_SOLVER_BACKEND"); env != nullptr && *env != '\0') {
    return env;
  }
  return "bundled";
}

std::unique_ptr<MilpSolver> make_solver(std::string_view id) {
  if (id == "bundled") return std::make_unique<BundledSolver>();
  throw ModelError("unknown solver backend '" + std::string(id) + "'");
}

MilpSolution submit(const MilpModel& model, const SolverConfig& config) {
  if (config.backend == "bundled") return solve_milp(model, config);
  return make_solver(config.backend)->submit(model, config);
}

}  // namespace mprs
