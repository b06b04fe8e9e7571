#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mprs/core/milp_model.hpp"

namespace mprs {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  // Node or time limit hit; values hold the incumbent (if any) and
  // best_bound the best proven bound.
  kIncumbentOnly,
};

std::string_view to_string(SolveStatus status);

struct SolverConfig {
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  double pivot_tol = 1e-9;
  long node_limit = 2'000'000;
  double time_limit_seconds = kInfinity;
  std::string backend = "bundled";
};

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  double best_bound = 0.0;
  bool has_incumbent = false;
  long nodes = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

// Pivot breakdown or iteration blow-up inside the LP engine. Distinct from
// infeasibility or unboundedness, which are reported through SolveStatus.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void validate(const SolverConfig& config);

// LP relaxation: binary variables are treated as continuous within their
// current bounds.
MilpSolution solve_lp(const MilpModel& model, const SolverConfig& config = {});

// Best-first branch-and-bound over the binaries of `model`.
MilpSolution solve_milp(const MilpModel& model, const SolverConfig& config = {});

// Pluggable backend contract. Backends must report binaries within
// config.integrality_tol of {0,1}; the bundled one rounds them exactly.
class MilpSolver {
 public:
  virtual ~MilpSolver() = default;
  virtual std::string_view id() const = 0;
  virtual MilpSolution submit(const MilpModel& model, const SolverConfig& config) const = 0;
};

class BundledSolver final : public MilpSolver {
 public:
  std::string_view id() const override { return "bundled"; }
  MilpSolution submit(const MilpModel& model, const SolverConfig& config) const override {
    return solve_milp(model, config);
  }
};

// Backend id taken from MPRS_SOLVER_BACKEND, falling back to "bundled".
std::string default_backend_id();

// Throws ModelError for unknown ids.
std::unique_ptr<MilpSolver> make_solver(std::string_view id);

// Submits through the backend named in config.backend.
MilpSolution submit(const MilpModel& model, const SolverConfig& config);

}  // namespace mprs
