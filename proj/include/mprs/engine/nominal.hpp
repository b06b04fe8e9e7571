#pragma once

#include <vector>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/solver.hpp"
#include "mprs/engine/loop.hpp"

namespace mprs {

// min c.x over a mixed 0-1 model where the cost of each variable in
// `params` is unknown within [lower, upper]. The model's own objective
// coefficients on those variables are ignored.
struct ParametricNominal {
  MilpModel model;
  std::vector<int> params;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NominalOptions {
  double epsilon = 0.0;
  // Continuous cost variables and w_j = c_j x_j instead of the 0-1 model
  // with c+(x)_j = L_j x_j + U_j (1 - x_j).
  bool general_master = false;
  LoopBudget budget;
  SolverConfig solver;
};

struct NominalResult {
  // Full variable vectors, in discovery order.
  std::vector<std::vector<double>> solutions;
  std::vector<std::vector<double>> cost_points;
  std::vector<double> q_values;
  StopReason stop_reason = StopReason::kEpsilonMet;

  int distinct_solutions() const;
};

// Throws ModelError when a parameter sits on a non-binary variable.
NominalResult run_multiparametric_nominal(const ParametricNominal& problem,
                                          const NominalOptions& options = {});

// The master problem over the stored solutions, exposed for checks.
struct NominalMaster {
  MilpModel model;
  int sigma = -1;
  int cost = -1;  // general form only
  int w = -1;     // general form only
};
NominalMaster build_nominal_master(const ParametricNominal& problem,
                                   const std::vector<std::vector<double>>& stored, bool general);

}  // namespace mprs
