#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/solver.hpp"
#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

enum class RobustMode { kStandard, kTuRelaxed, kVariant };

std::string_view to_string(RobustMode mode);
RobustMode robust_mode_from_string(std::string_view text);

// Where each block of variables lives inside a robust model. Blocks that a
// formulation does not use are -1.
struct RobustLayout {
  int groups = 0;
  int n = 0;
  int pi = -1;     // standard: pi_k binary
  int rho = -1;    // standard: binary; variant: continuous in [0, d_j]
  int x = -1;
  int w = -1;      // variant: w_j = alpha_j x_j
  int alpha = -1;  // variant: breakpoint selector
};

struct RobustModel {
  MilpModel model;
  RobustLayout layout;
};

struct RobustSolution {
  std::vector<double> x;
  // Standard: 0-1 pi. Variant: pi_k = sum_{s in P_k} d_s w_s.
  std::vector<double> pi;
  std::vector<double> rho;
  // Variant only.
  std::vector<double> w;
  std::vector<double> alpha;
  double value = 0.0;
  RobustMode formulation = RobustMode::kStandard;
};

// min Gamma.pi + d.rho + c_lower.x  s.t. pi_k + rho_j - x_j >= 0 (j in P_k),
// all binary, x in X. Certain indices get rho fixed at 0.
RobustModel build_robust_milp(const Instance& inst, const GammaVector& gamma);

// Breakpoint MILP of the fractional variant.
RobustModel build_robust_variant_milp(const Instance& inst, const GammaVector& gamma);

// c(pi)_j = c_lower_j if pi_k = 1, c_lower_j + d_j otherwise.
std::vector<double> cost_for_pi(const Instance& inst, std::span<const double> pi);

// Group budget pi_k of a variant certificate.
std::vector<double> variant_breakpoints(const Instance& inst, std::span<const double> w);

// Solves R(Gamma). tu_relaxed needs an instance declared totally unimodular
// and throws std::logic_error when the relaxation returns a fractional x.
RobustSolution solve_robust(const Instance& inst, const GammaVector& gamma, RobustMode mode,
                            const SolverConfig& config = {});

}  // namespace mprs
