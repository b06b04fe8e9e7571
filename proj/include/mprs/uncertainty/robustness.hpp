#pragma once

#include <span>
#include <vector>

#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

// W(x, Gamma) for the locally budgeted set: each group adds the smaller of
// its budget and its total active deviation.
//   c_lower.x + sum_k min(Gamma_k, sum_{j in P_k} d_j x_j)
double robustness_value(const Instance& inst, std::span<const double> x,
                        const GammaVector& gamma);

// W(x, Gamma) for the fractional variant (lambda_j in [0,1] scales d_j):
// per group, a fractional knapsack over the active deviations.
double robustness_value_variant(const Instance& inst, std::span<const double> x,
                                const GammaVector& gamma);

// A maximiser c of c.x over the (variant) uncertainty set.
std::vector<double> worst_case_cost_vector(const Instance& inst, std::span<const double> x,
                                           const GammaVector& gamma, bool variant);

}  // namespace mprs
