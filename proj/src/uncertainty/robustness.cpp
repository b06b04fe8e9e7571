#include "mprs/uncertainty/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mprs {
namespace {

void check_dims(const Instance& inst, std::span<const double> x, const GammaVector& gamma) {
  if (static_cast<int>(x.size()) != inst.n) throw ModelError("x dimension differs from n");
  if (gamma.size() != inst.num_groups()) throw ModelError("gamma dimension differs from K");
}

// lambda (in units of d_j for the variant, absolute otherwise) per index.
std::vector<double> worst_case_lambda(const Instance& inst, std::span<const double> x,
                                      const GammaVector& gamma, bool variant) {
  check_dims(inst, x, gamma);
  std::vector<double> lambda(inst.n, 0.0);
  for (int k = 0; k < inst.num_groups(); ++k) {
    std::vector<int> active;
    for (int j : inst.partition[k]) {
      if (x[j] > 0.5) active.push_back(j);
    }
    double budget = std::max(0.0, gamma[k]);
    if (variant) {
      std::stable_sort(active.begin(), active.end(), [&](int a, int b) {
        return inst.deviations[a] > inst.deviations[b];
      });
      for (int j : active) {
        if (budget <= 0.0) break;
        lambda[j] = std::min(1.0, budget);
        budget -= lambda[j];
      }
    } else {
      for (int j : active) {
        if (budget <= 0.0) break;
        lambda[j] = std::min(inst.deviations[j], budget);
        budget -= lambda[j];
      }
    }
  }
  return lambda;
}

double nominal_part(const Instance& inst, std::span<const double> x) {
  double v = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    if (x[j] > 0.5) v += inst.c_lower[j];
  }
  return v;
}

}  // namespace

double robustness_value(const Instance& inst, std::span<const double> x,
                        const GammaVector& gamma) {
  check_dims(inst, x, gamma);
  double value = nominal_part(inst, x);
  for (int k = 0; k < inst.num_groups(); ++k) {
    double room = 0.0;
    for (int j : inst.partition[k]) {
      if (x[j] > 0.5) room += inst.deviations[j];
    }
    value += std::min(std::max(0.0, gamma[k]), room);
  }
  return value;
}

double robustness_value_variant(const Instance& inst, std::span<const double> x,
                                const GammaVector& gamma) {
  const auto lambda = worst_case_lambda(inst, x, gamma, /*variant=*/true);
  double value = nominal_part(inst, x);
  for (int j = 0; j < inst.n; ++j) value += lambda[j] * inst.deviations[j];
  return value;
}

std::vector<double> worst_case_cost_vector(const Instance& inst, std::span<const double> x,
                                           const GammaVector& gamma, bool variant) {
  const auto lambda = worst_case_lambda(inst, x, gamma, variant);
  std::vector<double> c(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    c[j] = inst.c_lower[j] + (variant ? lambda[j] * inst.deviations[j] : lambda[j]);
  }
  return c;
}

}  // namespace mprs
