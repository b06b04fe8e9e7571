#pragma once

#include <vector>

#include "mprs/core/solver.hpp"
#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

struct EnumerationLimits {
  int max_graph_nodes = 12;
  int max_binary_n = 24;
  long max_solutions = 2'000'000;
};

// Every point of X, without duplicates. Shortest path: simple source-sink
// paths; medians: every p-subset with every assignment to open medians;
// toy: unit vectors; otherwise all of {0,1}^n filtered by X's rows.
// Throws ModelError when a size guard trips.
std::vector<std::vector<double>> enumerate_x(const Instance& inst,
                                             const EnumerationLimits& limits = {});

struct BruteRobust {
  double value = 0.0;
  std::vector<double> x;
};

// min over X of the closed-form W(x, Gamma); first minimiser in
// enumeration order.
BruteRobust brute_robust(const Instance& inst, const GammaVector& gamma, bool variant,
                         const EnumerationLimits& limits = {});

// Same, over a precomputed X.
BruteRobust brute_robust(const Instance& inst, const std::vector<std::vector<double>>& xs,
                         const GammaVector& gamma, bool variant);

// {optimal x of P(c(pi)) : pi in {0,1}^K}, distinct, for K <= 16.
std::vector<std::vector<double>> exact_mprs_by_pi_enumeration(const Instance& inst,
                                                              const SolverConfig& config = {});

// f(pi) = gamma pi + sum_j u_j max(0, v_j - pi).
double piecewise_f(double gamma, const std::vector<double>& u, const std::vector<double>& v,
                   double pi);

// {0} union {v_j}, ascending, without duplicates.
std::vector<double> piecewise_breakpoints(const std::vector<double>& v);

// Smallest breakpoint minimising f.
double piecewise_argmin(double gamma, const std::vector<double>& u, const std::vector<double>& v);

struct ToyCase {
  Instance instance;
  OmegaSpec omega1;  // [2,3]^(n+1)
  OmegaSpec omega2;  // [0,1]^(n+1)
};

// n + 1 one-hot variables, c_lower = (10,...,10,11.5), d = (2,...,2,0),
// one group per variable.
ToyCase toy_instance(int n);

}  // namespace mprs
