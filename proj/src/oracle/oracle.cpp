#include "mprs/oracle/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "mprs/robust/robust.hpp"
#include "mprs/uncertainty/robustness.hpp"

namespace mprs {
namespace {

void guard(std::size_t count, const EnumerationLimits& limits) {
  if (static_cast<long>(count) > limits.max_solutions) {
    throw ModelError("enumeration exceeds " + std::to_string(limits.max_solutions) + " solutions");
  }
}

std::vector<std::vector<double>> sp_paths(const Instance& inst, const EnumerationLimits& limits) {
  const auto& g = *inst.metadata.graph;
  const int nodes = static_cast<int>(g.nodes.size());
  if (nodes > limits.max_graph_nodes) {
    throw ModelError("path enumeration limited to " + std::to_string(limits.max_graph_nodes) +
                     " nodes");
  }
  std::vector<std::vector<int>> out(nodes);
  for (int e = 0; e < inst.n; ++e) out[g.arcs[e].tail].push_back(e);
  std::vector<std::vector<double>> paths;
  std::vector<double> x(inst.n, 0.0);
  std::vector<char> on_path(nodes, 0);
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == g.sink) {
      paths.push_back(x);
      guard(paths.size(), limits);
      return;
    }
    on_path[v] = 1;
    for (int e : out[v]) {
      const int u = g.arcs[e].head;
      if (on_path[u]) continue;
      x[e] = 1.0;
      self(self, u);
      x[e] = 0.0;
    }
    on_path[v] = 0;
  };
  dfs(dfs, g.source);
  return paths;
}

std::vector<std::vector<double>> plm_solutions(const Instance& inst,
                                               const EnumerationLimits& limits) {
  const auto& data = *inst.metadata.medians;
  const int l = data.locations;
  const int p = data.medians;
  std::vector<std::vector<double>> out;
  std::vector<int> subset(p);
  for (int i = 0; i < p; ++i) subset[i] = i;
  for (;;) {
    // Every assignment of the l clients to the open medians.
    std::vector<int> choice(l, 0);
    for (;;) {
      std::vector<double> x(inst.n, 0.0);
      for (int i : subset) x[l * l + i] = 1.0;
      for (int j = 0; j < l; ++j) x[subset[choice[j]] * l + j] = 1.0;
      out.push_back(std::move(x));
      guard(out.size(), limits);
      int j = 0;
      while (j < l && ++choice[j] == p) choice[j++] = 0;
      if (j == l) break;
    }
    int i = p - 1;
    while (i >= 0 && subset[i] == l - p + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int k = i + 1; k < p; ++k) subset[k] = subset[k - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> enumerate_x(const Instance& inst,
                                             const EnumerationLimits& limits) {
  if (inst.metadata.graph) return sp_paths(inst, limits);
  if (inst.metadata.medians) return plm_solutions(inst, limits);
  if (inst.metadata.kind == InstanceKind::kToy) {
    std::vector<std::vector<double>> out;
    for (int j = 0; j < inst.n; ++j) {
      std::vector<double> x(inst.n, 0.0);
      x[j] = 1.0;
      out.push_back(std::move(x));
    }
    return out;
  }
  if (inst.n > limits.max_binary_n) {
    throw ModelError("binary enumeration limited to n <= " + std::to_string(limits.max_binary_n));
  }
  std::vector<std::vector<double>> out;
  std::vector<double> x(inst.n);
  for (long mask = 0; mask < (1L << inst.n); ++mask) {
    for (int j = 0; j < inst.n; ++j) x[j] = static_cast<double>((mask >> j) & 1);
    if (in_feasible_set(inst, x)) {
      out.push_back(x);
      guard(out.size(), limits);
    }
  }
  return out;
}

BruteRobust brute_robust(const Instance& inst, const std::vector<std::vector<double>>& xs,
                         const GammaVector& gamma, bool variant) {
  if (xs.empty()) throw ModelError("feasible set is empty");
  BruteRobust best{std::numeric_limits<double>::infinity(), {}};
  for (const auto& x : xs) {
    const double w = variant ? robustness_value_variant(inst, x, gamma)
                             : robustness_value(inst, x, gamma);
    if (w < best.value) best = {w, x};
  }
  return best;
}

BruteRobust brute_robust(const Instance& inst, const GammaVector& gamma, bool variant,
                         const EnumerationLimits& limits) {
  return brute_robust(inst, enumerate_x(inst, limits), gamma, variant);
}

std::vector<std::vector<double>> exact_mprs_by_pi_enumeration(const Instance& inst,
                                                              const SolverConfig& config) {
  const int K = inst.num_groups();
  if (K > 16) throw ModelError("pi enumeration limited to K <= 16");
  std::vector<std::vector<double>> out;
  std::vector<double> pi(K);
  for (long mask = 0; mask < (1L << K); ++mask) {
    for (int k = 0; k < K; ++k) pi[k] = static_cast<double>((mask >> k) & 1);
    const auto sol = submit(nominal_model(inst, cost_for_pi(inst, pi)), config);
    if (!sol.optimal()) {
      throw std::runtime_error("nominal solve for a pi pattern ended with status " +
                               std::string(to_string(sol.status)));
    }
    std::vector<double> x(sol.values.begin(), sol.values.begin() + inst.n);
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  return out;
}

double piecewise_f(double gamma, const std::vector<double>& u, const std::vector<double>& v,
                   double pi) {
  double f = gamma * pi;
  for (std::size_t j = 0; j < u.size(); ++j) f += u[j] * std::max(0.0, v[j] - pi);
  return f;
}

std::vector<double> piecewise_breakpoints(const std::vector<double>& v) {
  std::vector<double> b{0.0};
  b.insert(b.end(), v.begin(), v.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double piecewise_argmin(double gamma, const std::vector<double>& u, const std::vector<double>& v) {
  double best_pi = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double b : piecewise_breakpoints(v)) {
    const double f = piecewise_f(gamma, u, v, b);
    if (f < best) {
      best = f;
      best_pi = b;
    }
  }
  return best_pi;
}

ToyCase toy_instance(int n) {
  if (n < 1) throw ModelError("toy instances need n >= 1");
  Instance inst;
  inst.n = n + 1;
  inst.c_lower.assign(n + 1, 10.0);
  inst.c_lower[n] = 11.5;
  inst.deviations.assign(n + 1, 2.0);
  inst.deviations[n] = 0.0;
  std::vector<LinearTerm> one;
  for (int j = 0; j <= n; ++j) {
    one.push_back({j, 1.0});
    inst.partition.push_back({j});
  }
  inst.feasible_set.push_back({std::move(one), Relation::kEqual, 1.0, "one"});
  inst.metadata.kind = InstanceKind::kToy;
  inst.metadata.totally_unimodular = true;
  inst.metadata.toy_n = n;
  return ToyCase{inst,
                 OmegaSpec::interval(std::vector<double>(n + 1, 2.0), std::vector<double>(n + 1, 3.0)),
                 OmegaSpec::interval(std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 1.0))};
}

}  // namespace mprs
