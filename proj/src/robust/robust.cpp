#include "mprs/robust/robust.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mprs {

std::string_view to_string(RobustMode mode) {
  switch (mode) {
    case RobustMode::kStandard: return "standard";
    case RobustMode::kTuRelaxed: return "tu_relaxed";
    case RobustMode::kVariant: return "variant";
  }
  return "standard";
}

RobustMode robust_mode_from_string(std::string_view text) {
  if (text == "standard") return RobustMode::kStandard;
  if (text == "tu_relaxed") return RobustMode::kTuRelaxed;
  if (text == "variant") return RobustMode::kVariant;
  throw ModelError("unknown solve mode '" + std::string(text) + "'");
}

namespace {

void check_gamma(const Instance& inst, const GammaVector& gamma) {
  if (gamma.size() != inst.num_groups()) throw ModelError("gamma dimension differs from K");
}

RobustModel build_standard(const Instance& inst, const GammaVector& gamma, bool relaxed) {
  check_gamma(inst, gamma);
  const int K = inst.num_groups();
  const auto group = group_of(inst);
  RobustModel rm;
  auto& m = rm.model;
  auto& lay = rm.layout;
  lay.groups = K;
  lay.n = inst.n;
  lay.pi = 0;
  for (int k = 0; k < K; ++k) m.add_binary("pi" + std::to_string(k), gamma[k]);
  lay.rho = m.num_vars();
  for (int j = 0; j < inst.n; ++j) {
    const auto name = "rho" + std::to_string(j);
    int v = relaxed ? m.add_continuous(0.0, 1.0, name, inst.deviations[j])
                    : m.add_binary(name, inst.deviations[j]);
    if (group[j] < 0) m.set_bounds(v, 0.0, 0.0);
  }
  lay.x = m.num_vars();
  for (int j = 0; j < inst.n; ++j) {
    const auto name = "x" + std::to_string(j);
    if (relaxed) {
      m.add_continuous(0.0, 1.0, name, inst.c_lower[j]);
    } else {
      m.add_binary(name, inst.c_lower[j]);
    }
  }
  add_feasible_set(m, inst, lay.x);
  for (int k = 0; k < K; ++k) {
    for (int j : inst.partition[k]) {
      m.add_constraint({{lay.pi + k, 1.0}, {lay.rho + j, 1.0}, {lay.x + j, -1.0}},
                       Relation::kGreaterEqual, 0.0);
    }
  }
  return rm;
}

}  // namespace

RobustModel build_robust_milp(const Instance& inst, const GammaVector& gamma) {
  return build_standard(inst, gamma, /*relaxed=*/false);
}

RobustModel build_robust_variant_milp(const Instance& inst, const GammaVector& gamma) {
  check_gamma(inst, gamma);
  const int K = inst.num_groups();
  const auto group = group_of(inst);
  RobustModel rm;
  auto& m = rm.model;
  auto& lay = rm.layout;
  lay.groups = K;
  lay.n = inst.n;
  lay.w = 0;
  for (int j = 0; j < inst.n; ++j) {
    const double coeff = group[j] >= 0 ? gamma[group[j]] * inst.deviations[j] : 0.0;
    int v = m.add_binary("w" + std::to_string(j), coeff);
    if (group[j] < 0) m.set_bounds(v, 0.0, 0.0);
  }
  lay.alpha = m.num_vars();
  for (int j = 0; j < inst.n; ++j) {
    int v = m.add_binary("alpha" + std::to_string(j));
    if (group[j] < 0) m.set_bounds(v, 0.0, 0.0);
  }
  lay.rho = m.num_vars();
  for (int j = 0; j < inst.n; ++j) {
    m.add_continuous(0.0, group[j] >= 0 ? inst.deviations[j] : 0.0, "rho" + std::to_string(j),
                     1.0);
  }
  lay.x = m.num_vars();
  for (int j = 0; j < inst.n; ++j) m.add_binary("x" + std::to_string(j), inst.c_lower[j]);
  add_feasible_set(m, inst, lay.x);
  for (int k = 0; k < K; ++k) {
    for (int j : inst.partition[k]) {
      std::vector<LinearTerm> terms;
      for (int s : inst.partition[k]) {
        if (inst.deviations[s] != 0.0) terms.push_back({lay.w + s, inst.deviations[s]});
      }
      terms.push_back({lay.rho + j, 1.0});
      terms.push_back({lay.x + j, -inst.deviations[j]});
      m.add_constraint(std::move(terms), Relation::kGreaterEqual, 0.0);
    }
    std::vector<LinearTerm> pick;
    for (int s : inst.partition[k]) pick.push_back({lay.alpha + s, 1.0});
    m.add_constraint(std::move(pick), Relation::kLessEqual, 1.0);
  }
  for (int j = 0; j < inst.n; ++j) {
    if (group[j] < 0) continue;
    m.add_constraint({{lay.w + j, 1.0}, {lay.alpha + j, -1.0}, {lay.x + j, -1.0}},
                     Relation::kGreaterEqual, -1.0);
  }
  return rm;
}

std::vector<double> cost_for_pi(const Instance& inst, std::span<const double> pi) {
  if (static_cast<int>(pi.size()) != inst.num_groups()) throw ModelError("pi dimension differs from K");
  std::vector<double> c = inst.c_lower;
  for (int k = 0; k < inst.num_groups(); ++k) {
    if (pi[k] > 0.5) continue;
    for (int j : inst.partition[k]) c[j] += inst.deviations[j];
  }
  return c;
}

std::vector<double> variant_breakpoints(const Instance& inst, std::span<const double> w) {
  std::vector<double> pi(inst.num_groups(), 0.0);
  for (int k = 0; k < inst.num_groups(); ++k) {
    for (int s : inst.partition[k]) pi[k] += inst.deviations[s] * w[s];
  }
  return pi;
}

RobustSolution solve_robust(const Instance& inst, const GammaVector& gamma, RobustMode mode,
                            const SolverConfig& config) {
  if (mode == RobustMode::kTuRelaxed && !inst.metadata.totally_unimodular) {
    throw ModelError("tu_relaxed mode needs an instance declared totally unimodular");
  }
  RobustSolution out;
  out.formulation = mode;
  if (mode == RobustMode::kVariant) {
    auto rm = build_robust_variant_milp(inst, gamma);
    const auto sol = submit(rm.model, config);
    if (!sol.optimal()) {
      throw std::runtime_error("variant robust solve ended with status " +
                               std::string(to_string(sol.status)));
    }
    const auto& lay = rm.layout;
    out.w.assign(sol.values.begin() + lay.w, sol.values.begin() + lay.w + inst.n);
    out.alpha.assign(sol.values.begin() + lay.alpha, sol.values.begin() + lay.alpha + inst.n);
    out.rho.assign(sol.values.begin() + lay.rho, sol.values.begin() + lay.rho + inst.n);
    out.x.assign(sol.values.begin() + lay.x, sol.values.begin() + lay.x + inst.n);
    out.pi = variant_breakpoints(inst, out.w);
    out.value = sol.objective;
    return out;
  }

  const bool relaxed = mode == RobustMode::kTuRelaxed;
  auto rm = build_standard(inst, gamma, relaxed);
  const auto sol = submit(rm.model, config);
  if (!sol.optimal()) {
    throw std::runtime_error("robust solve ended with status " + std::string(to_string(sol.status)));
  }
  const auto& lay = rm.layout;
  out.pi.assign(sol.values.begin() + lay.pi, sol.values.begin() + lay.pi + lay.groups);
  out.x.assign(sol.values.begin() + lay.x, sol.values.begin() + lay.x + inst.n);
  out.rho.assign(sol.values.begin() + lay.rho, sol.values.begin() + lay.rho + inst.n);
  if (relaxed) {
    for (int j = 0; j < inst.n; ++j) {
      const double r = std::round(out.x[j]);
      if (std::abs(out.x[j] - r) > 1e-6) {
        throw std::logic_error("tu_relaxed solve returned fractional x on a TU instance");
      }
      out.x[j] = r;
    }
    const auto group = group_of(inst);
    for (int j = 0; j < inst.n; ++j) {
      out.rho[j] = group[j] < 0 ? 0.0 : (1.0 - out.pi[group[j]]) * out.x[j];
    }
  }
  double value = 0.0;
  for (int k = 0; k < lay.groups; ++k) value += gamma[k] * out.pi[k];
  for (int j = 0; j < inst.n; ++j) {
    value += inst.deviations[j] * out.rho[j] + inst.c_lower[j] * out.x[j];
  }
  out.value = value;
  return out;
}

}  // namespace mprs
