#include "mprs/uncertainty/instance.hpp"

#include <cmath>
#include <string>

namespace mprs {

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kShortestPath: return "SP";
    case InstanceKind::kMedians: return "PLM";
    case InstanceKind::kToy: return "TOY";
    case InstanceKind::kCustom: return "CUSTOM";
  }
  return "CUSTOM";
}

InstanceKind instance_kind_from_string(std::string_view text) {
  if (text == "SP") return InstanceKind::kShortestPath;
  if (text == "PLM") return InstanceKind::kMedians;
  if (text == "TOY") return InstanceKind::kToy;
  if (text == "CUSTOM") return InstanceKind::kCustom;
  throw ModelError("unknown instance kind '" + std::string(text) + "'");
}

std::vector<int> group_of(const Instance& inst) {
  std::vector<int> group(inst.n, -1);
  for (int k = 0; k < inst.num_groups(); ++k) {
    for (int j : inst.partition[k]) group.at(j) = k;
  }
  return group;
}

void validate(const Instance& inst) {
  if (inst.n <= 0) throw ModelError("instance has no variables");
  if (static_cast<int>(inst.c_lower.size()) != inst.n ||
      static_cast<int>(inst.deviations.size()) != inst.n) {
    throw ModelError("c_lower / deviations length differs from n");
  }
  for (int j = 0; j < inst.n; ++j) {
    if (!(inst.c_lower[j] >= 0.0) || !(inst.deviations[j] >= 0.0)) {
      throw ModelError("c_lower and deviations must be nonnegative");
    }
  }
  if (inst.partition.empty()) throw ModelError("partition has no groups");
  std::vector<int> seen(inst.n, 0);
  for (const auto& group : inst.partition) {
    if (group.empty()) throw ModelError("partition contains an empty group");
    for (int j : group) {
      if (j < 0 || j >= inst.n) throw ModelError("partition index out of range");
      if (seen[j]++) throw ModelError("partition groups overlap at index " + std::to_string(j));
    }
  }
  for (int j = 0; j < inst.n; ++j) {
    if (!seen[j] && inst.deviations[j] != 0.0) {
      throw ModelError("index " + std::to_string(j) + " has a deviation but no group");
    }
  }
  for (const auto& row : inst.feasible_set) {
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= inst.n) throw ModelError("feasible-set row index out of range");
    }
  }
}

void add_feasible_set(MilpModel& model, const Instance& inst, int x_offset) {
  for (const auto& row : inst.feasible_set) {
    std::vector<LinearTerm> terms;
    terms.reserve(row.terms.size());
    for (const auto& t : row.terms) terms.push_back({x_offset + t.var, t.coeff});
    model.add_constraint(std::move(terms), row.relation, row.rhs, row.name);
  }
}

MilpModel nominal_model(const Instance& inst, std::span<const double> cost) {
  if (static_cast<int>(cost.size()) != inst.n) throw ModelError("cost length differs from n");
  MilpModel model;
  for (int j = 0; j < inst.n; ++j) model.add_binary("x" + std::to_string(j), cost[j]);
  add_feasible_set(model, inst, 0);
  return model;
}

void require_nonempty(const Instance& inst, const SolverConfig& config) {
  std::vector<double> zero(inst.n, 0.0);
  const auto sol = solve_milp(nominal_model(inst, zero), config);
  if (sol.status == SolveStatus::kInfeasible) throw ModelError("feasible set X is empty");
}

bool in_feasible_set(const Instance& inst, std::span<const double> x, double tol) {
  if (static_cast<int>(x.size()) != inst.n) return false;
  for (double v : x) {
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  }
  for (const auto& row : inst.feasible_set) {
    double act = 0.0;
    for (const auto& t : row.terms) act += t.coeff * x[t.var];
    switch (row.relation) {
      case Relation::kLessEqual: if (act > row.rhs + tol) return false; break;
      case Relation::kGreaterEqual: if (act < row.rhs - tol) return false; break;
      case Relation::kEqual: if (std::abs(act - row.rhs) > tol) return false; break;
    }
  }
  return true;
}

}  // namespace mprs
