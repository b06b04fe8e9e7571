#include "mprs/core/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mprs {

int MilpModel::add_binary(std::string name, double objective) {
  vars_.push_back({VarKind::kBinary, 0.0, 1.0, std::move(name)});
  obj_.push_back(objective);
  return num_vars() - 1;
}

int MilpModel::add_continuous(double lower, double upper, std::string name,
                              double objective) {
  if (lower > upper) throw ModelError("add_continuous: lower > upper");
  vars_.push_back({VarKind::kContinuous, lower, upper, std::move(name)});
  obj_.push_back(objective);
  return num_vars() - 1;
}

void MilpModel::add_constraint(std::vector<LinearTerm> terms, Relation relation,
                               double rhs, std::string name) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_vars()) {
      throw ModelError("constraint references undeclared variable " +
                       std::to_string(t.var));
    }
  }
  rows_.push_back({std::move(terms), relation, rhs, std::move(name)});
}

void MilpModel::set_objective(int var, double coeff) { obj_.at(var) = coeff; }

void MilpModel::add_objective(int var, double coeff) { obj_.at(var) += coeff; }

void MilpModel::set_bounds(int var, double lower, double upper) {
  auto& v = vars_.at(var);
  if (lower > upper) throw ModelError("set_bounds: lower > upper");
  if (v.kind == VarKind::kBinary &&
      (lower < 0.0 || upper > 1.0 || lower != std::floor(lower) ||
       upper != std::floor(upper))) {
    throw ModelError("set_bounds: binary bounds must be 0 or 1");
  }
  v.lower = lower;
  v.upper = upper;
}

void MilpModel::make_continuous(int var) { vars_.at(var).kind = VarKind::kContinuous; }

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) {
    return v.kind == VarKind::kBinary;
  }));
}

double MilpModel::evaluate_objective(std::span<const double> values) const {
  double total = offset_;
  for (int j = 0; j < num_vars(); ++j) total += obj_[j] * values[j];
  return total;
}

double MilpModel::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars_[j].lower - values[j]);
    worst = std::max(worst, values[j] - vars_[j].upper);
  }
  for (const auto& row : rows_) {
    double activity = 0.0;
    double norm = 0.0;
    for (const auto& t : row.terms) {
      activity += t.coeff * values[t.var];
      norm += t.coeff * t.coeff;
    }
    double scale = std::abs(row.rhs) > 1.0 ? std::max(1.0, std::sqrt(norm)) : 1.0;
    double viol = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual: viol = activity - row.rhs; break;
      case Relation::kGreaterEqual: viol = row.rhs - activity; break;
      case Relation::kEqual: viol = std::abs(activity - row.rhs); break;
    }
    worst = std::max(worst, viol / scale);
  }
  return worst;
}

void MilpModel::validate() const {
  for (int j = 0; j < num_vars(); ++j) {
    const auto& v = vars_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ModelError("variable " + std::to_string(j) + " has invalid bounds");
    }
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw ModelError("binary variable " + std::to_string(j) + " outside [0,1]");
    }
  }
  for (const auto& row : rows_) {
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= num_vars()) throw ModelError("row index out of range");
    }
  }
}

MilpModel relax_binaries(const MilpModel& model, std::span<const int> subset) {
  MilpModel relaxed = model;
  for (int j : subset) {
    if (j < 0 || j >= model.num_vars()) {
      throw ModelError("relax_binaries: index " + std::to_string(j) + " out of range");
    }
    if (model.var(j).kind != VarKind::kBinary) {
      throw ModelError("relax_binaries: variable " + std::to_string(j) + " is not binary");
    }
    relaxed.make_continuous(j);
  }
  return relaxed;
}

}  // namespace mprs
