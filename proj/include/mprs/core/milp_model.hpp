#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mprs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kBinary, kContinuous };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };

struct Variable {
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
  std::string name;
};

struct LinearTerm {
  int var;
  double coeff;
};

struct Constraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// Thrown when a model, instance or argument violates its contract.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mixed 0-1 linear model. Binary variables carry bounds inside [0,1] so that
// branch-and-bound and callers can fix them by tightening the bounds.
class MilpModel {
 public:
  int add_binary(std::string name = {}, double objective = 0.0);
  int add_continuous(double lower, double upper, std::string name = {},
                     double objective = 0.0);

  void add_constraint(std::vector<LinearTerm> terms, Relation relation,
                      double rhs, std::string name = {});

  void set_objective(int var, double coeff);
  void add_objective(int var, double coeff);
  void set_sense(Sense sense) { sense_ = sense; }
  void set_objective_offset(double offset) { offset_ = offset; }

  // Changes the bounds of a variable; binaries accept only 0/1 bounds.
  void set_bounds(int var, double lower, double upper);
  // Turns a binary into a continuous variable on [0,1] keeping fixings.
  void make_continuous(int var);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const;

  const Variable& var(int j) const { return vars_.at(j); }
  std::span<const Variable> vars() const { return vars_; }
  std::span<const Constraint> constraints() const { return rows_; }
  std::span<const double> objective() const { return obj_; }
  double objective_offset() const { return offset_; }
  Sense sense() const { return sense_; }

  double evaluate_objective(std::span<const double> values) const;

  // Largest violation of any row or bound, scaled by the row norm for rows
  // with |rhs| > 1.
  double max_violation(std::span<const double> values) const;

  // Throws ModelError when an index is out of range or a bound is inverted.
  void validate() const;

 private:
  std::vector<Variable> vars_;
  std::vector<double> obj_;
  std::vector<Constraint> rows_;
  Sense sense_ = Sense::kMinimize;
  double offset_ = 0.0;
};

// Copy of `model` with the listed binaries relaxed to continuous [0,1].
MilpModel relax_binaries(const MilpModel& model, std::span<const int> subset);

}  // namespace mprs
