#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/solver.hpp"

namespace mprs {

enum class InstanceKind { kShortestPath, kMedians, kToy, kCustom };

std::string_view to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(std::string_view text);

using Point = std::array<double, 2>;

struct Arc {
  int tail;
  int head;
};

// Graph behind a shortest-path instance; arc e is decision variable e.
struct SpGraph {
  std::vector<Point> nodes;
  std::vector<Arc> arcs;
  int source = 0;
  int sink = 0;
};

// (l,p)-medians data. Assignment x_ij is variable i*l + j, location y_i is
// variable l*l + i.
struct PlmData {
  int locations = 0;
  int medians = 0;
  std::vector<Point> points;
  std::vector<double> demands;
};

struct InstanceMetadata {
  InstanceKind kind = InstanceKind::kCustom;
  // The constraint matrix of X is totally unimodular with integral rhs.
  bool totally_unimodular = false;
  std::optional<std::uint64_t> seed;
  std::optional<SpGraph> graph;
  std::optional<PlmData> medians;
  int toy_n = 0;
  // Partition scheme label and requested group count, informational.
  std::string partition_scheme;
  int partition_groups = 0;
};

// A 0-1 problem min c.x over X with locally budgeted cost uncertainty.
// Indices outside every group are certain and must have zero deviation.
struct Instance {
  int n = 0;
  std::vector<Constraint> feasible_set;
  std::vector<double> c_lower;
  std::vector<double> deviations;
  std::vector<std::vector<int>> partition;
  InstanceMetadata metadata;

  int num_groups() const { return static_cast<int>(partition.size()); }
};

// Group index of every variable, -1 for certain variables.
std::vector<int> group_of(const Instance& inst);

// Structural checks; throws ModelError.
void validate(const Instance& inst);

// Appends X's rows to `model`, reading x_j as model variable x_offset + j.
void add_feasible_set(MilpModel& model, const Instance& inst, int x_offset);

// P(c): min c.x over X, variables 0..n-1 binary.
MilpModel nominal_model(const Instance& inst, std::span<const double> cost);

// Feasibility solve of X; throws ModelError when X is empty.
void require_nonempty(const Instance& inst, const SolverConfig& config = {});

// True when x satisfies X's rows (binary check included).
bool in_feasible_set(const Instance& inst, std::span<const double> x, double tol = 1e-9);

}  // namespace mprs
