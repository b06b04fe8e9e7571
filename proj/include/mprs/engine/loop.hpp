#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mprs/core/milp_model.hpp"

namespace mprs {

enum class StopReason { kEpsilonMet, kBudgetExceeded };

std::string_view to_string(StopReason reason);
StopReason stop_reason_from_string(std::string_view text);

struct LoopBudget {
  int max_iterations = 500;
  double time_limit_seconds = 3600.0;
};

// Slack added to epsilon in the stop test.
inline constexpr double kStopSlack = 1e-9;

template <class Entry>
struct LoopStep {
  double q_value = 0.0;
  Entry entry;
};

template <class Entry>
struct LoopOutcome {
  std::vector<Entry> entries;
  std::vector<double> q_values;
  StopReason stop = StopReason::kEpsilonMet;
  double elapsed_seconds = 0.0;
};

// The cutting loop shared by every multiparametric run: solve the master
// problem over the stored entries, stop once its value is at most epsilon,
// otherwise store its optimal entry and repeat.
//
// solve_master(entries, seconds_left) returns nullopt when it ran out of
// time. on_iteration(q_value, entry, outcome_so_far) sees every master
// solve.
template <class Entry, class SolveMaster, class OnIteration>
LoopOutcome<Entry> run_parametric_loop(Entry first, SolveMaster&& solve_master, double epsilon,
                                       const LoopBudget& budget,
                                       OnIteration&& on_iteration) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  LoopOutcome<Entry> out;
  out.entries.push_back(std::move(first));
  for (;;) {
    const double left = budget.time_limit_seconds - elapsed();
    if (left <= 0.0) {
      out.stop = StopReason::kBudgetExceeded;
      break;
    }
    std::optional<LoopStep<Entry>> step = solve_master(out.entries, left);
    if (!step) {
      out.stop = StopReason::kBudgetExceeded;
      break;
    }
    out.q_values.push_back(step->q_value);
    out.elapsed_seconds = elapsed();
    on_iteration(step->q_value, step->entry, out);
    if (step->q_value <= epsilon + kStopSlack) {
      out.stop = StopReason::kEpsilonMet;
      break;
    }
    if (static_cast<int>(out.entries.size()) >= budget.max_iterations) {
      out.stop = StopReason::kBudgetExceeded;
      break;
    }
    out.entries.push_back(std::move(step->entry));
  }
  out.elapsed_seconds = elapsed();
  return out;
}

}  // namespace mprs
