#pragma once

#include <optional>
#include <vector>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/solver.hpp"
#include "mprs/robust/robust.hpp"
#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

// One stored robust solution together with its dual certificate.
struct HistoryEntry {
  // Standard: 0-1 pi. Variant: pi_k = sum_{s in P_k} d_s w_s.
  std::vector<double> pi;
  std::vector<double> rho;
  std::vector<double> x;
  // Variant certificates only.
  std::vector<double> w;
  std::vector<double> alpha;
  GammaVector gamma;
  // Value of the master problem that produced the entry; empty for the
  // initial solution.
  std::optional<double> q_value_at_discovery;
  bool variant = false;
};

// Value the entry guarantees at gamma: Gamma.pi + d.rho + c_lower.x
// (variant: Gamma.pi + sum(rho) + c_lower.x).
double stored_value(const Instance& inst, const HistoryEntry& entry, const GammaVector& gamma);

HistoryEntry entry_from_robust(const RobustSolution& sol, const GammaVector& gamma);

// Variable blocks of a master problem; unused blocks are -1.
struct QLayout {
  int groups = 0;
  int n = 0;
  int gamma = -1;          // continuous Gamma_k
  int segment_alpha = -1;  // scalar alpha of the segment form
  int beta = -1;           // budgeted form
  int pi = -1;
  int rho = -1;
  int x = -1;
  int wk = -1;     // w_k = Gamma_k pi_k
  int w = -1;      // variant w_s
  int alpha = -1;  // variant alpha_s
  int z = -1;      // variant z_s = Gamma_k w_s
  int sigma = -1;
};

enum class QForm { kGeneral, kInterval, kSegment, kBudgeted, kVariant };

struct QModel {
  MilpModel model;
  QLayout layout;
  QForm form = QForm::kGeneral;
  // For interval Q+: Gamma is recovered from pi.
  std::vector<double> interval_lower, interval_upper;
};

// Omega embedded through continuous Gamma variables, w_k - Gamma_k - U_k pi_k >= -U_k.
// `relaxed` makes rho and x continuous (totally unimodular instances).
QModel build_q_general(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history, bool relaxed = false);

// 0-1 model without Gamma variables; Gamma+(pi)_k = L_k pi_k + U_k (1 - pi_k).
QModel build_q_interval(const Instance& inst, const OmegaSpec& omega,
                        const std::vector<HistoryEntry>& history, bool relaxed = false);

// Scalar alpha with Gamma = alpha Gamma0.
QModel build_q_segment(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history, bool relaxed = false);

// Gamma = Gamma_lo + beta, 0 <= beta <= D, sum(beta) <= Delta.
QModel build_q_budgeted(const Instance& inst, const OmegaSpec& omega,
                        const std::vector<HistoryEntry>& history, bool relaxed = false);

// Fractional variant: history holds breakpoint certificates; the products
// Gamma_k w_s are linearised as z_s >= Gamma_k - U_k (1 - w_s).
QModel build_q_variant(const Instance& inst, const OmegaSpec& omega,
                       const std::vector<HistoryEntry>& history);

// Builder matching the kind of omega (variant for variant histories).
QModel build_q(const Instance& inst, const OmegaSpec& omega,
               const std::vector<HistoryEntry>& history, bool relaxed, bool use_general);

struct QOptimum {
  GammaVector gamma;
  HistoryEntry entry;
  // min_i stored_value(i, Gamma*) minus the value of the extracted entry.
  double value = 0.0;
};

// Reads Gamma* and (pi*, rho*, x*) from an optimal master solution. Relaxed
// models must return integral x; rho is then rebuilt as (1 - pi_k) x_j.
QOptimum extract_q_optimum(const Instance& inst, const OmegaSpec& omega, const QModel& q,
                           const std::vector<HistoryEntry>& history,
                           const MilpSolution& solution, bool relaxed);

}  // namespace mprs
