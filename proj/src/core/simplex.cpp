#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mprs::detail {
namespace {

enum class NonbasicAt { kLower, kUpper, kZero };

constexpr double kHarrisTol = 1e-9;
constexpr int kRefactorEvery = 100;

// Dense tableau T = B^-1 [A | I | art] with every row written as
// a.x + s = b. Slack bounds encode the relation: [0,inf) for <=,
// (-inf,0] for >=, [0,0] for =. Rows whose initial slack would be out of
// bounds get an artificial column, scaled so that it enters the basis as +1.
class BoundedSimplex {
 public:
  BoundedSimplex(const MilpModel& model, std::span<const double> lower,
                 std::span<const double> upper, const SolverConfig& config)
      : model_(model), config_(config) {
    n_ = model.num_vars();
    m_ = model.num_constraints();
    const auto rows = model.constraints();

    lo_.assign(lower.begin(), lower.end());
    up_.assign(upper.begin(), upper.end());
    val_.assign(n_, 0.0);
    state_.assign(n_, NonbasicAt::kZero);
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        val_[j] = lo_[j];
        state_[j] = NonbasicAt::kLower;
      } else if (std::isfinite(up_[j])) {
        val_[j] = up_[j];
        state_[j] = NonbasicAt::kUpper;
      }
    }

    // Slack columns.
    for (int i = 0; i < m_; ++i) {
      switch (rows[i].relation) {
        case Relation::kLessEqual: lo_.push_back(0.0); up_.push_back(kInfinity); break;
        case Relation::kGreaterEqual: lo_.push_back(-kInfinity); up_.push_back(0.0); break;
        case Relation::kEqual: lo_.push_back(0.0); up_.push_back(0.0); break;
      }
      val_.push_back(0.0);
      state_.push_back(NonbasicAt::kZero);
    }

    std::vector<double> residual(m_);
    for (int i = 0; i < m_; ++i) {
      double act = 0.0;
      for (const auto& t : rows[i].terms) act += t.coeff * val_[t.var];
      residual[i] = rows[i].rhs - act;
    }

    row_sign_.assign(m_, 1.0);
    std::vector<int> art_row;
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      if (residual[i] >= lo_[s] && residual[i] <= up_[s]) {
        val_[s] = residual[i];
        basis_[i] = s;
      } else {
        const double bound = residual[i] < lo_[s] ? lo_[s] : up_[s];
        val_[s] = bound;
        state_[s] = residual[i] < lo_[s] ? NonbasicAt::kLower : NonbasicAt::kUpper;
        row_sign_[i] = residual[i] - bound >= 0.0 ? 1.0 : -1.0;
        art_row.push_back(i);
      }
    }
    first_art_ = n_ + m_;
    cols_ = first_art_ + static_cast<int>(art_row.size());
    for (std::size_t a = 0; a < art_row.size(); ++a) {
      const int i = art_row[a];
      const int col = first_art_ + static_cast<int>(a);
      lo_.push_back(0.0);
      up_.push_back(kInfinity);
      val_.push_back(std::abs(residual[i] - val_[n_ + i]));
      state_.push_back(NonbasicAt::kZero);
      basis_[i] = col;
    }

    // Sparse copy of the (sign-scaled) rows for exact recomputation.
    sparse_.resize(m_);
    rhs_.resize(m_);
    tab_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double sg = row_sign_[i];
      for (const auto& t : rows[i].terms) {
        at(i, t.var) += sg * t.coeff;
      }
      at(i, n_ + i) = sg;
      rhs_[i] = sg * rows[i].rhs;
    }
    for (std::size_t a = 0; a < art_row.size(); ++a) {
      at(art_row[a], first_art_ + static_cast<int>(a)) = 1.0;
    }
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (at(i, j) != 0.0) sparse_[i].push_back({j, at(i, j)});
      }
    }
    init_basic_ = basis_;
    orig_ = tab_;
    pos_.assign(cols_, -1);
    for (int i = 0; i < m_; ++i) pos_[basis_[i]] = i;

    double cmax = 1.0;
    for (double c : model.objective()) cmax = std::max(cmax, std::abs(c));
    dual_tol_ = 1e-9 * cmax;
    max_iterations_ = 200L * (m_ + cols_) + 5000;
  }

  LpOutcome run() {
    LpOutcome out;
    if (cols_ > first_art_) {
      cost_.assign(cols_, 0.0);
      for (int j = first_art_; j < cols_; ++j) cost_[j] = 1.0;
      compute_reduced_costs();
      const auto status = iterate(/*phase_one=*/true);
      (void)status;
      recompute_basics();
      double infeas = 0.0;
      double scale = 1.0;
      for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(rhs_[i]));
      for (int j = first_art_; j < cols_; ++j) infeas += std::max(0.0, val_[j]);
      if (infeas > config_.feasibility_tol * scale) {
        out.status = SolveStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      drive_out_artificials();
    }
    cost_.assign(cols_, 0.0);
    const double flip = model_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) cost_[j] = flip * model_.objective()[j];
    compute_reduced_costs();
    const auto status = iterate(/*phase_one=*/false);
    recompute_basics();
    out.iterations = iterations_;
    if (status == SolveStatus::kUnbounded) {
      out.status = SolveStatus::kUnbounded;
      return out;
    }
    out.status = SolveStatus::kOptimal;
    out.values.assign(val_.begin(), val_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      out.values[j] = std::clamp(out.values[j], lo_[j], up_[j]);
    }
    out.objective = model_.evaluate_objective(out.values);
    return out;
  }

 private:
  double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool is_fixed(int j) const { return lo_[j] == up_[j]; }

  // Step after which the basic variable of row i hits the bound it moves
  // towards (bound relaxed by tol); +inf when that bound is infinite.
  double blocking_limit(int i, double alpha, double tol) const {
    const int b = basis_[i];
    if (alpha > 0.0 && std::isfinite(lo_[b])) {
      return std::max(0.0, val_[b] - lo_[b] + tol) / alpha;
    }
    if (alpha < 0.0 && std::isfinite(up_[b])) {
      return std::max(0.0, up_[b] - val_[b] + tol) / -alpha;
    }
    return kInfinity;
  }

  void compute_reduced_costs() {
    d_.assign(cost_.begin(), cost_.end());
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  // Returns +1/-1 for an improving direction of nonbasic j, 0 otherwise.
  int direction(int j) const {
    if (pos_[j] >= 0 || is_fixed(j)) return 0;
    const double dj = d_[j];
    switch (state_[j]) {
      case NonbasicAt::kLower:
        return dj < -dual_tol_ ? 1 : 0;
      case NonbasicAt::kUpper:
        return dj > dual_tol_ ? -1 : 0;
      case NonbasicAt::kZero:
        if (dj < -dual_tol_ && up_[j] > val_[j]) return 1;
        if (dj > dual_tol_ && lo_[j] < val_[j]) return -1;
        return 0;
    }
    return 0;
  }

  SolveStatus iterate(bool phase_one) {
    long degenerate_run = 0;
    bool bland = false;
    const double ptol = config_.pivot_tol;
    for (;;) {
      if (++iterations_ > max_iterations_) {
        throw NumericalError("simplex iteration limit exceeded (possible cycling)");
      }
      if (since_refactor_ >= kRefactorEvery) refactor();

      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        const int dj = direction(j);
        if (dj == 0) continue;
        if (bland) {
          enter = j;
          dir = dj;
          break;
        }
        if (std::abs(d_[j]) > best) {
          best = std::abs(d_[j]);
          enter = j;
          dir = dj;
        }
      }
      if (enter < 0) return SolveStatus::kOptimal;

      // Harris ratio test: bound the step with slightly relaxed bounds, then
      // take the largest pivot among rows blocking within that bound.
      double range = kInfinity;
      if (std::isfinite(lo_[enter]) && std::isfinite(up_[enter])) {
        range = up_[enter] - lo_[enter];
      }
      double step = range;
      int leave_row = -1;
      double leave_alpha = 0.0;
      if (bland) {
        for (int i = 0; i < m_; ++i) {
          const double alpha = dir * at(i, enter);
          if (std::abs(alpha) <= ptol) continue;
          const double limit = blocking_limit(i, alpha, 0.0);
          if (!std::isfinite(limit)) continue;
          if (limit < step - 1e-12 ||
              (limit <= step + 1e-12 && leave_row >= 0 && basis_[i] < basis_[leave_row])) {
            step = limit;
            leave_row = i;
            leave_alpha = alpha;
          }
        }
      } else {
        double relaxed = range;
        for (int i = 0; i < m_; ++i) {
          const double alpha = dir * at(i, enter);
          if (std::abs(alpha) <= ptol) continue;
          relaxed = std::min(relaxed, blocking_limit(i, alpha, kHarrisTol));
        }
        if (std::isfinite(relaxed)) {
          double best_alpha = 0.0;
          for (int i = 0; i < m_; ++i) {
            const double alpha = dir * at(i, enter);
            if (std::abs(alpha) <= ptol) continue;
            const double limit = blocking_limit(i, alpha, 0.0);
            if (limit <= relaxed && std::abs(alpha) > best_alpha) {
              best_alpha = std::abs(alpha);
              leave_row = i;
              leave_alpha = alpha;
              step = limit;
            }
          }
          if (leave_row >= 0 && range <= step) leave_row = -1, step = range;
        }
      }
      if (!std::isfinite(step)) {
        if (phase_one) throw NumericalError("phase one reported unbounded");
        return SolveStatus::kUnbounded;
      }

      if (step <= 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      // Move along the edge.
      val_[enter] += dir * step;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a != 0.0) val_[basis_[i]] -= dir * a * step;
      }

      if (leave_row < 0) {
        // Bound flip.
        if (dir > 0) {
          val_[enter] = up_[enter];
          state_[enter] = NonbasicAt::kUpper;
        } else {
          val_[enter] = lo_[enter];
          state_[enter] = NonbasicAt::kLower;
        }
        continue;
      }

      const int leaving = basis_[leave_row];
      if (leave_alpha > 0.0) {
        val_[leaving] = lo_[leaving];
        state_[leaving] = NonbasicAt::kLower;
      } else {
        val_[leaving] = up_[leaving];
        state_[leaving] = NonbasicAt::kUpper;
      }
      pivot(leave_row, enter);
    }
  }

  void pivot(int r, int enter) {
    const double piv = at(r, enter);
    if (std::abs(piv) < 1e-12) throw NumericalError("pivot element vanished");
    double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
    const double inv = 1.0 / piv;
    nz_.clear();
    for (int j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        if (std::abs(prow[j]) < 1e-14) {
          prow[j] = 0.0;
        } else {
          nz_.push_back(j);
        }
      }
    }
    prow[enter] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      const double f = row[enter];
      if (f == 0.0) continue;
      for (int j : nz_) {
        row[j] -= f * prow[j];
        if (std::abs(row[j]) < 1e-14) row[j] = 0.0;
      }
      row[enter] = 0.0;
    }
    const double fd = d_[enter];
    if (fd != 0.0) {
      for (int j : nz_) d_[j] -= fd * prow[j];
    }
    d_[enter] = 0.0;
    pos_[basis_[r]] = -1;
    basis_[r] = enter;
    pos_[enter] = r;
    ++since_refactor_;
  }

  // Rebuilds the tableau as B^-1 times the original rows by Gauss-Jordan
  // elimination with partial pivoting, then refreshes values and reduced
  // costs.
  void refactor() {
    since_refactor_ = 0;
    std::vector<double> bmat(static_cast<std::size_t>(m_) * m_);
    for (int r = 0; r < m_; ++r) {
      for (int i = 0; i < m_; ++i) bmat[static_cast<std::size_t>(r) * m_ + i] = orig_[static_cast<std::size_t>(r) * cols_ + basis_[i]];
    }
    std::vector<double> t = orig_;
    auto b = [&](int r, int c) -> double& { return bmat[static_cast<std::size_t>(r) * m_ + c]; };
    auto trow = [&](int r) { return &t[static_cast<std::size_t>(r) * cols_]; };
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(b(r, c)) > std::abs(b(piv, c))) piv = r;
      }
      if (std::abs(b(piv, c)) < 1e-12) throw NumericalError("basis became singular");
      if (piv != c) {
        for (int k = 0; k < m_; ++k) std::swap(b(piv, k), b(c, k));
        std::swap_ranges(trow(piv), trow(piv) + cols_, trow(c));
      }
      const double inv = 1.0 / b(c, c);
      for (int k = 0; k < m_; ++k) b(c, k) *= inv;
      double* pc = trow(c);
      for (int j = 0; j < cols_; ++j) pc[j] *= inv;
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = b(r, c);
        if (f == 0.0) continue;
        for (int k = c; k < m_; ++k) b(r, k) -= f * b(c, k);
        double* pr = trow(r);
        for (int j = 0; j < cols_; ++j) {
          if (pc[j] != 0.0) pr[j] -= f * pc[j];
        }
      }
    }
    tab_ = std::move(t);
    for (int i = 0; i < m_; ++i) {
      double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) {
        if (std::abs(row[j]) < 1e-14) row[j] = 0.0;
      }
      for (int k = 0; k < m_; ++k) row[basis_[k]] = k == i ? 1.0 : 0.0;
    }
    recompute_basics();
    compute_reduced_costs();
  }

  // x_B = B^-1 (b - N x_N), with B^-1 read off the initial identity columns.
  void recompute_basics() {
    std::vector<double> res(m_);
    for (int r = 0; r < m_; ++r) {
      double v = rhs_[r];
      for (const auto& [j, a] : sparse_[r]) {
        if (pos_[j] < 0) v -= a * val_[j];
      }
      res[r] = v;
    }
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double binv = at(i, init_basic_[r]);
        if (binv != 0.0) v += binv * res[r];
      }
      val_[basis_[i]] = v;
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < first_art_; ++j) {
        if (pos_[j] >= 0) continue;
        if (std::abs(at(i, j)) > best_abs) {
          best_abs = std::abs(at(i, j));
          best = j;
        }
      }
      const int art = basis_[i];
      if (best >= 0) {
        // Degenerate pivot: the artificial sits at zero.
        val_[art] = 0.0;
        state_[art] = NonbasicAt::kLower;
        pivot(i, best);
      }
    }
    for (int j = first_art_; j < cols_; ++j) {
      lo_[j] = 0.0;
      up_[j] = 0.0;
      if (pos_[j] < 0) val_[j] = 0.0;
    }
  }

  const MilpModel& model_;
  const SolverConfig& config_;
  int n_ = 0;
  int m_ = 0;
  int cols_ = 0;
  int first_art_ = 0;
  std::vector<double> tab_;
  std::vector<double> orig_;
  int since_refactor_ = 0;
  std::vector<double> lo_, up_, val_, cost_, d_, rhs_, row_sign_;
  std::vector<NonbasicAt> state_;
  std::vector<int> basis_, pos_, init_basic_, nz_;
  std::vector<std::vector<std::pair<int, double>>> sparse_;
  double dual_tol_ = 1e-9;
  long iterations_ = 0;
  long max_iterations_ = 0;
};

}  // namespace

LpOutcome solve_lp_with_bounds(const MilpModel& model, std::span<const double> lower,
                               std::span<const double> upper, const SolverConfig& config) {
  for (int j = 0; j < model.num_vars(); ++j) {
    if (lower[j] > upper[j]) {
      LpOutcome out;
      out.status = SolveStatus::kInfeasible;
      return out;
    }
  }
  BoundedSimplex simplex(model, lower, upper, config);
  LpOutcome out = simplex.run();
  if (out.status == SolveStatus::kOptimal) {
    // Bounds hold by construction; rows are what can drift.
    double worst = 0.0;
    for (const auto& row : model.constraints()) {
      double act = 0.0;
      double norm = 0.0;
      for (const auto& t : row.terms) {
        act += t.coeff * out.values[t.var];
        norm += t.coeff * t.coeff;
      }
      const double scale = std::abs(row.rhs) > 1.0 ? std::max(1.0, std::sqrt(norm)) : 1.0;
      double viol = 0.0;
      if (row.relation != Relation::kGreaterEqual) viol = std::max(viol, act - row.rhs);
      if (row.relation != Relation::kLessEqual) viol = std::max(viol, row.rhs - act);
      worst = std::max(worst, viol / scale);
    }
    if (worst > 1e3 * config.feasibility_tol) {
      throw NumericalError("simplex solution violates rows by " + std::to_string(worst));
    }
  }
  return out;
}

}  // namespace mprs::detail
