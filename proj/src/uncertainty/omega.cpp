#include "mprs/uncertainty/omega.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mprs/core/milp_model.hpp"
#include "mprs/generators/rng.hpp"

namespace mprs {
namespace {

constexpr double kTol = 1e-9;

void require_nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0)) throw ModelError(std::string(what) + " must be nonnegative");
  }
}

// Cartesian grid with `m` points per coordinate between lo and hi.
std::vector<std::vector<double>> box_grid(const std::vector<double>& lo,
                                          const std::vector<double>& hi, int m) {
  const int dim = static_cast<int>(lo.size());
  double total = std::pow(static_cast<double>(m), dim);
  if (total > 2e6) throw ModelError("grid too large: " + std::to_string(total) + " points");
  std::vector<std::vector<double>> out;
  std::vector<int> idx(dim, 0);
  for (;;) {
    std::vector<double> p(dim);
    for (int k = 0; k < dim; ++k) {
      p[k] = m == 1 ? lo[k] : lo[k] + (hi[k] - lo[k]) * idx[k] / (m - 1);
      if (idx[k] == m - 1) p[k] = hi[k];
    }
    out.push_back(std::move(p));
    int k = 0;
    while (k < dim && ++idx[k] == m) idx[k++] = 0;
    if (k == dim) break;
  }
  return out;
}

}  // namespace

std::string_view to_string(OmegaKind kind) {
  switch (kind) {
    case OmegaKind::kInterval: return "interval";
    case OmegaKind::kSegment: return "segment";
    case OmegaKind::kBudgeted: return "budgeted";
  }
  return "interval";
}

OmegaKind omega_kind_from_string(std::string_view text) {
  if (text == "interval") return OmegaKind::kInterval;
  if (text == "segment") return OmegaKind::kSegment;
  if (text == "budgeted") return OmegaKind::kBudgeted;
  throw ModelError("unknown omega kind '" + std::string(text) + "'");
}

OmegaSpec OmegaSpec::interval(std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size()) throw ModelError("interval bounds differ in length");
  require_nonnegative(lower, "interval lower bound");
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (lower[k] > upper[k]) throw ModelError("interval requires L <= U");
  }
  OmegaSpec o;
  o.kind_ = OmegaKind::kInterval;
  o.lower_ = std::move(lower);
  o.upper_ = std::move(upper);
  return o;
}

OmegaSpec OmegaSpec::segment(std::vector<double> gamma0, double alpha_lo, double alpha_hi) {
  require_nonnegative(gamma0, "segment direction");
  if (!(0.0 <= alpha_lo && alpha_lo <= alpha_hi && alpha_hi <= 1.0)) {
    throw ModelError("segment requires 0 <= alpha_lo <= alpha_hi <= 1");
  }
  OmegaSpec o;
  o.kind_ = OmegaKind::kSegment;
  o.gamma0_ = std::move(gamma0);
  o.alpha_lo_ = alpha_lo;
  o.alpha_hi_ = alpha_hi;
  return o;
}

OmegaSpec OmegaSpec::budgeted(std::vector<double> gamma_lo, std::vector<double> spread,
                              double budget) {
  if (gamma_lo.size() != spread.size()) throw ModelError("budgeted vectors differ in length");
  require_nonnegative(gamma_lo, "budgeted lower point");
  require_nonnegative(spread, "budgeted spread");
  if (!(budget >= 0.0)) throw ModelError("budgeted Delta must be nonnegative");
  OmegaSpec o;
  o.kind_ = OmegaKind::kBudgeted;
  o.gamma_lo_ = std::move(gamma_lo);
  o.spread_ = std::move(spread);
  o.budget_ = budget;
  return o;
}

int OmegaSpec::dim() const {
  switch (kind_) {
    case OmegaKind::kInterval: return static_cast<int>(lower_.size());
    case OmegaKind::kSegment: return static_cast<int>(gamma0_.size());
    case OmegaKind::kBudgeted: return static_cast<int>(gamma_lo_.size());
  }
  return 0;
}

std::vector<double> OmegaSpec::upper_bound() const {
  switch (kind_) {
    case OmegaKind::kInterval: return upper_;
    case OmegaKind::kSegment: {
      std::vector<double> u(gamma0_.size());
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = alpha_hi_ * gamma0_[k];
      return u;
    }
    case OmegaKind::kBudgeted: {
      std::vector<double> u(gamma_lo_.size());
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = gamma_lo_[k] + spread_[k];
      return u;
    }
  }
  return {};
}

GammaVector OmegaSpec::initial_gamma() const {
  switch (kind_) {
    case OmegaKind::kInterval: return GammaVector(lower_);
    case OmegaKind::kSegment: {
      std::vector<double> g(gamma0_.size());
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = alpha_lo_ * gamma0_[k];
      return GammaVector(std::move(g));
    }
    case OmegaKind::kBudgeted: return GammaVector(gamma_lo_);
  }
  return {};
}

bool contains(const OmegaSpec& omega, const GammaVector& gamma) {
  const int dim = omega.dim();
  if (gamma.size() != dim) throw ModelError("gamma dimension differs from omega");
  for (double g : gamma.values) {
    if (g < -kTol) return false;
  }
  switch (omega.kind()) {
    case OmegaKind::kInterval:
      for (int k = 0; k < dim; ++k) {
        if (gamma[k] < omega.lower()[k] - kTol || gamma[k] > omega.upper()[k] + kTol) return false;
      }
      return true;
    case OmegaKind::kSegment: {
      const auto& g0 = omega.gamma0();
      int ref = -1;
      for (int k = 0; k < dim; ++k) {
        if (ref < 0 || g0[k] > g0[ref]) ref = k;
      }
      if (ref < 0 || g0[ref] == 0.0) {
        return std::all_of(gamma.values.begin(), gamma.values.end(),
                           [](double g) { return std::abs(g) <= kTol; });
      }
      const double alpha = gamma[ref] / g0[ref];
      if (alpha < omega.alpha_lo() - kTol || alpha > omega.alpha_hi() + kTol) return false;
      for (int k = 0; k < dim; ++k) {
        if (std::abs(gamma[k] - alpha * g0[k]) > kTol * std::max(1.0, g0[k])) return false;
      }
      return true;
    }
    case OmegaKind::kBudgeted: {
      double used = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double beta = gamma[k] - omega.gamma_lo()[k];
        if (beta < -kTol || beta > omega.spread()[k] + kTol) return false;
        used += beta;
      }
      return used <= omega.budget() + kTol * std::max(1.0, omega.budget());
    }
  }
  return false;
}

std::vector<GammaVector> sample_gamma(const OmegaSpec& omega, const SampleMode& mode) {
  const int dim = omega.dim();
  std::vector<GammaVector> out;

  if (const auto* grid = std::get_if<GridSample>(&mode)) {
    if (grid->points_per_dim < 2) throw ModelError("grid sampling needs at least 2 points");
    const int m = grid->points_per_dim;
    switch (omega.kind()) {
      case OmegaKind::kInterval:
        for (auto& p : box_grid(omega.lower(), omega.upper(), m)) out.emplace_back(std::move(p));
        break;
      case OmegaKind::kSegment:
        for (int i = 0; i < m; ++i) {
          double alpha = omega.alpha_lo() + (omega.alpha_hi() - omega.alpha_lo()) * i / (m - 1);
          if (i == m - 1) alpha = omega.alpha_hi();
          std::vector<double> g(dim);
          for (int k = 0; k < dim; ++k) g[k] = alpha * omega.gamma0()[k];
          out.emplace_back(std::move(g));
        }
        break;
      case OmegaKind::kBudgeted: {
        std::vector<double> hi = omega.upper_bound();
        for (auto& p : box_grid(omega.gamma_lo(), hi, m)) {
          GammaVector g(std::move(p));
          if (contains(omega, g)) out.push_back(std::move(g));
        }
        break;
      }
    }
    return out;
  }

  if (const auto* uni = std::get_if<UniformSample>(&mode)) {
    Rng rng(uni->seed);
    for (int s = 0; s < uni->count; ++s) {
      std::vector<double> g(dim);
      switch (omega.kind()) {
        case OmegaKind::kInterval:
          for (int k = 0; k < dim; ++k) g[k] = rng.uniform(omega.lower()[k], omega.upper()[k]);
          break;
        case OmegaKind::kSegment: {
          const double alpha = rng.uniform(omega.alpha_lo(), omega.alpha_hi());
          for (int k = 0; k < dim; ++k) g[k] = alpha * omega.gamma0()[k];
          break;
        }
        case OmegaKind::kBudgeted: {
          std::vector<double> beta(dim);
          bool inside = false;
          for (int attempt = 0; attempt < 100 && !inside; ++attempt) {
            for (int k = 0; k < dim; ++k) beta[k] = rng.uniform(0.0, omega.spread()[k]);
            inside = std::accumulate(beta.begin(), beta.end(), 0.0) <= omega.budget();
          }
          const double used = std::accumulate(beta.begin(), beta.end(), 0.0);
          if (!inside && used > 0.0) {
            for (double& b : beta) b *= omega.budget() / used;
          }
          for (int k = 0; k < dim; ++k) g[k] = omega.gamma_lo()[k] + beta[k];
          break;
        }
      }
      out.emplace_back(std::move(g));
    }
    return out;
  }

  // Vertices.
  if (omega.kind() == OmegaKind::kSegment) {
    throw ModelError("vertex sampling is defined for interval and budgeted domains only");
  }
  if (dim > 20) throw ModelError("vertex sampling refused for K > 20");
  if (omega.kind() == OmegaKind::kInterval) {
    for (auto& p : box_grid(omega.lower(), omega.upper(), 2)) out.emplace_back(std::move(p));
    return out;
  }
  out.emplace_back(omega.gamma_lo());
  for (int k = 0; k < dim; ++k) {
    std::vector<double> g = omega.gamma_lo();
    g[k] += std::min(omega.budget(), omega.spread()[k]);
    out.emplace_back(std::move(g));
  }
  return out;
}

}  // namespace mprs
