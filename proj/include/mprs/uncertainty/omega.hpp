#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace mprs {

// A budget vector Gamma in R^K_+.
struct GammaVector {
  std::vector<double> values;

  GammaVector() = default;
  explicit GammaVector(std::vector<double> v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int k) const { return values[k]; }
};

enum class OmegaKind { kInterval, kSegment, kBudgeted };

std::string_view to_string(OmegaKind kind);
OmegaKind omega_kind_from_string(std::string_view text);

// Parameter domain for Gamma.
//   interval:  L <= Gamma <= U
//   segment:   Gamma = alpha * Gamma0, alpha in [alpha_lo, alpha_hi] (subset of [0,1])
//   budgeted:  Gamma = Gamma_lo + beta, 0 <= beta <= D, sum(beta) <= Delta
class OmegaSpec {
 public:
  static OmegaSpec interval(std::vector<double> lower, std::vector<double> upper);
  static OmegaSpec segment(std::vector<double> gamma0, double alpha_lo, double alpha_hi);
  static OmegaSpec budgeted(std::vector<double> gamma_lo, std::vector<double> spread,
                            double budget);

  OmegaKind kind() const { return kind_; }
  int dim() const;

  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<double>& gamma0() const { return gamma0_; }
  double alpha_lo() const { return alpha_lo_; }
  double alpha_hi() const { return alpha_hi_; }
  const std::vector<double>& gamma_lo() const { return gamma_lo_; }
  const std::vector<double>& spread() const { return spread_; }
  double budget() const { return budget_; }

  // Componentwise bound U with Gamma <= U on the whole domain.
  std::vector<double> upper_bound() const;

  // Starting point of the solution-set search: L, alpha_lo * Gamma0 or
  // Gamma_lo depending on the kind.
  GammaVector initial_gamma() const;

 private:
  OmegaKind kind_ = OmegaKind::kInterval;
  std::vector<double> lower_, upper_;
  std::vector<double> gamma0_;
  double alpha_lo_ = 0.0, alpha_hi_ = 1.0;
  std::vector<double> gamma_lo_, spread_;
  double budget_ = 0.0;
};

// Membership with tolerance 1e-9 on bounds and on segment collinearity.
bool contains(const OmegaSpec& omega, const GammaVector& gamma);

struct GridSample {
  int points_per_dim = 5;
};
struct UniformSample {
  std::uint64_t seed = 1;
  int count = 100;
};
struct VertexSample {};

using SampleMode = std::variant<GridSample, UniformSample, VertexSample>;

// Every returned point passes contains(). Vertex mode is refused for
// segments and for K > 20.
std::vector<GammaVector> sample_gamma(const OmegaSpec& omega, const SampleMode& mode);

}  // namespace mprs
