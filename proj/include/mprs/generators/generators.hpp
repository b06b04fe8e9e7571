#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

struct SpParams {
  int nodes = 10;
  std::uint64_t seed = 1;
};

struct PlmParams {
  int locations = 10;
  // 0 selects max(1, locations / 10).
  int medians = 0;
  std::uint64_t seed = 1;
};

enum class PartitionKind { kRandom, kPathCost, kDistance, kLocationRandom, kDeviationSum };

std::string_view to_string(PartitionKind kind);  // "r", "p", "d", "lo", "g"
PartitionKind partition_kind_from_string(std::string_view text);

struct PartitionScheme {
  PartitionKind kind = PartitionKind::kRandom;
  int groups = 1;
};

// Shortest path: |V| points on [0,10]^2, source and sink the farthest pair,
// the shortest 30% of the arcs of the complete digraph kept, c = length,
// d = c / 2, X = unit flow from source to sink. When the sink is not
// reachable the seed is incremented (at most 1000 times); the seed actually
// used is stored in the metadata. The partition is a single group.
Instance gen_sp(const SpParams& params);

// (l,p)-medians: locations on [0,100]^2, demands on [0,100],
// c_ij = dist(i,j) * D_j, d = c / 2. Variables x_ij (i*l + j) then y_i
// (l*l + i). The partition is a single group of all assignment variables.
Instance gen_plm(const PlmParams& params);

// Group lists for `scheme`; empty groups are dropped and the rest renumbered.
// Random schemes draw from `seed`.
std::vector<std::vector<int>> partition(const Instance& inst, const PartitionScheme& scheme,
                                        std::uint64_t seed);

// Copy of inst with the partition replaced and recorded in the metadata.
Instance with_partition(const Instance& inst, const PartitionScheme& scheme, std::uint64_t seed);

struct OmegaParams {
  double delta = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  // Multiplier n in Gamma0_k = n * max_{P_k} d; defaults to 1 for shortest
  // path and l^2 for medians.
  std::optional<double> segment_scale;
};

// m_k = max deviation in group k.
//   interval: [delta m_k, (delta + 1) m_k]
//   segment:  Gamma0_k = scale m_k, alpha in [alpha_lo, alpha_hi]
//   budgeted: Gamma_lo = beta1 m, D = beta2 Gamma_lo, Delta = delta max_k D_k
OmegaSpec build_omega(const Instance& inst, OmegaKind kind, const OmegaParams& params);

}  // namespace mprs
