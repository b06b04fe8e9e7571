#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mprs/core/solver.hpp"
#include "mprs/generators/generators.hpp"
#include "mprs/io/json_io.hpp"
#include "mprs/uncertainty/omega.hpp"

using namespace mprs;

namespace {

double bellman_ford(const Instance& inst) {
  const auto& g = *inst.metadata.graph;
  std::vector<double> dist(g.nodes.size(), std::numeric_limits<double>::infinity());
  dist[g.source] = 0.0;
  for (std::size_t pass = 0; pass < g.nodes.size(); ++pass) {
    for (std::size_t e = 0; e < g.arcs.size(); ++e) {
      const auto& a = g.arcs[e];
      dist[a.head] = std::min(dist[a.head], dist[a.tail] + inst.c_lower[e]);
    }
  }
  return dist[g.sink];
}

std::vector<int> labels_of(const std::vector<std::vector<int>>& groups, int n) {
  std::vector<int> label(n, -1);
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (int j : groups[k]) label[j] = static_cast<int>(k);
  return label;
}

}  // namespace

TEST(ShortestPath, ArcCountAndShape) {
  for (int v : {2, 5, 10, 15}) {
    const auto inst = gen_sp({v, 3});
    const auto& g = *inst.metadata.graph;
    EXPECT_EQ(inst.n, static_cast<int>(std::llround(0.3 * v * (v - 1))));
    EXPECT_EQ(g.arcs.size(), static_cast<std::size_t>(inst.n));
    EXPECT_TRUE(inst.metadata.totally_unimodular);
    EXPECT_EQ(inst.num_groups(), 1);
    for (int j = 0; j < inst.n; ++j) EXPECT_DOUBLE_EQ(inst.deviations[j], inst.c_lower[j] / 2);
  }
  EXPECT_EQ(gen_sp({10, 1}).n, 27);
}

TEST(ShortestPath, NominalOptimumIsShortestDistance) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = gen_sp({12, seed});
    const auto sol = solve_milp(nominal_model(inst, inst.c_lower));
    ASSERT_TRUE(sol.optimal());
    EXPECT_NEAR(sol.objective, bellman_ford(inst), 1e-6);
  }
}

TEST(ShortestPath, Deterministic) {
  EXPECT_EQ(dump(instance_to_json(gen_sp({11, 9}))), dump(instance_to_json(gen_sp({11, 9}))));
  EXPECT_NE(dump(instance_to_json(gen_sp({11, 9}))), dump(instance_to_json(gen_sp({11, 40}))));
  // Disconnected draws move on to the next seed.
  const auto retried = gen_sp({11, 9});
  EXPECT_GE(*retried.metadata.seed, 9u);
  EXPECT_EQ(dump(instance_to_json(gen_sp({11, *retried.metadata.seed}))),
            dump(instance_to_json(retried)));
}

TEST(Medians, Extremes) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto all = gen_plm({6, 6, seed});
    EXPECT_NEAR(solve_milp(nominal_model(all, all.c_lower)).objective, 0.0, 1e-9);
    const auto one = gen_plm({6, 1, seed});
    double best = 1e300;
    for (int i = 0; i < 6; ++i) {
      double s = 0.0;
      for (int j = 0; j < 6; ++j) s += one.c_lower[i * 6 + j];
      best = std::min(best, s);
    }
    EXPECT_NEAR(solve_milp(nominal_model(one, one.c_lower)).objective, best, 1e-6);
  }
  EXPECT_EQ(gen_plm({25, 0, 1}).metadata.medians->medians, 2);
  EXPECT_THROW(gen_plm({3, 4, 1}), ModelError);
}

TEST(Partition, SingleGroup) {
  const auto sp = gen_sp({8, 2});
  for (auto kind : {PartitionKind::kRandom, PartitionKind::kPathCost, PartitionKind::kDistance}) {
    const auto groups = partition(sp, {kind, 1}, 1);
    ASSERT_EQ(groups.size(), 1u);
    EXPECT_EQ(static_cast<int>(groups[0].size()), sp.n);
  }
}

TEST(Partition, CoversAndIsDisjoint) {
  const auto sp = gen_sp({12, 5});
  for (auto kind : {PartitionKind::kRandom, PartitionKind::kPathCost, PartitionKind::kDistance}) {
    const auto groups = partition(sp, {kind, 4}, 3);
    EXPECT_LE(groups.size(), 4u);
    const auto label = labels_of(groups, sp.n);
    for (int l : label) EXPECT_GE(l, 0);
    for (const auto& g : groups) EXPECT_FALSE(g.empty());
    std::size_t total = 0;
    for (const auto& g : groups) total += g.size();
    EXPECT_EQ(total, static_cast<std::size_t>(sp.n));
  }
}

TEST(Partition, SameTailSameGroup) {
  const auto sp = gen_sp({12, 6});
  const auto& arcs = sp.metadata.graph->arcs;
  for (auto kind : {PartitionKind::kPathCost, PartitionKind::kDistance}) {
    const auto label = labels_of(partition(sp, {kind, 3}, 1), sp.n);
    for (std::size_t a = 0; a < arcs.size(); ++a)
      for (std::size_t b = 0; b < arcs.size(); ++b)
        if (arcs[a].tail == arcs[b].tail) EXPECT_EQ(label[a], label[b]);
  }
}

TEST(Partition, MediansRows) {
  const int l = 7;
  const auto plm = gen_plm({l, 2, 4});
  for (auto kind : {PartitionKind::kLocationRandom, PartitionKind::kDeviationSum}) {
    const auto groups = partition(plm, {kind, 3}, 2);
    const auto label = labels_of(groups, plm.n);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) EXPECT_EQ(label[i * l + j], label[i * l]);
  }
  const auto label = labels_of(partition(plm, {PartitionKind::kDeviationSum, 3}, 2), plm.n);
  int imax = 0;
  double top = -1.0;
  for (int i = 0; i < l; ++i) {
    double s = 0.0;
    for (int j = 0; j < l; ++j) s += plm.deviations[i * l + j];
    if (s > top) top = s, imax = i;
  }
  const int last = *std::max_element(label.begin(), label.end());
  EXPECT_EQ(label[imax * l], last);
  EXPECT_THROW(partition(plm, {PartitionKind::kRandom, 2}, 1), ModelError);
}

TEST(Omega, Construction) {
  const auto sp = with_partition(gen_sp({10, 3}), {PartitionKind::kRandom, 3}, 4);
  std::vector<double> m(sp.num_groups(), 0.0);
  for (int k = 0; k < sp.num_groups(); ++k)
    for (int j : sp.partition[k]) m[k] = std::max(m[k], sp.deviations[j]);
  const auto zero = build_omega(sp, OmegaKind::kInterval, {.delta = 0.0});
  for (int k = 0; k < sp.num_groups(); ++k) {
    EXPECT_DOUBLE_EQ(zero.lower()[k], 0.0);
    EXPECT_DOUBLE_EQ(zero.upper()[k], m[k]);
  }
  for (double delta : {0.5, 1.0, 3.0}) {
    const auto box = build_omega(sp, OmegaKind::kInterval, {.delta = delta});
    for (int k = 0; k < sp.num_groups(); ++k)
      EXPECT_NEAR(box.upper()[k] - box.lower()[k], m[k], 1e-12);
  }
  const auto seg = build_omega(sp, OmegaKind::kSegment, {.alpha_lo = 0.2, .alpha_hi = 0.8});
  EXPECT_EQ(seg.gamma0(), m);
  const auto wide = build_omega(sp, OmegaKind::kBudgeted, {.delta = 10.0});
  double spread = 0.0;
  for (double s : wide.spread()) spread += s;
  EXPECT_GE(wide.budget(), spread);
  const auto box = OmegaSpec::interval(wide.gamma_lo(), wide.upper_bound());
  for (const auto& g : sample_gamma(box, GridSample{3})) EXPECT_TRUE(contains(wide, g));
  const auto plm = with_partition(gen_plm({5, 2, 1}), {PartitionKind::kLocationRandom, 2}, 1);
  const auto plm_seg = build_omega(plm, OmegaKind::kSegment, {});
  double top = 0.0;
  for (int j : plm.partition[0]) top = std::max(top, plm.deviations[j]);
  EXPECT_NEAR(plm_seg.gamma0()[0], 25.0 * top, 1e-9);
}
