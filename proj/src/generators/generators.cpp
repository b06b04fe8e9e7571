#include "mprs/generators/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "mprs/generators/rng.hpp"

namespace mprs {

std::string_view to_string(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::kRandom: return "r";
    case PartitionKind::kPathCost: return "p";
    case PartitionKind::kDistance: return "d";
    case PartitionKind::kLocationRandom: return "lo";
    case PartitionKind::kDeviationSum: return "g";
  }
  return "r";
}

PartitionKind partition_kind_from_string(std::string_view text) {
  if (text == "r") return PartitionKind::kRandom;
  if (text == "p") return PartitionKind::kPathCost;
  if (text == "d") return PartitionKind::kDistance;
  if (text == "lo") return PartitionKind::kLocationRandom;
  if (text == "g") return PartitionKind::kDeviationSum;
  throw ModelError("unknown partition scheme '" + std::string(text) + "'");
}

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

bool reachable(int nodes, const std::vector<Arc>& arcs, int from, int to) {
  std::vector<std::vector<int>> out(nodes);
  for (const auto& a : arcs) out[a.tail].push_back(a.head);
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int u : out[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return false;
}

std::optional<Instance> try_sp(int nodes, std::uint64_t seed) {
  Rng rng(seed);
  SpGraph g;
  for (int v = 0; v < nodes; ++v) {
    const double x = rng.uniform(0.0, 10.0);
    const double y = rng.uniform(0.0, 10.0);
    g.nodes.push_back({x, y});
  }
  double far = -1.0;
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      const double d = distance(g.nodes[i], g.nodes[j]);
      if (d > far) {
        far = d;
        g.source = i;
        g.sink = j;
      }
    }
  }
  std::vector<std::tuple<double, int, int>> all;
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      if (i != j) all.emplace_back(distance(g.nodes[i], g.nodes[j]), i, j);
    }
  }
  std::sort(all.begin(), all.end());
  const auto keep = static_cast<std::size_t>(std::llround(0.3 * nodes * (nodes - 1)));
  all.resize(std::min(keep, all.size()));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  for (const auto& [len, i, j] : all) g.arcs.push_back({i, j});
  if (!reachable(nodes, g.arcs, g.source, g.sink)) return std::nullopt;

  Instance inst;
  inst.n = static_cast<int>(g.arcs.size());
  for (const auto& [len, i, j] : all) {
    inst.c_lower.push_back(len);
    inst.deviations.push_back(0.5 * len);
  }
  for (int v = 0; v < nodes; ++v) {
    std::vector<LinearTerm> terms;
    for (int e = 0; e < inst.n; ++e) {
      if (g.arcs[e].tail == v) terms.push_back({e, 1.0});
      if (g.arcs[e].head == v) terms.push_back({e, -1.0});
    }
    const double b = v == g.source ? 1.0 : (v == g.sink ? -1.0 : 0.0);
    inst.feasible_set.push_back({std::move(terms), Relation::kEqual, b, "flow" + std::to_string(v)});
  }
  inst.partition = {std::vector<int>(inst.n)};
  std::iota(inst.partition[0].begin(), inst.partition[0].end(), 0);
  inst.metadata.kind = InstanceKind::kShortestPath;
  inst.metadata.totally_unimodular = true;
  inst.metadata.seed = seed;
  inst.metadata.graph = std::move(g);
  inst.metadata.partition_scheme = "r";
  inst.metadata.partition_groups = 1;
  return inst;
}

// Label in [0, K) of value v under buckets [(k-1) lambda, k lambda), last closed.
int bucket(double v, double top, int K) {
  if (!(top > 0.0)) return 0;
  const double lambda = top / K;
  const int k = static_cast<int>(std::floor(v / lambda));
  return std::clamp(k, 0, K - 1);
}

// Cheapest c_lower path cost from every node to `sink`; +inf when unreachable.
std::vector<double> cost_to_sink(const Instance& inst, const SpGraph& g) {
  const int nodes = static_cast<int>(g.nodes.size());
  std::vector<std::vector<std::pair<int, double>>> in(nodes);
  for (int e = 0; e < inst.n; ++e) in[g.arcs[e].head].push_back({g.arcs[e].tail, inst.c_lower[e]});
  std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[g.sink] = 0.0;
  pq.push({0.0, g.sink});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [u, c] : in[v]) {
      if (d + c < dist[u]) {
        dist[u] = d + c;
        pq.push({dist[u], u});
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> from_labels(const std::vector<int>& labels, int K) {
  std::vector<std::vector<int>> groups(K);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] >= 0) groups[labels[j]].push_back(static_cast<int>(j));
  }
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [](const auto& g) { return g.empty(); }),
               groups.end());
  return groups;
}

// Labels per tail node value: buckets over the finite values, unreachable
// (infinite) values in the last group.
std::vector<int> bucket_tails(const Instance& inst, const SpGraph& g,
                              const std::vector<double>& node_value, int K) {
  double top = 0.0;
  for (double v : node_value) {
    if (std::isfinite(v)) top = std::max(top, v);
  }
  std::vector<int> labels(inst.n);
  for (int e = 0; e < inst.n; ++e) {
    const double v = node_value[g.arcs[e].tail];
    labels[e] = std::isfinite(v) ? bucket(v, top, K) : K - 1;
  }
  return labels;
}

}  // namespace

Instance gen_sp(const SpParams& params) {
  if (params.nodes < 2) throw ModelError("shortest-path instances need at least 2 nodes");
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    if (auto inst = try_sp(params.nodes, params.seed + attempt)) return std::move(*inst);
  }
  throw ModelError("no connected shortest-path instance within 1000 seeds");
}

Instance gen_plm(const PlmParams& params) {
  const int l = params.locations;
  const int p = params.medians == 0 ? std::max(1, l / 10) : params.medians;
  if (l < 1 || p < 1 || p > l) throw ModelError("medians instances need 1 <= p <= l");
  Rng rng(params.seed);
  PlmData data;
  data.locations = l;
  data.medians = p;
  for (int i = 0; i < l; ++i) {
    const double x = rng.uniform(0.0, 100.0);
    const double y = rng.uniform(0.0, 100.0);
    data.points.push_back({x, y});
  }
  for (int j = 0; j < l; ++j) data.demands.push_back(rng.uniform(0.0, 100.0));

  Instance inst;
  inst.n = l * l + l;
  inst.c_lower.assign(inst.n, 0.0);
  inst.deviations.assign(inst.n, 0.0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const double c = distance(data.points[i], data.points[j]) * data.demands[j];
      inst.c_lower[i * l + j] = c;
      inst.deviations[i * l + j] = 0.5 * c;
    }
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      inst.feasible_set.push_back(
          {{{i * l + j, 1.0}, {l * l + i, -1.0}}, Relation::kLessEqual, 0.0, {}});
    }
  }
  std::vector<LinearTerm> open;
  for (int i = 0; i < l; ++i) open.push_back({l * l + i, 1.0});
  inst.feasible_set.push_back({std::move(open), Relation::kEqual, static_cast<double>(p), "p"});
  for (int j = 0; j < l; ++j) {
    std::vector<LinearTerm> assign;
    for (int i = 0; i < l; ++i) assign.push_back({i * l + j, 1.0});
    inst.feasible_set.push_back({std::move(assign), Relation::kEqual, 1.0, {}});
  }
  inst.partition = {std::vector<int>(l * l)};
  std::iota(inst.partition[0].begin(), inst.partition[0].end(), 0);
  inst.metadata.kind = InstanceKind::kMedians;
  inst.metadata.seed = params.seed;
  inst.metadata.medians = std::move(data);
  inst.metadata.partition_scheme = "lo";
  inst.metadata.partition_groups = 1;
  return inst;
}

std::vector<std::vector<int>> partition(const Instance& inst, const PartitionScheme& scheme,
                                        std::uint64_t seed) {
  const int K = scheme.groups;
  if (K < 1) throw ModelError("partition needs K >= 1");
  const bool sp_scheme = scheme.kind == PartitionKind::kRandom ||
                         scheme.kind == PartitionKind::kPathCost ||
                         scheme.kind == PartitionKind::kDistance;
  if (sp_scheme && !inst.metadata.graph) {
    throw ModelError("schemes r, p, d apply to shortest-path instances");
  }
  if (!sp_scheme && !inst.metadata.medians) {
    throw ModelError("schemes lo, g apply to medians instances");
  }
  Rng rng(seed);
  switch (scheme.kind) {
    case PartitionKind::kRandom: {
      std::vector<int> labels(inst.n);
      for (auto& l : labels) l = static_cast<int>(rng.below(K));
      return from_labels(labels, K);
    }
    case PartitionKind::kPathCost: {
      const auto& g = *inst.metadata.graph;
      return from_labels(bucket_tails(inst, g, cost_to_sink(inst, g), K), K);
    }
    case PartitionKind::kDistance: {
      const auto& g = *inst.metadata.graph;
      std::vector<double> dist;
      for (const auto& p : g.nodes) dist.push_back(distance(p, g.nodes[g.sink]));
      return from_labels(bucket_tails(inst, g, dist, K), K);
    }
    case PartitionKind::kLocationRandom:
    case PartitionKind::kDeviationSum: {
      const int l = inst.metadata.medians->locations;
      std::vector<int> row_label(l);
      if (scheme.kind == PartitionKind::kLocationRandom) {
        for (auto& r : row_label) r = static_cast<int>(rng.below(K));
      } else {
        std::vector<double> sums(l, 0.0);
        for (int i = 0; i < l; ++i) {
          for (int j = 0; j < l; ++j) sums[i] += inst.deviations[i * l + j];
        }
        const double top = *std::max_element(sums.begin(), sums.end());
        for (int i = 0; i < l; ++i) row_label[i] = bucket(sums[i], top, K);
      }
      std::vector<int> labels(inst.n, -1);
      for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) labels[i * l + j] = row_label[i];
      }
      return from_labels(labels, K);
    }
  }
  return {};
}

Instance with_partition(const Instance& inst, const PartitionScheme& scheme, std::uint64_t seed) {
  Instance out = inst;
  out.partition = partition(inst, scheme, seed);
  out.metadata.partition_scheme = std::string(to_string(scheme.kind));
  out.metadata.partition_groups = scheme.groups;
  return out;
}

OmegaSpec build_omega(const Instance& inst, OmegaKind kind, const OmegaParams& params) {
  const int K = inst.num_groups();
  std::vector<double> m(K, 0.0);
  for (int k = 0; k < K; ++k) {
    for (int j : inst.partition[k]) m[k] = std::max(m[k], inst.deviations[j]);
  }
  switch (kind) {
    case OmegaKind::kInterval: {
      if (!(params.delta >= 0.0)) throw ModelError("delta must be nonnegative");
      std::vector<double> lo(K), up(K);
      for (int k = 0; k < K; ++k) {
        lo[k] = params.delta * m[k];
        up[k] = (params.delta + 1.0) * m[k];
      }
      return OmegaSpec::interval(std::move(lo), std::move(up));
    }
    case OmegaKind::kSegment: {
      double scale = 1.0;
      if (params.segment_scale) {
        scale = *params.segment_scale;
      } else if (inst.metadata.medians) {
        const double l = inst.metadata.medians->locations;
        scale = l * l;
      }
      std::vector<double> g0(K);
      for (int k = 0; k < K; ++k) g0[k] = scale * m[k];
      return OmegaSpec::segment(std::move(g0), params.alpha_lo, params.alpha_hi);
    }
    case OmegaKind::kBudgeted: {
      std::vector<double> lo(K), spread(K);
      double widest = 0.0;
      for (int k = 0; k < K; ++k) {
        lo[k] = params.beta1 * m[k];
        spread[k] = params.beta2 * lo[k];
        widest = std::max(widest, spread[k]);
      }
      return OmegaSpec::budgeted(std::move(lo), std::move(spread), params.delta * widest);
    }
  }
  throw ModelError("unknown omega kind");
}

}  // namespace mprs
