#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mprs/core/milp_model.hpp"
#include "mprs/core/mps_writer.hpp"
#include "mprs/core/solver.hpp"
#include "mprs/generators/rng.hpp"
#include "test_support.hpp"

using namespace mprs;

namespace {

struct RandomLp {
  std::vector<std::vector<double>> a;
  std::vector<double> b, c, ub;
};

RandomLp random_lp(Rng& rng, int n, int m) {
  RandomLp lp;
  for (int j = 0; j < n; ++j) {
    lp.c.push_back(std::round(rng.uniform(-5.0, 5.0)));
    lp.ub.push_back(std::round(rng.uniform(1.0, 4.0)));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> row;
    for (int j = 0; j < n; ++j) row.push_back(std::round(rng.uniform(-3.0, 4.0)));
    lp.a.push_back(row);
    lp.b.push_back(std::round(rng.uniform(-2.0, 8.0)));
  }
  return lp;
}

MilpModel to_model(const RandomLp& lp) {
  MilpModel m;
  for (std::size_t j = 0; j < lp.c.size(); ++j) m.add_continuous(0.0, lp.ub[j], {}, lp.c[j]);
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    std::vector<LinearTerm> t;
    for (std::size_t j = 0; j < lp.c.size(); ++j) {
      if (lp.a[i][j] != 0.0) t.push_back({static_cast<int>(j), lp.a[i][j]});
    }
    m.add_constraint(t, Relation::kLessEqual, lp.b[i]);
  }
  return m;
}

MilpModel random_milp(Rng& rng, int nb, int nc, int m) {
  MilpModel model;
  for (int j = 0; j < nb; ++j) model.add_binary({}, std::round(rng.uniform(-6.0, 6.0)));
  for (int j = 0; j < nc; ++j) {
    model.add_continuous(0.0, std::round(rng.uniform(1.0, 3.0)), {},
                         std::round(rng.uniform(-4.0, 4.0)));
  }
  const int n = nb + nc;
  for (int i = 0; i < m; ++i) {
    std::vector<LinearTerm> t;
    for (int j = 0; j < n; ++j) {
      const double v = std::round(rng.uniform(-3.0, 3.0));
      if (v != 0.0) t.push_back({j, v});
    }
    const int r = static_cast<int>(rng.below(3));
    const auto rel = r == 0 ? Relation::kLessEqual
                            : (r == 1 ? Relation::kGreaterEqual : Relation::kEqual);
    double rhs = std::round(rng.uniform(-2.0, 4.0));
    if (rel == Relation::kGreaterEqual) rhs = std::round(rng.uniform(-4.0, 1.0));
    model.add_constraint(t, rel, rhs);
  }
  return model;
}

}  // namespace

TEST(Lp, MatchesVertexEnumeration) {
  Rng rng(11);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int m = 1 + static_cast<int>(rng.below(4));
    const auto lp = random_lp(rng, n, m);
    const auto expect = test_support::lp_by_vertex_enumeration(lp.a, lp.b, lp.c, lp.ub);
    const auto got = solve_lp(to_model(lp));
    if (!expect) {
      EXPECT_EQ(got.status, SolveStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++solved;
    ASSERT_EQ(got.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(got.objective, *expect, 1e-7) << "trial " << trial;
    EXPECT_LE(to_model(lp).max_violation(got.values), 1e-7);
  }
  EXPECT_GT(solved, 50);
}

TEST(Lp, StrongDualityOnRandomInstances) {
  // max b.y s.t. A^T y <= c, y >= 0 is dual to min c.x s.t. A x >= b, x >= 0.
  Rng rng(23);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int m = 2 + static_cast<int>(rng.below(4));
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : a) for (auto& v : row) v = std::round(rng.uniform(0.0, 5.0));
    for (auto& v : b) v = std::round(rng.uniform(1.0, 6.0));
    for (auto& v : c) v = std::round(rng.uniform(1.0, 9.0));
    MilpModel primal;
    for (int j = 0; j < n; ++j) primal.add_continuous(0.0, kInfinity, {}, c[j]);
    for (int i = 0; i < m; ++i) {
      std::vector<LinearTerm> t;
      for (int j = 0; j < n; ++j) t.push_back({j, a[i][j]});
      primal.add_constraint(t, Relation::kGreaterEqual, b[i]);
    }
    MilpModel dual;
    dual.set_sense(Sense::kMaximize);
    for (int i = 0; i < m; ++i) dual.add_continuous(0.0, kInfinity, {}, b[i]);
    for (int j = 0; j < n; ++j) {
      std::vector<LinearTerm> t;
      for (int i = 0; i < m; ++i) t.push_back({i, a[i][j]});
      dual.add_constraint(t, Relation::kLessEqual, c[j]);
    }
    const auto p = solve_lp(primal);
    const auto d = solve_lp(dual);
    if (p.status == SolveStatus::kInfeasible) {
      EXPECT_EQ(d.status, SolveStatus::kUnbounded);
      continue;
    }
    ASSERT_EQ(p.status, SolveStatus::kOptimal);
    ASSERT_EQ(d.status, SolveStatus::kOptimal);
    EXPECT_NEAR(p.objective, d.objective, 1e-7 * std::max(1.0, std::abs(p.objective)));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Lp, DetectsUnboundedAndInfeasible) {
  MilpModel m;
  int x = m.add_continuous(0.0, kInfinity, {}, -1.0);
  int y = m.add_continuous(0.0, kInfinity);
  m.add_constraint({{x, 1.0}, {y, -1.0}}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp(m).status, SolveStatus::kUnbounded);

  MilpModel inf;
  int a = inf.add_continuous(0.0, 1.0);
  inf.add_constraint({{a, 1.0}}, Relation::kGreaterEqual, 2.0);
  EXPECT_EQ(solve_lp(inf).status, SolveStatus::kInfeasible);
}

TEST(Lp, FreeAndNegativeBoundedVariables) {
  MilpModel m;
  int x = m.add_continuous(-kInfinity, kInfinity, {}, 1.0);
  int y = m.add_continuous(-3.0, -1.0, {}, 2.0);
  m.add_constraint({{x, 1.0}, {y, 1.0}}, Relation::kGreaterEqual, -2.0);
  const auto s = solve_lp(m);
  ASSERT_TRUE(s.optimal());
  // x = -2 - y; objective = -2 + y, minimised at y = -3.
  EXPECT_NEAR(s.objective, -5.0, 1e-9);
  EXPECT_NEAR(s.values[y], -3.0, 1e-9);
}

TEST(Milp, MatchesExhaustiveEnumeration) {
  Rng rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nb = 1 + static_cast<int>(rng.below(10));
    const int nc = static_cast<int>(rng.below(5));
    const int m = 1 + static_cast<int>(rng.below(5));
    auto model = random_milp(rng, nb, nc, m);
    if (rng.below(4) == 0) model.set_sense(Sense::kMaximize);
    const auto expect = test_support::milp_by_enumeration(model);
    const auto got = solve_milp(model);
    if (!expect) {
      EXPECT_EQ(got.status, SolveStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(got.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(got.objective, *expect, 1e-7) << "trial " << trial;
    EXPECT_LE(model.max_violation(got.values), 1e-6);
    for (int j = 0; j < model.num_vars(); ++j) {
      if (model.var(j).kind == VarKind::kBinary) {
        EXPECT_TRUE(got.values[j] == 0.0 || got.values[j] == 1.0);
      }
    }
  }
  EXPECT_GT(feasible, 60);
}

TEST(Milp, Knapsack) {
  MilpModel m;
  m.set_sense(Sense::kMaximize);
  const double value[] = {10, 13, 7, 8, 4};
  const double weight[] = {5, 6, 3, 4, 2};
  std::vector<LinearTerm> t;
  for (int j = 0; j < 5; ++j) t.push_back({m.add_binary({}, value[j]), weight[j]});
  m.add_constraint(t, Relation::kLessEqual, 10.0);
  const auto s = solve_milp(m);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 21.0, 1e-9);
}

TEST(Milp, DeterministicAcrossRuns) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto model = random_milp(rng, 8, 2, 3);
    const auto a = solve_milp(model);
    const auto b = solve_milp(model);
    ASSERT_EQ(a.status, b.status);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.nodes, b.nodes);
  }
}

TEST(Milp, AlternativeOptimaAreStable) {
  MilpModel m;
  int a = m.add_binary({}, 1.0);
  int b = m.add_binary({}, 1.0);
  m.add_constraint({{a, 1.0}, {b, 1.0}}, Relation::kEqual, 1.0);
  const auto s = solve_milp(m);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.values[a] + s.values[b], 1.0);
  EXPECT_EQ(solve_milp(m).values, s.values);
}

TEST(Milp, NodeLimitReportsIncumbentOnly) {
  Rng rng(7);
  MilpModel m;
  std::vector<LinearTerm> t;
  for (int j = 0; j < 30; ++j) {
    t.push_back({m.add_binary({}, -std::round(rng.uniform(10.0, 40.0))),
                 std::round(rng.uniform(10.0, 40.0))});
  }
  m.add_constraint(t, Relation::kLessEqual, 200.5);
  SolverConfig cfg;
  cfg.node_limit = 3;
  const auto s = solve_milp(m, cfg);
  EXPECT_EQ(s.status, SolveStatus::kIncumbentOnly);
  if (s.has_incumbent) EXPECT_GE(s.objective, s.best_bound - 1e-9);
}

TEST(Model, RelaxBinariesSubset) {
  MilpModel m;
  int a = m.add_binary("a", -1.0);
  int b = m.add_binary("b", -1.0);
  m.add_constraint({{a, 2.0}, {b, 2.0}}, Relation::kLessEqual, 3.0);
  const std::vector<int> none;
  EXPECT_EQ(relax_binaries(m, none).num_binaries(), 2);
  const std::vector<int> first{a};
  const auto r = relax_binaries(m, first);
  EXPECT_EQ(r.var(a).kind, VarKind::kContinuous);
  EXPECT_EQ(r.var(b).kind, VarKind::kBinary);
  EXPECT_NEAR(solve_milp(r).objective, -1.5, 1e-9);
  const std::vector<int> both{a, b};
  EXPECT_NEAR(solve_milp(relax_binaries(m, both)).objective, -1.5, 1e-9);
  EXPECT_NEAR(solve_milp(m).objective, -1.0, 1e-9);
  const std::vector<int> bad{5};
  EXPECT_THROW(relax_binaries(m, bad), ModelError);
  MilpModel mixed;
  int c = mixed.add_continuous(0.0, 1.0);
  const std::vector<int> cont{c};
  EXPECT_THROW(relax_binaries(mixed, cont), ModelError);
}

TEST(Model, RejectsBadInput) {
  MilpModel m;
  int a = m.add_binary();
  EXPECT_THROW(m.add_constraint({{a + 3, 1.0}}, Relation::kLessEqual, 1.0), ModelError);
  EXPECT_THROW(m.set_bounds(a, 0.5, 1.0), ModelError);
  EXPECT_THROW(m.add_continuous(2.0, 1.0), ModelError);
  EXPECT_THROW(make_solver("nonexistent"), ModelError);
  SolverConfig cfg;
  cfg.feasibility_tol = -1.0;
  EXPECT_THROW(validate(cfg), ModelError);
}

TEST(Mps, ExportContainsSectionsAndMarkers) {
  MilpModel m;
  m.set_sense(Sense::kMaximize);
  int a = m.add_binary("a", 3.0);
  int b = m.add_continuous(-1.0, 2.5, "b", -1.0);
  int c = m.add_continuous(-kInfinity, kInfinity, "c");
  m.add_constraint({{a, 1.0}, {b, 1.0}, {c, 1.0}}, Relation::kEqual, 2.0);
  m.add_constraint({{a, 1.0}}, Relation::kGreaterEqual, 0.0);
  std::ostringstream out;
  write_mps(out, m, "T");
  const auto s = out.str();
  for (const char* key : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA", "INTORG",
                          "INTEND", " N  COST", " E  R0000000", " G  R0000001", " FR BND"}) {
    EXPECT_NE(s.find(key), std::string::npos) << key;
  }
  // Maximisation is written negated.
  EXPECT_NE(s.find("-3"), std::string::npos);
}
