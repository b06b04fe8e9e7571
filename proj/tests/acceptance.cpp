// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "mprs/cli/commands.hpp"
#include "mprs/core/solver.hpp"
#include "mprs/engine/aq.hpp"
#include "mprs/generators/generators.hpp"
#include "mprs/generators/rng.hpp"
#include "mprs/io/json_io.hpp"
#include "mprs/oracle/oracle.hpp"
#include "mprs/robust/robust.hpp"
#include "mprs/uncertainty/robustness.hpp"
#include "test_support.hpp"

using namespace mprs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later ones only bump the count.
struct Check {
  int failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  Outcome outcome(std::string summary) const {
    if (failures == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double min_w(const Instance& inst, const std::vector<std::vector<double>>& xs, const GammaVector& g,
             bool variant) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : xs)
    best = std::min(best, variant ? robustness_value_variant(inst, x, g) : robustness_value(inst, x, g));
  return best;
}

Instance sp_instance(int nodes, std::uint64_t seed, int groups) {
  return with_partition(gen_sp({nodes, seed}), {PartitionKind::kRandom, groups}, seed);
}

// Grid plus vertices of an interval box.
std::vector<GammaVector> grid_and_vertices(const OmegaSpec& omega, int m) {
  auto pts = sample_gamma(omega, GridSample{m});
  for (auto& v : sample_gamma(omega, VertexSample{})) pts.push_back(v);
  return pts;
}

Outcome criterion1() {
  Check c;
  const auto toy = toy_instance(2);
  const auto r = run_aq(toy.instance, toy.omega1);
  if (r.distinct_solutions() != 1) c.fail("Toy_2 on omega1 gave " + std::to_string(r.distinct_solutions()));
  if (r.distinct_x.empty() || r.distinct_x[0] != std::vector<double>{0, 0, 1}) c.fail("Toy_2 solution is not e3");
  auto pts = sample_gamma(toy.omega1, GridSample{5});
  for (auto& g : sample_gamma(toy.omega1, UniformSample{1, 200})) pts.push_back(g);
  for (const auto& g : pts) {
    if (std::abs(min_w(toy.instance, r.distinct_x, g, false) - 11.5) > 1e-6) c.fail("robustness differs from 11.5");
  }
  std::string counts;
  for (int n = 2; n <= 5; ++n) {
    const auto t = toy_instance(n);
    const int s = run_aq(t.instance, t.omega2).distinct_solutions();
    counts += (counts.empty() ? "" : ",") + std::to_string(s);
    if (s != n) c.fail("Toy_" + std::to_string(n) + " on omega2 gave " + std::to_string(s));
  }
  return c.outcome("Toy_2/omega1 s=1 value 11.5 on " + std::to_string(pts.size()) +
                   " points; Toy_n/omega2 s=" + counts);
}

Outcome criterion2() {
  Check c;
  Rng rng(2024);
  int comparisons = 0;
  auto compare = [&](const Instance& inst, const std::string& label, bool tu) {
    const auto xs = enumerate_x(inst);
    const auto omega = build_omega(inst, OmegaKind::kInterval, {.delta = 0.5});
    const auto std_pts = sample_gamma(omega, UniformSample{rng.next(), 20});
    for (const auto& g : std_pts) {
      const double ref = brute_robust(inst, xs, g, false).value;
      const double a = solve_robust(inst, g, RobustMode::kStandard).value;
      if (std::abs(a - ref) > 1e-6) c.fail(label + " standard " + fmt(a) + " vs " + fmt(ref));
      ++comparisons;
      if (tu) {
        const double b = solve_robust(inst, g, RobustMode::kTuRelaxed).value;
        if (std::abs(b - ref) > 1e-6) c.fail(label + " tu_relaxed " + fmt(b) + " vs " + fmt(ref));
        ++comparisons;
      }
    }
    std::vector<double> sizes;
    for (const auto& p : inst.partition) sizes.push_back(static_cast<double>(p.size()));
    const auto var_omega = OmegaSpec::interval(std::vector<double>(sizes.size(), 0.0), sizes);
    for (const auto& g : sample_gamma(var_omega, UniformSample{rng.next(), 20})) {
      const double ref = brute_robust(inst, xs, g, true).value;
      const double v = solve_robust(inst, g, RobustMode::kVariant).value;
      if (std::abs(v - ref) > 1e-6) c.fail(label + " variant " + fmt(v) + " vs " + fmt(ref));
      ++comparisons;
    }
  };
  for (int i = 0; i < 25; ++i) {
    const int nodes = 6 + i % 5;
    const int groups = 1 + i % 3;
    compare(sp_instance(nodes, 100 + i, groups), "sp#" + std::to_string(i), true);
  }
  for (int i = 0; i < 10; ++i) {
    const int l = 5 + i % 4;
    const auto base = gen_plm({l, 2, 200u + i});
    const auto inst = with_partition(base, {PartitionKind::kLocationRandom, 1 + i % 2}, 7 + i);
    compare(inst, "plm#" + std::to_string(i), false);
  }
  return c.outcome("25 SP + 10 PLM, " + std::to_string(comparisons) + " comparisons");
}

struct GridCase {
  Instance inst;
  OmegaSpec omega;
  std::vector<std::vector<double>> xs;
};

std::vector<GridCase> criterion3_cases() {
  std::vector<GridCase> cases;
  const double deltas[] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 10; ++i) {
    const auto inst = sp_instance(10 + i % 3, 300 + i, 3);
    cases.push_back({inst, build_omega(inst, OmegaKind::kInterval, {.delta = deltas[i % 3]}),
                     enumerate_x(inst)});
  }
  return cases;
}

Outcome criterion3(const std::vector<GridCase>& cases) {
  Check c;
  double worst = 0.0;
  int points = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& gc = cases[i];
    AqOptions opt;
    opt.epsilon = 1.0;
    opt.relative_epsilon = true;
    const auto r = run_aq(gc.inst, gc.omega, opt);
    if (r.stop_reason != StopReason::kEpsilonMet) c.fail("case " + std::to_string(i) + " hit the budget");
    for (const auto& g : grid_and_vertices(gc.omega, 5)) {
      const double ref = brute_robust(gc.inst, gc.xs, g, false).value;
      const double rel = (min_w(gc.inst, r.distinct_x, g, false) - ref) / ref;
      worst = std::max(worst, rel);
      ++points;
      if (rel > 0.01 + 1e-6) c.fail("case " + std::to_string(i) + " relative gap " + fmt(rel));
    }
  }
  return c.outcome(std::to_string(cases.size()) + " instances, " + std::to_string(points) +
                   " points, max relative gap " + fmt(worst));
}

Outcome criterion4(const std::vector<GridCase>& cases) {
  Check c;
  double worst = 0.0;
  auto check_grid = [&](const GridCase& gc, const std::string& label) {
    const auto xhat = exact_mprs_by_pi_enumeration(gc.inst);
    for (const auto& g : grid_and_vertices(gc.omega, 5)) {
      const double gap = min_w(gc.inst, xhat, g, false) - brute_robust(gc.inst, gc.xs, g, false).value;
      worst = std::max(worst, gap);
      if (gap > 1e-6) c.fail(label + " gap " + fmt(gap));
    }
  };
  for (std::size_t i = 0; i < cases.size(); ++i) check_grid(cases[i], "case " + std::to_string(i));
  for (int i = 0; i < 3; ++i) {
    const auto inst = sp_instance(10, 400 + i, 4);
    check_grid({inst, build_omega(inst, OmegaKind::kInterval, {.delta = 0.5}), enumerate_x(inst)},
               "K=4 case " + std::to_string(i));
  }
  std::string toys;
  for (int n = 2; n <= 5; ++n) {
    const auto t = toy_instance(n);
    const auto xhat = exact_mprs_by_pi_enumeration(t.instance);
    for (const auto* omega : {&t.omega1, &t.omega2}) {
      const int s = run_aq(t.instance, *omega).distinct_solutions();
      if (s > static_cast<int>(xhat.size()))
        c.fail("Toy_" + std::to_string(n) + " s=" + std::to_string(s) + " > |X^|=" + std::to_string(xhat.size()));
    }
    toys += (toys.empty() ? "" : ",") + std::to_string(xhat.size());
  }
  return c.outcome("max gap " + fmt(worst) + " over " + std::to_string(cases.size() + 3) +
                   " instances; toy |X^|=" + toys);
}

Outcome criterion5() {
  Check c;
  double sum0 = 0.0, sum1 = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = sp_instance(15, 500 + seed, 3);
    for (double delta : {0.0, 1.0}) {
      AqOptions opt;
      opt.epsilon = 1.0;
      opt.relative_epsilon = true;
      const auto r = run_aq(inst, build_omega(inst, OmegaKind::kInterval, {.delta = delta}), opt);
      if (r.stop_reason != StopReason::kEpsilonMet) c.fail("seed " + std::to_string(seed) + " hit the budget");
      (delta == 0.0 ? sum0 : sum1) += r.distinct_solutions();
    }
  }
  const double m0 = sum0 / 10.0, m1 = sum1 / 10.0;
  if (m0 < m1) c.fail("mean s " + fmt(m0) + " at delta 0 < " + fmt(m1) + " at delta 1");
  return c.outcome("mean s " + fmt(m0) + " (delta 0) >= " + fmt(m1) + " (delta 1)");
}

Outcome criterion6() {
  Check c;
  double max_frac = 0.0, max_diff = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto inst = sp_instance(8 + i % 5, 600 + i, 1 + i % 3);
    const auto omega = build_omega(inst, OmegaKind::kInterval, {.delta = 0.5 * (i % 3)});
    const auto a = run_aq(inst, omega, {.mode = RobustMode::kStandard});
    const auto b = run_aq(inst, omega, {.mode = RobustMode::kTuRelaxed});
    for (const auto& e : b.history)
      for (double v : e.x) max_frac = std::max(max_frac, std::min(std::abs(v), std::abs(1.0 - v)));
    if (a.stop_reason != StopReason::kEpsilonMet || b.stop_reason != StopReason::kEpsilonMet)
      c.fail("instance " + std::to_string(i) + " hit the budget");
    if (std::abs(a.initial_value - b.initial_value) > 1e-6) c.fail("instance " + std::to_string(i) + " start values differ");
    for (const auto& g : grid_and_vertices(omega, 4)) {
      const double d = std::abs(min_w(inst, a.distinct_x, g, false) - min_w(inst, b.distinct_x, g, false));
      max_diff = std::max(max_diff, d);
      if (d > 1e-6) c.fail("instance " + std::to_string(i) + " guarantee differs by " + fmt(d));
    }
  }
  if (max_frac > 1e-6) c.fail("fractional x, deviation " + fmt(max_frac));
  return c.outcome("50 SP, max integrality deviation " + fmt(max_frac) + ", max guarantee difference " +
                   fmt(max_diff));
}

Outcome criterion7() {
  Check c;
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const int q = 1 + static_cast<int>(rng.below(6));
    std::vector<double> u(q), v(q);
    for (int j = 0; j < q; ++j) {
      u[j] = 1.0 + static_cast<double>(rng.below(5));
      v[j] = rng.uniform(0.05, 10.0);
    }
    const double gamma = rng.uniform(0.0, 1.2 * q * 3.0);
    const auto f = [&](double p) { return piecewise_f(gamma, u, v, p); };
    const double top = *std::max_element(v.begin(), v.end()) + 1.0;
    const int steps = 2000;
    const double h = top / steps;
    for (int i = 1; i < steps; ++i) {
      const double second = f((i - 1) * h) - 2.0 * f(i * h) + f((i + 1) * h);
      if (second < -1e-9) c.fail("case " + std::to_string(t) + " not convex");
    }
    const auto bps = piecewise_breakpoints(v);
    for (double b : bps) {
      const double eps = 1e-12;
      if (std::abs(f(b + eps) - f(b)) > 1e-9 || (b > 0 && std::abs(f(b - eps) - f(b)) > 1e-9))
        c.fail("case " + std::to_string(t) + " discontinuous at " + fmt(b));
    }
    const double arg = piecewise_argmin(gamma, u, v);
    if (std::find(bps.begin(), bps.end(), arg) == bps.end()) c.fail("case " + std::to_string(t) + " argmin off breakpoints");
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) grid_min = std::min(grid_min, f(i * h));
    if (f(arg) > grid_min + 1e-9) c.fail("case " + std::to_string(t) + " argmin not minimal");
  }
  return c.outcome("100 random cases");
}

MilpModel random_milp(Rng& rng, int nb, int nc, int m) {
  MilpModel model;
  for (int j = 0; j < nb; ++j) model.add_binary({}, std::round(rng.uniform(-6.0, 6.0)));
  for (int j = 0; j < nc; ++j)
    model.add_continuous(0.0, std::round(rng.uniform(1.0, 3.0)), {}, rng.uniform(-4.0, 4.0));
  for (int i = 0; i < m; ++i) {
    std::vector<LinearTerm> t;
    for (int j = 0; j < nb + nc; ++j) {
      const double v = std::round(rng.uniform(-3.0, 3.0));
      if (v != 0.0) t.push_back({j, v});
    }
    const int r = static_cast<int>(rng.below(3));
    const auto rel = r == 0 ? Relation::kLessEqual : (r == 1 ? Relation::kGreaterEqual : Relation::kEqual);
    const double rhs = rel == Relation::kGreaterEqual ? std::round(rng.uniform(-4.0, 1.0))
                                                      : std::round(rng.uniform(-2.0, 4.0));
    model.add_constraint(t, rel, rhs);
  }
  return model;
}

Outcome criterion8() {
  Check c;
  Rng rng(88);
  int milps = 0, infeasible = 0;
  while (milps < 200) {
    const int nb = 1 + static_cast<int>(rng.below(10));
    const int nc = static_cast<int>(rng.below(5));
    auto model = random_milp(rng, nb, nc, 1 + static_cast<int>(rng.below(5)));
    if (rng.below(4) == 0) model.set_sense(Sense::kMaximize);
    const auto expect = test_support::milp_by_enumeration(model);
    const auto got = solve_milp(model);
    if (!expect) {
      ++infeasible;
      if (got.status != SolveStatus::kInfeasible) c.fail("infeasible MILP reported " + std::string(to_string(got.status)));
      continue;
    }
    ++milps;
    if (!got.optimal() || std::abs(got.objective - *expect) > 1e-6)
      c.fail("MILP " + std::to_string(milps) + ": " + fmt(got.objective) + " vs " + fmt(*expect));
  }
  // min c.x, A x >= b, 0 <= x <= ub  against  max b.y - ub.z, A^T y - z <= c, y, z >= 0.
  int lps = 0;
  while (lps < 200) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int m = 1 + static_cast<int>(rng.below(5));
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m), c_(n), ub(n);
    for (auto& row : a)
      for (auto& v : row) v = rng.uniform(-2.0, 5.0);
    for (auto& v : b) v = rng.uniform(-1.0, 6.0);
    for (auto& v : c_) v = rng.uniform(-3.0, 9.0);
    for (auto& v : ub) v = rng.uniform(1.0, 5.0);
    MilpModel primal;
    for (int j = 0; j < n; ++j) primal.add_continuous(0.0, ub[j], {}, c_[j]);
    for (int i = 0; i < m; ++i) {
      std::vector<LinearTerm> t;
      for (int j = 0; j < n; ++j) t.push_back({j, a[i][j]});
      primal.add_constraint(t, Relation::kGreaterEqual, b[i]);
    }
    MilpModel dual;
    dual.set_sense(Sense::kMaximize);
    for (int i = 0; i < m; ++i) dual.add_continuous(0.0, kInfinity, {}, b[i]);
    for (int j = 0; j < n; ++j) dual.add_continuous(0.0, kInfinity, {}, -ub[j]);
    for (int j = 0; j < n; ++j) {
      std::vector<LinearTerm> t;
      for (int i = 0; i < m; ++i) t.push_back({i, a[i][j]});
      t.push_back({m + j, -1.0});
      dual.add_constraint(t, Relation::kLessEqual, c_[j]);
    }
    const auto p = solve_lp(primal);
    const auto d = solve_lp(dual);
    if (p.status == SolveStatus::kInfeasible) {
      if (d.status != SolveStatus::kUnbounded) c.fail("infeasible primal with dual " + std::string(to_string(d.status)));
      continue;
    }
    ++lps;
    if (!p.optimal() || !d.optimal()) {
      c.fail("LP " + std::to_string(lps) + " not solved");
      continue;
    }
    if (std::abs(p.objective - d.objective) > 1e-6 * std::max(1.0, std::abs(p.objective)))
      c.fail("LP " + std::to_string(lps) + " duality gap " + fmt(p.objective - d.objective));
    if (primal.max_violation(p.values) > 1e-6 || dual.max_violation(d.values) > 1e-6)
      c.fail("LP " + std::to_string(lps) + " returned an infeasible point");
  }
  return c.outcome("200 MILPs (+" + std::to_string(infeasible) + " infeasible) and 200 LP duality pairs");
}

void strip_timing(Json& j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

Outcome criterion9(const std::string& cli) {
  Check c;
  const fs::path dir = fs::temp_directory_path() / "mprs_acceptance_c9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto sh = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const std::string d = dir.string();
  if (sh("generate sp --nodes 11 --seed 5 --scheme d --K 3 -o " + d + "/sp.json") != 0) c.fail("generate sp");
  if (sh("generate plm --l 7 --p 2 --seed 3 --scheme g --K 2 -o " + d + "/plm.json") != 0) c.fail("generate plm");
  if (sh("generate toy --n 4 -o " + d + "/toy.json") != 0) c.fail("generate toy");
  const std::vector<std::pair<std::string, std::string>> configs{
      {"sp_interval", "-i " + d + "/sp.json --omega interval --delta 0.5 --epsilon-rel 1"},
      {"sp_segment_tu", "-i " + d + "/sp.json --omega segment --mode tu_relaxed"},
      {"sp_budgeted", "-i " + d + "/sp.json --omega budgeted --delta 0.5 --general-master"},
      {"plm_interval", "-i " + d + "/plm.json --omega interval --epsilon-rel 1"},
      {"toy_variant", "-i " + d + "/toy.json --omega toy2 --mode variant"},
  };
  int compared = 0;
  for (const auto& [name, args] : configs) {
    std::string text[2];
    for (int k = 0; k < 2; ++k) {
      const std::string out = d + "/" + name + "." + std::to_string(k) + ".json";
      if (sh("run " + args + " -o " + out) != 0) {
        c.fail(name + " run failed");
        continue;
      }
      Json j = read_json_file(out);
      strip_timing(j);
      text[k] = j.dump();
    }
    if (text[0].empty() || text[0] != text[1]) c.fail(name + " results differ");
    ++compared;
  }
  // Parallel batch against the sequential files.
  if (sh("run -i " + d + "/sp.json " + d + "/plm.json --omega interval --epsilon-rel 1 --out-dir " + d +
         "/batch -j 2") != 0) {
    c.fail("batch run failed");
  } else {
    Json a = read_json_file(d + "/batch/sp.result.json");
    strip_timing(a);
    a.erase("config");
    if (sh("run -i " + d + "/sp.json --omega interval --epsilon-rel 1 -o " + d + "/seq.json") != 0) {
      c.fail("sequential run failed");
    } else {
      Json s = read_json_file(d + "/seq.json");
      strip_timing(s);
      s.erase("config");
      if (a.dump() != s.dump()) c.fail("batch result differs from sequential run");
    }
  }
  fs::remove_all(dir);
  return c.outcome(std::to_string(compared) + " configs run twice plus a parallel batch, identical modulo timing");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: mprs_acceptance <path to mprs executable>\n";
    return 2;
  }
  const std::string cli = argv[1];
  bool all = true;
  auto report = [&](int id, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  };
  report(1, criterion1);
  report(2, criterion2);
  std::vector<GridCase> cases;
  report(3, [&] {
    cases = criterion3_cases();
    return criterion3(cases);
  });
  report(4, [&] { return criterion4(cases); });
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, [&] { return criterion9(cli); });
  return all ? 0 : 1;
}
