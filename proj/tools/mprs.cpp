// mprs: generate instances, compute multiparametric robust solution sets,
// evaluate and verify them, and aggregate batch reports.

#include <CLI11.hpp>

#include <iostream>

#include "mprs/cli/commands.hpp"

using namespace mprs;
using namespace mprs::cli;

int main(int argc, char** argv) {
  CLI::App app{"Multiparametric robust solution sets under locally budgeted uncertainty"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a random or toy instance as JSON");
  g->add_option("kind", gen.kind, "sp | plm | toy")->required()->check(CLI::IsMember({"sp", "plm", "toy"}));
  g->add_option("--nodes", gen.nodes, "Shortest path: number of nodes");
  g->add_option("--l", gen.locations, "Medians: number of locations");
  g->add_option("--p", gen.medians, "Medians: number of medians (default l/10)");
  g->add_option("--n", gen.toy_n, "Toy: n (the problem has n+1 variables)");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--scheme", gen.scheme, "Partition scheme r | p | d | lo | g");
  g->add_option("--K", gen.groups, "Number of groups");
  g->add_option("--partition-seed", gen.partition_seed, "Seed of random partition schemes");
  g->add_option("--out,-o", gen.out, "Output file")->required();

  RunArgs run;
  std::optional<double> epsilon_abs, epsilon_rel;
  auto* r = app.add_subcommand("run", "Compute an epsilon-optimal solution set");
  r->add_option("--instance,-i", run.instances, "Instance file(s)")->required();
  r->add_option("--omega", run.omega, "interval | segment | budgeted | toy1 | toy2");
  r->add_option("--omega-file", run.omega_file, "Domain as JSON (overrides --omega)");
  r->add_option("--delta", run.omega_params.delta);
  r->add_option("--alpha-lo", run.omega_params.alpha_lo);
  r->add_option("--alpha-hi", run.omega_params.alpha_hi);
  r->add_option("--beta1", run.omega_params.beta1);
  r->add_option("--beta2", run.omega_params.beta2);
  r->add_option("--segment-scale", run.omega_params.segment_scale,
                "n in Gamma0 = n * max deviation (default 1 for sp, l^2 for plm)");
  auto* ea = r->add_option("--epsilon", epsilon_abs, "Absolute epsilon");
  auto* er = r->add_option("--epsilon-rel", epsilon_rel, "Epsilon as a percentage of v(R(Gamma_init))");
  ea->excludes(er);
  r->add_option("--mode", run.mode, "standard | tu_relaxed | variant")
      ->check(CLI::IsMember({"standard", "tu_relaxed", "variant"}));
  r->add_flag("--general-master", run.general_master, "Embed the domain with Gamma variables");
  r->add_option("--max-iterations", run.max_iterations);
  r->add_option("--time-limit", run.time_limit_seconds, "Seconds");
  r->add_option("--scheme", run.scheme, "Re-partition with r | p | d | lo | g");
  r->add_option("--K", run.groups);
  r->add_option("--partition-seed", run.partition_seed);
  r->add_option("--out,-o", run.out, "Result file (single instance)");
  r->add_option("--out-dir", run.out_dir, "Result directory (batch)");
  r->add_option("--trace", run.trace, "Per-iteration JSON lines (single instance)");
  r->add_option("--mps-export", run.mps_export, "Directory for MPS copies of R(Gamma_init) and the last master problem");
  r->add_option("--jobs,-j", run.jobs, "Parallel runs in batch mode");
  r->add_option("--backend", run.backend, "Solver backend (default $MPRS_SOLVER_BACKEND or bundled)");

  EvaluateArgs ev;
  std::vector<double> gamma, cost;
  auto* e = app.add_subcommand("evaluate", "Pick the best stored solution for a scenario");
  e->add_option("result", ev.result)->required();
  auto* eg = e->add_option("--gamma", gamma, "Budget vector")->delimiter(',');
  auto* ec = e->add_option("--cost", cost, "Cost vector")->delimiter(',');
  eg->excludes(ec);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check the epsilon guarantee on sampled budgets");
  v->add_option("result", ver.result)->required();
  v->add_option("--grid", ver.grid, "Grid points per dimension");
  v->add_option("--uniform", ver.uniform, "Uniform samples");
  v->add_option("--seed", ver.seed);

  ReportArgs rep;
  auto* p = app.add_subcommand("report", "Aggregate batch directories into CSV");
  p->add_option("batch", rep.batches)->required();
  p->add_option("--out,-o", rep.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, std::cout);
    if (r->parsed()) {
      if (epsilon_rel) {
        run.epsilon = *epsilon_rel;
        run.relative_epsilon = true;
      } else if (epsilon_abs) {
        run.epsilon = *epsilon_abs;
      }
      return cmd_run(run, std::cout);
    }
    if (e->parsed()) {
      if (!gamma.empty()) ev.gamma = gamma;
      if (!cost.empty()) ev.cost = cost;
      return cmd_evaluate(ev, std::cout);
    }
    if (v->parsed()) return cmd_verify(ver, std::cout);
    if (p->parsed()) return cmd_report(rep, std::cout);
  } catch (const ModelError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kBadInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kFailure;
  }
  return kBadInput;
}
