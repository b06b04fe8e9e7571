#include "mprs/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "mprs/core/mps_writer.hpp"
#include "mprs/oracle/oracle.hpp"
#include "mprs/uncertainty/robustness.hpp"

namespace mprs::cli {
namespace fs = std::filesystem;

std::string one_decimal(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  const double r = std::round(v * 10.0) / 10.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", r == 0.0 ? 0.0 : r);
  return buf;
}

namespace {

Instance load_instance(const fs::path& path) { return instance_from_json(read_json_file(path)); }

OmegaSpec make_omega(const Instance& inst, const RunArgs& args) {
  if (args.omega_file) return omega_from_json(read_json_file(*args.omega_file));
  if (args.omega == "toy1" || args.omega == "toy2") {
    if (inst.metadata.kind != InstanceKind::kToy) throw ModelError("toy domains need a toy instance");
    auto toy = toy_instance(inst.metadata.toy_n);
    return args.omega == "toy1" ? toy.omega1 : toy.omega2;
  }
  return build_omega(inst, omega_kind_from_string(args.omega), args.omega_params);
}

Json config_json(const RunArgs& args, const fs::path& instance) {
  Json c;
  c["instance"] = instance.filename().string();
  c["omega"] = args.omega_file ? "file" : args.omega;
  c["delta"] = args.omega_params.delta;
  c["alpha_lo"] = args.omega_params.alpha_lo;
  c["alpha_hi"] = args.omega_params.alpha_hi;
  c["beta1"] = args.omega_params.beta1;
  c["beta2"] = args.omega_params.beta2;
  c["segment_scale"] =
      args.omega_params.segment_scale ? Json(*args.omega_params.segment_scale) : Json(nullptr);
  c["epsilon"] = args.epsilon;
  c["epsilon_mode"] = args.relative_epsilon ? "relative" : "absolute";
  c["mode"] = args.mode;
  c["master"] = args.general_master ? "general" : "specialized";
  c["max_iterations"] = args.max_iterations;
  c["scheme"] = args.scheme ? Json(*args.scheme) : Json(nullptr);
  c["groups"] = args.groups;
  c["backend"] = args.backend.empty() ? default_backend_id() : args.backend;
  return c;
}

struct RunOutcome {
  int code = kOk;
  std::string summary;
};

RunOutcome run_one(const RunArgs& args, const fs::path& instance_path, const fs::path& out_path,
                   const std::optional<fs::path>& trace_path) {
  Instance inst = load_instance(instance_path);
  if (args.scheme) {
    const auto seed = args.partition_seed.value_or(inst.metadata.seed.value_or(1));
    inst = with_partition(inst, {partition_kind_from_string(*args.scheme), args.groups}, seed);
  }
  const OmegaSpec omega = make_omega(inst, args);
  AqOptions opt;
  opt.epsilon = args.epsilon;
  opt.relative_epsilon = args.relative_epsilon;
  opt.mode = robust_mode_from_string(args.mode);
  opt.general_master = args.general_master;
  opt.budget.max_iterations = args.max_iterations;
  opt.budget.time_limit_seconds = args.time_limit_seconds;
  opt.solver.backend = args.backend.empty() ? default_backend_id() : args.backend;
  make_solver(opt.solver.backend);

  std::ofstream trace;
  if (trace_path) {
    if (trace_path->has_parent_path()) fs::create_directories(trace_path->parent_path());
    trace.open(*trace_path, std::ios::binary);
    if (!trace) throw std::runtime_error("cannot write " + trace_path->string());
    opt.trace = [&](const TraceRecord& rec) { trace << trace_to_json(rec).dump() << '\n' << std::flush; };
  }

  const MprsResult result = run_aq(inst, omega, opt);

  Json doc;
  doc["config"] = config_json(args, instance_path);
  doc["instance"] = instance_to_json(inst);
  doc["omega"] = omega_to_json(omega);
  doc["result"] = result_to_json(result);
  Json report;
  report["r"] = result.iterations();
  report["s"] = result.distinct_solutions();
  const double first = result.q_values.empty() ? 0.0 : result.q_values.front();
  report["eps_bar"] = result.initial_value == 0.0 ? Json(nullptr)
                                                  : Json(100.0 * first / result.initial_value);
  doc["report"] = std::move(report);
  doc["timing"] = {{"t", result.elapsed_seconds}};
  write_text_file(out_path, dump(doc));

  if (args.mps_export) {
    fs::create_directories(*args.mps_export);
    const std::string stem = instance_path.stem().string();
    {
      auto rm = opt.mode == RobustMode::kVariant
                    ? build_robust_variant_milp(inst, omega.initial_gamma())
                    : build_robust_milp(inst, omega.initial_gamma());
      std::ofstream f(*args.mps_export / (stem + ".r_init.mps"));
      write_mps(f, rm.model, "RINIT");
    }
    {
      const auto q = build_q(inst, omega, result.history, opt.mode == RobustMode::kTuRelaxed,
                             opt.general_master);
      std::ofstream f(*args.mps_export / (stem + ".q_final.mps"));
      write_mps(f, q.model, "QFINAL");
    }
  }

  std::ostringstream line;
  line << instance_path.filename().string() << ": r=" << result.iterations()
       << " s=" << result.distinct_solutions() << " stop=" << to_string(result.stop_reason)
       << " v(R(Gamma_init))=" << result.initial_value << " epsilon=" << result.epsilon_used;
  return {result.stop_reason == StopReason::kBudgetExceeded ? kBudgetExceeded : kOk, line.str()};
}

}  // namespace

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  Instance inst;
  if (args.kind == "sp") {
    inst = gen_sp({args.nodes, args.seed});
  } else if (args.kind == "plm") {
    inst = gen_plm({args.locations, args.medians, args.seed});
  } else if (args.kind == "toy") {
    inst = toy_instance(args.toy_n).instance;
  } else {
    throw ModelError("unknown instance family '" + args.kind + "'");
  }
  if (args.scheme) {
    const auto seed = args.partition_seed.value_or(inst.metadata.seed.value_or(1));
    inst = with_partition(inst, {partition_kind_from_string(*args.scheme), args.groups}, seed);
  }
  write_text_file(args.out, dump(instance_to_json(inst)));
  out << "wrote " << args.out.string() << ": " << to_string(inst.metadata.kind) << " n=" << inst.n
      << " K=" << inst.num_groups() << '\n';
  return kOk;
}

int cmd_run(const RunArgs& args, std::ostream& out) {
  if (args.instances.empty()) throw ModelError("no instance given");
  if (args.jobs < 1) throw ModelError("--jobs must be >= 1");
  if (args.instances.size() == 1 && args.out) {
    const auto r = run_one(args, args.instances.front(), *args.out, args.trace);
    out << r.summary << '\n';
    return r.code;
  }
  if (!args.out_dir) {
    throw ModelError(args.instances.size() == 1 ? "--out or --out-dir required" : "several instances need --out-dir");
  }
  fs::create_directories(*args.out_dir);
  std::vector<RunOutcome> outcomes(args.instances.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < args.instances.size(); i = next++) {
      try {
        const auto stem = args.instances[i].stem().string();
        outcomes[i] = run_one(args, args.instances[i], *args.out_dir / (stem + ".result.json"),
                              *args.out_dir / (stem + ".trace.jsonl"));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::min<int>(args.jobs, static_cast<int>(args.instances.size()));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  int code = kOk;
  for (const auto& r : outcomes) {
    out << r.summary << '\n';
    code = std::max(code, r.code);
  }
  return code;
}

RunDocument load_run_document(const fs::path& path) {
  const Json j = read_json_file(path);
  for (const char* key : {"instance", "omega", "result"}) {
    if (!j.contains(key)) throw ModelError(path.string() + " lacks '" + key + "'");
  }
  return RunDocument{instance_from_json(j.at("instance")), omega_from_json(j.at("omega")),
                     result_from_json(j.at("result"))};
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const auto doc = load_run_document(args.result);
  if (args.gamma.has_value() == args.cost.has_value()) {
    throw ModelError("give exactly one of --gamma and --cost");
  }
  Scenario scenario = args.gamma ? Scenario(GammaVector(*args.gamma))
                                 : Scenario(CostScenario{*args.cost});
  if (args.gamma && static_cast<int>(args.gamma->size()) != doc.instance.num_groups()) {
    throw ModelError("gamma dimension differs from K");
  }
  const auto pick = pick_best(doc.instance, doc.result, scenario);
  Json j;
  j["index"] = pick.index;
  j["value"] = pick.value;
  j["x"] = doc.result.history[pick.index].x;
  out << j.dump() << '\n';
  return kOk;
}

VerifyReport verify_document(const RunDocument& doc, const VerifyArgs& args) {
  const auto& inst = doc.instance;
  const bool variant = doc.result.mode == RobustMode::kVariant;
  VerifyReport rep;
  if (doc.result.history.empty()) {
    rep.passed = false;
    rep.message = "result holds no solutions";
    return rep;
  }
  for (std::size_t i = 0; i < doc.result.history.size(); ++i) {
    const auto& x = doc.result.history[i].x;
    if (static_cast<int>(x.size()) != inst.n || !in_feasible_set(inst, x)) {
      rep.passed = false;
      rep.message = "stored solution " + std::to_string(i) + " is not in X";
      return rep;
    }
  }

  std::vector<GammaVector> points;
  auto append = [&](const SampleMode& mode) {
    auto s = sample_gamma(doc.omega, mode);
    points.insert(points.end(), s.begin(), s.end());
  };
  append(GridSample{args.grid});
  if (doc.omega.kind() != OmegaKind::kSegment && doc.omega.dim() <= 12) append(VertexSample{});
  if (args.uniform > 0) append(UniformSample{args.seed, args.uniform});

  std::optional<std::vector<std::vector<double>>> xs;
  try {
    xs = enumerate_x(inst, EnumerationLimits{12, 20, 200'000});
  } catch (const ModelError&) {
    xs.reset();
  }

  const double tol = doc.result.epsilon_used + 1e-6;
  for (const auto& g : points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : doc.result.history) {
      best = std::min(best, variant ? robustness_value_variant(inst, e.x, g)
                                    : robustness_value(inst, e.x, g));
    }
    const double ref =
        xs ? brute_robust(inst, *xs, g, variant).value
           : solve_robust(inst, g, variant ? RobustMode::kVariant : RobustMode::kStandard).value;
    const double gap = best - ref;
    ++rep.samples;
    if (gap > rep.max_gap || rep.samples == 1) {
      rep.max_gap = gap;
      rep.witness = g;
    }
    if (ref > 0.0) rep.max_relative_gap = std::max(rep.max_relative_gap, gap / ref);
  }
  rep.passed = rep.max_gap <= tol;
  if (!rep.passed) rep.message = "gap exceeds epsilon";
  return rep;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto doc = load_run_document(args.result);
  const auto rep = verify_document(doc, args);
  Json j;
  j["passed"] = rep.passed;
  j["samples"] = rep.samples;
  j["epsilon"] = doc.result.epsilon_used;
  j["max_gap"] = rep.max_gap;
  j["max_relative_gap"] = rep.max_relative_gap;
  if (!rep.witness.values.empty()) j["witness_gamma"] = rep.witness.values;
  if (!rep.message.empty()) j["message"] = rep.message;
  out << j.dump() << '\n';
  return rep.passed ? kOk : kVerificationFailed;
}

int cmd_report(const ReportArgs& args, std::ostream& out) {
  if (args.batches.empty()) throw ModelError("no batch directory given");
  std::ostringstream csv;
  csv << "batch,runs,t_bar,t_hat,s_min,s_bar,s_hat,eps_bar\n";
  for (const auto& dir : args.batches) {
    if (!fs::is_directory(dir)) throw ModelError(dir.string() + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<double> t, s, eps;
    for (const auto& f : files) {
      const Json j = read_json_file(f);
      if (!j.contains("report")) continue;
      t.push_back(j.contains("timing") ? j.at("timing").value("t", 0.0) : 0.0);
      s.push_back(j.at("report").at("s").get<double>());
      const auto& e = j.at("report").at("eps_bar");
      eps.push_back(e.is_null() ? std::numeric_limits<double>::infinity() : e.get<double>());
    }
    if (s.empty()) throw ModelError(dir.string() + " holds no run results");
    auto mean = [](const std::vector<double>& v) {
      double sum = 0.0;
      for (double x : v) sum += x;
      return sum / static_cast<double>(v.size());
    };
    csv << dir.filename().string() << ',' << s.size() << ',' << one_decimal(mean(t)) << ','
        << one_decimal(*std::max_element(t.begin(), t.end())) << ','
        << static_cast<long>(*std::min_element(s.begin(), s.end())) << ',' << one_decimal(mean(s))
        << ',' << static_cast<long>(*std::max_element(s.begin(), s.end())) << ','
        << one_decimal(mean(eps)) << '\n';
  }
  if (args.out) {
    write_text_file(*args.out, csv.str());
  } else {
    out << csv.str();
  }
  return kOk;
}

}  // namespace mprs::cli
