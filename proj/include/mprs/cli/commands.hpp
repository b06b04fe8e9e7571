#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mprs/engine/aq.hpp"
#include "mprs/generators/generators.hpp"
#include "mprs/io/json_io.hpp"

namespace mprs::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBudgetExceeded = 2,
  kVerificationFailed = 3,
  kBadInput = 4,
};

struct GenerateArgs {
  std::string kind;  // sp | plm | toy
  int nodes = 10;
  int locations = 10;
  int medians = 0;
  int toy_n = 2;
  std::uint64_t seed = 1;
  std::optional<std::string> scheme;
  int groups = 1;
  std::optional<std::uint64_t> partition_seed;
  std::filesystem::path out;
};

struct RunArgs {
  std::vector<std::filesystem::path> instances;
  // interval | segment | budgeted | toy1 | toy2; ignored with omega_file.
  std::string omega = "interval";
  std::optional<std::filesystem::path> omega_file;
  OmegaParams omega_params;
  double epsilon = 0.0;
  bool relative_epsilon = false;
  std::string mode = "standard";
  bool general_master = false;
  int max_iterations = 500;
  double time_limit_seconds = 3600.0;
  std::optional<std::string> scheme;
  int groups = 1;
  std::optional<std::uint64_t> partition_seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> mps_export;
  int jobs = 1;
  std::string backend;
};

struct EvaluateArgs {
  std::filesystem::path result;
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<double>> cost;
};

struct VerifyArgs {
  std::filesystem::path result;
  int grid = 5;
  int uniform = 100;
  std::uint64_t seed = 1;
};

struct ReportArgs {
  std::vector<std::filesystem::path> batches;
  std::optional<std::filesystem::path> out;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out);
int cmd_run(const RunArgs& args, std::ostream& out);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_report(const ReportArgs& args, std::ostream& out);

// Result document written by `run`: {config, instance, omega, result, report}.
struct RunDocument {
  Instance instance;
  OmegaSpec omega;
  MprsResult result;
};
RunDocument load_run_document(const std::filesystem::path& path);

struct VerifyReport {
  bool passed = true;
  double max_gap = 0.0;
  double max_relative_gap = 0.0;
  GammaVector witness;
  int samples = 0;
  std::string message;
};

// min_i W(x^i, Gamma) - v(R(Gamma)) over sampled Gamma, with v(R(Gamma))
// from enumeration when X is small enough and from the solver otherwise.
// Never reads the stored master-problem values.
VerifyReport verify_document(const RunDocument& doc, const VerifyArgs& args);

// One decimal, halves away from zero.
std::string one_decimal(double v);

}  // namespace mprs::cli
