//
// Copyright 2026 The mvgdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// mvgdp command-line tool. Links only the C interface.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvgdp/mvgdp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitContract = 3;
constexpr int kExitInternal = 4;

int ExitCode(mvg_status status) {
  switch (status) {
    case MVG_OK:
      return kExitOk;
    case MVG_ERR_CONTRACT:
      return kExitContract;
    case MVG_ERR_INTERNAL:
    case MVG_ERR_NO_MEMORY:
      return kExitInternal;
    default:
      return kExitConfig;
  }
}

// Thrown to unwind out of a command with a library status.
struct Failure {
  mvg_status status;
  std::string message;
};

void Check(mvg_status status) {
  if (status != MVG_OK) throw Failure{status, mvg_last_error()};
}

[[noreturn]] void Usage(const std::string& message) {
  throw Failure{MVG_ERR_CONFIG, message};
}

std::string Shortest(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

// RAII holders for the C handles.
template <typename T, void (*Destroy)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Matrix = Handle<mvg_matrix, mvg_matrix_destroy>;
using Rng = Handle<mvg_rng, mvg_rng_destroy>;
using Design = Handle<mvg_design, mvg_design_destroy>;
using Reports = Handle<mvg_report_set, mvg_report_set_destroy>;

void Identity(std::size_t size, Matrix& out) {
  Check(mvg_matrix_create(size, size, out.out()));
  for (std::size_t i = 0; i < size; ++i) {
    Check(mvg_matrix_set(out.get(), i, i, 1.0));
  }
}

std::string JoinIndices(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices[i]);
  }
  return out;
}

struct BudgetArgs {
  double epsilon = 1.0;
  double delta = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  double gamma = 0.0;
  double sensitivity = 0.0;
  std::string mode = "unimodal";
};

int RunBudget(const BudgetArgs& args) {
  const mvg_query query{args.m, args.n, args.sensitivity, args.gamma};
  const mvg_privacy privacy{args.epsilon, args.delta};
  const mvg_budget_mode mode =
      args.mode == "equimodal" ? MVG_MODE_EQUIMODAL : MVG_MODE_UNIMODAL;
  mvg_budget budget{};
  Check(mvg_compute_budget(&query, &privacy, mode, &budget));
  std::cout << "mode=" << args.mode << "\n"
            << "alpha=" << Shortest(budget.alpha) << "\n"
            << "beta=" << Shortest(budget.beta) << "\n"
            << "zeta=" << Shortest(budget.zeta) << "\n"
            << "h_r=" << Shortest(budget.h_r) << "\n"
            << "h_r_half=" << Shortest(budget.h_r_half) << "\n"
            << "phi_max=" << Shortest(budget.phi_max) << "\n"
            << "precision_budget=" << Shortest(budget.precision_budget)
            << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string sigma;
  std::string psi;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string out;
};

int RunSample(const SampleArgs& args) {
  Matrix sigma;
  Matrix psi;
  if (args.sigma.empty()) {
    Identity(args.m, sigma);
  } else {
    Check(mvg_matrix_load_csv_raw(args.sigma.c_str(), sigma.out()));
  }
  if (args.psi.empty()) {
    Identity(args.n, psi);
  } else {
    Check(mvg_matrix_load_csv_raw(args.psi.c_str(), psi.out()));
  }
  if (mvg_matrix_rows(sigma.get()) != args.m ||
      mvg_matrix_rows(psi.get()) != args.n) {
    Usage("--m/--n do not match the row covariance (" +
          std::to_string(mvg_matrix_rows(sigma.get())) +
          ") and column covariance (" +
          std::to_string(mvg_matrix_rows(psi.get())) + ") sizes");
  }
  Design design;
  Check(mvg_design_from_covariances(sigma.get(), psi.get(), design.out()));
  Rng rng;
  Check(mvg_rng_create(args.seed, rng.out()));
  Matrix batch;
  Check(mvg_sample_batch(design.get(), rng.get(), args.count, batch.out()));
  Check(mvg_matrix_save_csv(batch.get(), args.out.c_str()));
  return kExitOk;
}

struct PerturbArgs {
  std::string input;
  bool header = true;
  std::string query = "identity";
  std::string mode;
  double epsilon = 1.0;
  std::optional<double> delta;
  double lo = 0.0;
  double hi = 1.0;
  std::string theta = "uniform";
  std::string directions = "standard";
  std::uint64_t seed = 0;
  std::string out;
};

int RunPerturb(const PerturbArgs& args) {
  Matrix data;
  Check(mvg_matrix_load_csv(args.input.c_str(), args.header ? 1 : 0,
                            data.out()));
  mvg_perturb_config config;
  mvg_perturb_config_init(&config);
  const bool identity = args.query == "identity";
  config.query = identity ? MVG_QUERY_IDENTITY : MVG_QUERY_COVARIANCE;
  if (!args.mode.empty()) {
    config.use_default_mode = 0;
    config.mode =
        args.mode == "equimodal" ? MVG_MODE_EQUIMODAL : MVG_MODE_UNIMODAL;
  }
  config.epsilon = args.epsilon;
  config.has_delta = args.delta.has_value() ? 1 : 0;
  config.delta = args.delta.value_or(0.0);
  config.lo = args.lo;
  config.hi = args.hi;
  config.theta = args.theta.c_str();
  config.directions = args.directions.c_str();
  config.seed = args.seed;
  Matrix released;
  Check(mvg_perturb(data.get(), &config, released.out(), nullptr));
  if (identity) {
    // Back to records as rows.
    Matrix records;
    Check(mvg_matrix_transpose(released.get(), records.out()));
    Check(mvg_matrix_save_csv(records.get(), args.out.c_str()));
  } else {
    Check(mvg_matrix_save_csv(released.get(), args.out.c_str()));
  }
  return kExitOk;
}

struct BenchArgs {
  std::string experiment = "firstpc";
  std::string input;
  bool header = true;
  std::string mechanism = "mvg-uni";
  std::size_t trials = 100;
  double epsilon = 1.0;
  std::optional<double> delta;
  double lo = 0.0;
  double hi = 1.0;
  double tau = 0.9;
  std::vector<std::size_t> favored;
  std::string theta;
  std::vector<std::string> sweep;
  std::string ablation_base = "firstpc";
  std::string directions = "standard";
  double ridge = 1e-2;
  double train_fraction = 0.72;
  std::uint64_t seed = 0;
  std::string format = "text";
};

mvg_experiment ParseExperiment(const std::string& name) {
  if (name == "regression") return MVG_EXPERIMENT_REGRESSION;
  if (name == "firstpc") return MVG_EXPERIMENT_FIRST_PC;
  if (name == "covest") return MVG_EXPERIMENT_COVARIANCE;
  return MVG_EXPERIMENT_ABLATION;
}

mvg_mechanism ParseMechanism(const std::string& name) {
  if (name == "mvg-uni") return MVG_MECHANISM_MVG_UNIMODAL;
  if (name == "mvg-equi") return MVG_MECHANISM_MVG_EQUIMODAL;
  if (name == "gauss") return MVG_MECHANISM_GAUSSIAN;
  if (name == "laplace") return MVG_MECHANISM_LAPLACE;
  return MVG_MECHANISM_NONE;
}

int RunBench(const BenchArgs& args) {
  if (!args.favored.empty() && !args.theta.empty()) {
    Usage("--favored and --theta are mutually exclusive");
  }
  std::string theta = args.theta.empty() ? "uniform" : args.theta;
  if (!args.favored.empty()) {
    theta = "binary:" + Shortest(args.tau) + ":" + JoinIndices(args.favored);
  }
  mvg_bench_config config;
  mvg_bench_config_init(&config);
  config.experiment = ParseExperiment(args.experiment);
  config.input = args.input.c_str();
  config.has_header = args.header ? 1 : 0;
  config.lo = args.lo;
  config.hi = args.hi;
  config.epsilon = args.epsilon;
  config.has_delta = args.delta.has_value() ? 1 : 0;
  config.delta = args.delta.value_or(0.0);
  config.mechanism = ParseMechanism(args.mechanism);
  config.theta = theta.c_str();
  config.directions = args.directions.c_str();
  config.trials = args.trials;
  config.seed = args.seed;
  config.ridge = args.ridge;
  config.train_fraction = args.train_fraction;
  config.ablation_base = ParseExperiment(args.ablation_base);
  std::vector<const char*> sweep;
  for (const std::string& spec : args.sweep) sweep.push_back(spec.c_str());
  config.ablation_thetas = sweep.data();
  config.ablation_count = sweep.size();

  Reports reports;
  Check(mvg_bench_run(&config, reports.out()));
  const char* text = nullptr;
  Check(mvg_report_set_format(
      reports.get(), args.format == "csv" ? MVG_REPORT_CSV : MVG_REPORT_TEXT,
      &text));
  std::cout << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-variate Gaussian differential privacy toolkit", "mvgdp"};
  app.set_version_flag("--version", std::string(mvg_version()));
  app.set_config("--config", "", "TOML or INI file of flag values; flags win");
  app.require_subcommand(1);
  app.fallthrough();  // lets --config follow the subcommand

  BudgetArgs budget;
  CLI::App* budget_cmd =
      app.add_subcommand("budget", "Privacy budget quantities for a query");
  budget_cmd->add_option("--epsilon", budget.epsilon)->required();
  budget_cmd->add_option("--delta", budget.delta)->required();
  budget_cmd->add_option("--m", budget.m, "Query rows")->required();
  budget_cmd->add_option("--n", budget.n, "Query columns")->required();
  budget_cmd->add_option("--gamma", budget.gamma, "Bound on ||f(X)||_F")
      ->required();
  budget_cmd->add_option("--sensitivity", budget.sensitivity, "L2 sensitivity")
      ->required();
  budget_cmd->add_option("--mode", budget.mode)
      ->check(CLI::IsMember({"unimodal", "equimodal"}));

  SampleArgs sample;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw matrix-variate Gaussian samples");
  sample_cmd->add_option("--m", sample.m)->required();
  sample_cmd->add_option("--n", sample.n)->required();
  sample_cmd->add_option("--sigma", sample.sigma,
                         "Row covariance CSV (default identity)");
  sample_cmd->add_option("--psi", sample.psi,
                         "Column covariance CSV (default identity)");
  sample_cmd->add_option("--seed", sample.seed);
  sample_cmd->add_option("--count", sample.count)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--out", sample.out)->required();

  PerturbArgs perturb;
  CLI::App* perturb_cmd =
      app.add_subcommand("perturb", "Release a data set or its covariance");
  perturb_cmd->add_option("--input", perturb.input)->required();
  perturb_cmd->add_option("--header", perturb.header,
                          "Input has a header row (default true)");
  perturb_cmd->add_option("--query", perturb.query)
      ->check(CLI::IsMember({"identity", "covariance"}));
  perturb_cmd->add_option("--mode", perturb.mode)
      ->check(CLI::IsMember({"unimodal", "equimodal"}));
  perturb_cmd->add_option("--epsilon", perturb.epsilon);
  perturb_cmd->add_option("--delta", perturb.delta, "Default 1/records");
  perturb_cmd->add_option("--lo", perturb.lo);
  perturb_cmd->add_option("--hi", perturb.hi);
  perturb_cmd->add_option("--theta", perturb.theta);
  perturb_cmd->add_option("--directions", perturb.directions);
  perturb_cmd->add_option("--seed", perturb.seed);
  perturb_cmd->add_option("--out", perturb.out)->required();

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Repeated-trial utility benchmark");
  const auto experiments =
      CLI::IsMember({"regression", "firstpc", "covest", "ablation"});
  bench_cmd->add_option("--experiment", bench.experiment)->check(experiments);
  bench_cmd->add_option("--input", bench.input)->required();
  bench_cmd->add_option("--header", bench.header);
  bench_cmd->add_option("--mechanism", bench.mechanism)
      ->check(CLI::IsMember({"mvg-uni", "mvg-equi", "gauss", "laplace", "none"}));
  bench_cmd->add_option("--trials", bench.trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--epsilon", bench.epsilon);
  bench_cmd->add_option("--delta", bench.delta, "Default 1/records");
  bench_cmd->add_option("--lo", bench.lo);
  bench_cmd->add_option("--hi", bench.hi);
  bench_cmd->add_option("--tau", bench.tau, "Share for --favored directions");
  bench_cmd->add_option("--favored", bench.favored)->delimiter(',');
  bench_cmd->add_option("--theta", bench.theta, "Allocation spec");
  bench_cmd->add_option("--sweep", bench.sweep,
                        "Allocation specs compared by the ablation");
  bench_cmd->add_option("--ablation-base", bench.ablation_base)
      ->check(CLI::IsMember({"regression", "firstpc"}));
  bench_cmd->add_option("--directions", bench.directions);
  bench_cmd->add_option("--ridge", bench.ridge);
  bench_cmd->add_option("--train-fraction", bench.train_fraction);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--format", bench.format)
      ->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*budget_cmd) return RunBudget(budget);
    if (*sample_cmd) return RunSample(sample);
    if (*perturb_cmd) return RunPerturb(perturb);
    return RunBench(bench);
  } catch (const Failure& f) {
    std::cerr << "mvgdp: " << mvg_status_name(f.status) << ": " << f.message
              << "\n";
    return ExitCode(f.status);
  }
}
