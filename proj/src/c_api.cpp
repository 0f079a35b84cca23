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

#include "mvgdp/mvgdp.h"

#include <Eigen/Dense>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core_math.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "noise_design.hpp"
#include "sampler.hpp"

struct mvg_matrix {
  Eigen::MatrixXd value;
};

struct mvg_rng {
  explicit mvg_rng(uint64_t seed) : stream(seed) {}
  mvgdp::RandomStream stream;
};

struct mvg_design {
  mvgdp::NoiseDesign design;
  mvgdp::DesignFactors factors;
};

struct mvg_report_set {
  std::vector<mvgdp::EvalReport> reports;
  std::string text;
};

namespace {

thread_local std::string last_error;

mvg_status ToStatus(mvgdp::ErrorCode code) {
  switch (code) {
    case mvgdp::ErrorCode::kDomain:
      return MVG_ERR_DOMAIN;
    case mvgdp::ErrorCode::kShape:
      return MVG_ERR_SHAPE;
    case mvgdp::ErrorCode::kDegenerate:
      return MVG_ERR_DEGENERATE;
    case mvgdp::ErrorCode::kAllocation:
      return MVG_ERR_ALLOCATION;
    case mvgdp::ErrorCode::kFormat:
      return MVG_ERR_FORMAT;
    case mvgdp::ErrorCode::kConfig:
      return MVG_ERR_CONFIG;
    case mvgdp::ErrorCode::kIo:
      return MVG_ERR_IO;
    case mvgdp::ErrorCode::kContract:
      return MVG_ERR_CONTRACT;
    case mvgdp::ErrorCode::kInternal:
      return MVG_ERR_INTERNAL;
  }
  return MVG_ERR_INTERNAL;
}

mvg_status Report(mvg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
mvg_status Guard(Body&& body) {
  try {
    body();
    return MVG_OK;
  } catch (const mvgdp::Error& e) {
    return Report(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Report(MVG_ERR_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return Report(MVG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Report(MVG_ERR_INTERNAL, "unknown failure");
  }
}

mvg_status NullArgument(const char* name) {
  return Report(MVG_ERR_INVALID_ARGUMENT,
                std::string("argument '") + name + "' must not be null");
}

#define MVG_REQUIRE(arg) \
  if ((arg) == nullptr) return NullArgument(#arg)

mvgdp::QuerySpec ToQuery(const mvg_query& q) {
  return mvgdp::QuerySpec(q.m, q.n, q.sensitivity, q.gamma,
                          mvgdp::QueryKind::kCustom);
}

mvgdp::PrivacyParams ToPrivacy(const mvg_privacy& p) {
  return mvgdp::PrivacyParams(p.epsilon, p.delta);
}

void ToBudget(const mvgdp::BudgetReport& in, mvg_budget* out) {
  out->h_r = in.h_r;
  out->h_r_half = in.h_r_half;
  out->zeta = in.zeta;
  out->alpha = in.alpha;
  out->beta = in.beta;
  out->phi_max = in.phi_max;
  out->precision_budget = in.precision_budget;
}

bool ValidMode(mvg_budget_mode mode) {
  return mode == MVG_MODE_UNIMODAL || mode == MVG_MODE_EQUIMODAL;
}

mvgdp::BudgetMode ToMode(mvg_budget_mode mode) {
  return mode == MVG_MODE_UNIMODAL ? mvgdp::BudgetMode::kUnimodal
                                   : mvgdp::BudgetMode::kEquiModal;
}

std::optional<mvgdp::Experiment> ToExperiment(mvg_experiment e) {
  switch (e) {
    case MVG_EXPERIMENT_REGRESSION:
      return mvgdp::Experiment::kRegression;
    case MVG_EXPERIMENT_FIRST_PC:
      return mvgdp::Experiment::kFirstPc;
    case MVG_EXPERIMENT_COVARIANCE:
      return mvgdp::Experiment::kCovarianceEstimation;
    case MVG_EXPERIMENT_ABLATION:
      return mvgdp::Experiment::kDirectionAblation;
  }
  return std::nullopt;
}

std::optional<mvgdp::Mechanism> ToMechanism(mvg_mechanism m) {
  switch (m) {
    case MVG_MECHANISM_MVG_UNIMODAL:
      return mvgdp::Mechanism::kMvgUnimodal;
    case MVG_MECHANISM_MVG_EQUIMODAL:
      return mvgdp::Mechanism::kMvgEquiModal;
    case MVG_MECHANISM_GAUSSIAN:
      return mvgdp::Mechanism::kGaussianIid;
    case MVG_MECHANISM_LAPLACE:
      return mvgdp::Mechanism::kLaplaceIid;
    case MVG_MECHANISM_NONE:
      return mvgdp::Mechanism::kNonPrivate;
  }
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* mvg_version(void) { return "0.1.0"; }

const char* mvg_status_name(mvg_status status) {
  switch (status) {
    case MVG_OK:
      return "ok";
    case MVG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MVG_ERR_DOMAIN:
      return "domain error";
    case MVG_ERR_SHAPE:
      return "shape error";
    case MVG_ERR_DEGENERATE:
      return "degenerate design";
    case MVG_ERR_ALLOCATION:
      return "invalid allocation";
    case MVG_ERR_FORMAT:
      return "format error";
    case MVG_ERR_CONFIG:
      return "configuration error";
    case MVG_ERR_IO:
      return "i/o error";
    case MVG_ERR_CONTRACT:
      return "contract violation";
    case MVG_ERR_INTERNAL:
      return "internal error";
    case MVG_ERR_NO_MEMORY:
      return "out of memory";
  }
  return "unknown status";
}

const char* mvg_last_error(void) { return last_error.c_str(); }

mvg_status mvg_matrix_create(size_t rows, size_t cols, mvg_matrix** out) {
  MVG_REQUIRE(out);
  return Guard([&] {
    *out = new mvg_matrix{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                                static_cast<Eigen::Index>(cols))};
  });
}

mvg_status mvg_matrix_from_row_major(size_t rows, size_t cols,
                                     const double* values, mvg_matrix** out) {
  MVG_REQUIRE(out);
  if (rows * cols > 0) MVG_REQUIRE(values);
  return Guard([&] {
    auto m = std::make_unique<mvg_matrix>();
    m->value.resize(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        m->value(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            values[i * cols + j];
      }
    }
    *out = m.release();
  });
}

size_t mvg_matrix_rows(const mvg_matrix* matrix) {
  return matrix == nullptr ? 0 : static_cast<size_t>(matrix->value.rows());
}

size_t mvg_matrix_cols(const mvg_matrix* matrix) {
  return matrix == nullptr ? 0 : static_cast<size_t>(matrix->value.cols());
}

mvg_status mvg_matrix_get(const mvg_matrix* matrix, size_t row, size_t col,
                          double* value) {
  MVG_REQUIRE(matrix);
  MVG_REQUIRE(value);
  if (row >= mvg_matrix_rows(matrix) || col >= mvg_matrix_cols(matrix)) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "matrix index out of range");
  }
  *value = matrix->value(static_cast<Eigen::Index>(row),
                         static_cast<Eigen::Index>(col));
  return MVG_OK;
}

mvg_status mvg_matrix_set(mvg_matrix* matrix, size_t row, size_t col,
                          double value) {
  MVG_REQUIRE(matrix);
  if (row >= mvg_matrix_rows(matrix) || col >= mvg_matrix_cols(matrix)) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "matrix index out of range");
  }
  matrix->value(static_cast<Eigen::Index>(row),
                static_cast<Eigen::Index>(col)) = value;
  return MVG_OK;
}

mvg_status mvg_matrix_transpose(const mvg_matrix* matrix, mvg_matrix** out) {
  MVG_REQUIRE(matrix);
  MVG_REQUIRE(out);
  return Guard([&] { *out = new mvg_matrix{matrix->value.transpose()}; });
}

mvg_status mvg_matrix_load_csv(const char* path, int has_header,
                               mvg_matrix** out) {
  MVG_REQUIRE(path);
  MVG_REQUIRE(out);
  return Guard([&] {
    *out = new mvg_matrix{mvgdp::LoadCsvMatrix(path, has_header != 0).data};
  });
}

mvg_status mvg_matrix_load_csv_raw(const char* path, mvg_matrix** out) {
  MVG_REQUIRE(path);
  MVG_REQUIRE(out);
  return Guard([&] {
    *out = new mvg_matrix{mvgdp::ReadCsvFile(path, false).records};
  });
}

mvg_status mvg_matrix_save_csv(const mvg_matrix* matrix, const char* path) {
  MVG_REQUIRE(matrix);
  MVG_REQUIRE(path);
  return Guard([&] { mvgdp::WriteCsvFile(path, matrix->value); });
}

void mvg_matrix_destroy(mvg_matrix* matrix) { delete matrix; }

mvg_status mvg_rng_create(uint64_t seed, mvg_rng** out) {
  MVG_REQUIRE(out);
  return Guard([&] { *out = new mvg_rng(seed); });
}

void mvg_rng_destroy(mvg_rng* rng) { delete rng; }

mvg_status mvg_compute_budget(const mvg_query* query,
                              const mvg_privacy* privacy, mvg_budget_mode mode,
                              mvg_budget* out) {
  MVG_REQUIRE(query);
  MVG_REQUIRE(privacy);
  MVG_REQUIRE(out);
  if (!ValidMode(mode)) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "unknown budget mode");
  }
  return Guard([&] {
    ToBudget(mvgdp::PrecisionBudget(ToQuery(*query), ToPrivacy(*privacy),
                                    ToMode(mode)),
             out);
  });
}

mvg_status mvg_design_from_covariances(const mvg_matrix* sigma,
                                       const mvg_matrix* psi,
                                       mvg_design** out) {
  MVG_REQUIRE(sigma);
  MVG_REQUIRE(psi);
  MVG_REQUIRE(out);
  return Guard([&] {
    mvgdp::NoiseDesign design =
        mvgdp::NoiseDesign::FromCovariances(sigma->value, psi->value);
    mvgdp::DesignFactors factors = mvgdp::FactorDesign(design);
    *out = new mvg_design{std::move(design), std::move(factors)};
  });
}

mvg_status mvg_design_check(const mvg_design* design, const mvg_query* query,
                            const mvg_privacy* privacy, int* holds,
                            double* lhs, double* rhs) {
  MVG_REQUIRE(design);
  MVG_REQUIRE(query);
  MVG_REQUIRE(privacy);
  MVG_REQUIRE(holds);
  return Guard([&] {
    const mvgdp::ConditionCheck check = mvgdp::CheckCondition(
        design->design, ToQuery(*query), ToPrivacy(*privacy));
    *holds = check.holds ? 1 : 0;
    if (lhs != nullptr) *lhs = check.lhs;
    if (rhs != nullptr) *rhs = check.rhs;
  });
}

void mvg_design_destroy(mvg_design* design) { delete design; }

mvg_status mvg_sample(const mvg_design* design, mvg_rng* rng,
                      mvg_matrix** out) {
  MVG_REQUIRE(design);
  MVG_REQUIRE(rng);
  MVG_REQUIRE(out);
  return Guard([&] {
    *out = new mvg_matrix{mvgdp::SampleMvg(rng->stream, design->factors)};
  });
}

mvg_status mvg_sample_batch(const mvg_design* design, mvg_rng* rng,
                            size_t count, mvg_matrix** out) {
  MVG_REQUIRE(design);
  MVG_REQUIRE(rng);
  MVG_REQUIRE(out);
  return Guard([&] {
    const auto size = static_cast<Eigen::Index>(design->design.rows() *
                                                 design->design.cols());
    auto batch = std::make_unique<mvg_matrix>();
    batch->value.resize(static_cast<Eigen::Index>(count), size);
    for (size_t k = 0; k < count; ++k) {
      const Eigen::MatrixXd z = mvgdp::SampleMvg(rng->stream, design->factors);
      batch->value.row(static_cast<Eigen::Index>(k)) =
          z.reshaped().transpose();
    }
    *out = batch.release();
  });
}

void mvg_perturb_config_init(mvg_perturb_config* config) {
  if (config == nullptr) return;
  *config = mvg_perturb_config{};
  config->query = MVG_QUERY_IDENTITY;
  config->use_default_mode = 1;
  config->mode = MVG_MODE_UNIMODAL;
  config->lo = 0.0;
  config->hi = 1.0;
  config->epsilon = 1.0;
  config->has_delta = 0;
  config->delta = 0.0;
  config->theta = "uniform";
  config->directions = "standard";
  config->seed = 0;
}

mvg_status mvg_perturb(const mvg_matrix* data, const mvg_perturb_config* config,
                       mvg_matrix** out, mvg_budget* budget) {
  MVG_REQUIRE(data);
  MVG_REQUIRE(config);
  MVG_REQUIRE(out);
  if (config->query != MVG_QUERY_IDENTITY &&
      config->query != MVG_QUERY_COVARIANCE) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "unknown query kind");
  }
  if (!config->use_default_mode && !ValidMode(config->mode)) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "unknown budget mode");
  }
  return Guard([&] {
    std::optional<mvgdp::BudgetMode> mode;
    if (!config->use_default_mode) mode = ToMode(config->mode);
    std::optional<double> delta;
    if (config->has_delta) delta = config->delta;
    mvgdp::PerturbOutcome outcome = mvgdp::PerturbDataset(
        data->value,
        config->query == MVG_QUERY_IDENTITY ? mvgdp::QueryKind::kIdentity
                                            : mvgdp::QueryKind::kCovariance,
        mode, config->lo, config->hi, config->epsilon, delta,
        config->theta != nullptr ? config->theta : "uniform",
        config->directions != nullptr ? config->directions : "standard",
        config->seed);
    if (budget != nullptr) ToBudget(outcome.budget, budget);
    *out = new mvg_matrix{std::move(outcome.output)};
  });
}

void mvg_bench_config_init(mvg_bench_config* config) {
  if (config == nullptr) return;
  const mvgdp::ExperimentConfig defaults;
  *config = mvg_bench_config{};
  config->experiment = MVG_EXPERIMENT_FIRST_PC;
  config->input = nullptr;
  config->has_header = defaults.has_header ? 1 : 0;
  config->lo = defaults.lo;
  config->hi = defaults.hi;
  config->epsilon = defaults.epsilon;
  config->has_delta = 0;
  config->delta = 0.0;
  config->mechanism = MVG_MECHANISM_MVG_UNIMODAL;
  config->theta = "uniform";
  config->directions = "standard";
  config->trials = defaults.trials;
  config->seed = defaults.seed;
  config->ridge = defaults.ridge;
  config->train_fraction = defaults.train_fraction;
  config->ablation_base = MVG_EXPERIMENT_FIRST_PC;
  config->ablation_thetas = nullptr;
  config->ablation_count = 0;
}

mvg_status mvg_bench_run(const mvg_bench_config* config, mvg_report_set** out) {
  MVG_REQUIRE(config);
  MVG_REQUIRE(out);
  MVG_REQUIRE(config->input);
  const auto experiment = ToExperiment(config->experiment);
  const auto base = ToExperiment(config->ablation_base);
  const auto mechanism = ToMechanism(config->mechanism);
  if (!experiment || !base || !mechanism) {
    return Report(MVG_ERR_INVALID_ARGUMENT,
                  "unknown experiment or mechanism value");
  }
  if (config->ablation_count > 0) MVG_REQUIRE(config->ablation_thetas);
  return Guard([&] {
    mvgdp::ExperimentConfig cfg;
    cfg.experiment = *experiment;
    cfg.dataset_path = config->input;
    cfg.has_header = config->has_header != 0;
    cfg.lo = config->lo;
    cfg.hi = config->hi;
    cfg.epsilon = config->epsilon;
    if (config->has_delta) cfg.delta = config->delta;
    cfg.mechanism = *mechanism;
    if (config->theta != nullptr) cfg.theta_spec = config->theta;
    if (config->directions != nullptr) cfg.directions = config->directions;
    cfg.trials = config->trials;
    cfg.seed = config->seed;
    cfg.ridge = config->ridge;
    cfg.train_fraction = config->train_fraction;
    cfg.ablation_base = *base;
    for (size_t i = 0; i < config->ablation_count; ++i) {
      if (config->ablation_thetas[i] == nullptr) {
        mvgdp::Fail(mvgdp::ErrorCode::kConfig, "null ablation allocation");
      }
      cfg.ablation_thetas.emplace_back(config->ablation_thetas[i]);
    }
    auto set = std::make_unique<mvg_report_set>();
    set->reports = mvgdp::RunBench(cfg);
    *out = set.release();
  });
}

size_t mvg_report_set_size(const mvg_report_set* reports) {
  return reports == nullptr ? 0 : reports->reports.size();
}

mvg_status mvg_report_get(const mvg_report_set* reports, size_t index,
                          const char** name, double* mean,
                          double* ci95_half_width, size_t* trials) {
  MVG_REQUIRE(reports);
  if (index >= reports->reports.size()) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "report index out of range");
  }
  const mvgdp::EvalReport& r = reports->reports[index];
  if (name != nullptr) *name = r.metric_name.c_str();
  if (mean != nullptr) *mean = r.mean;
  if (ci95_half_width != nullptr) *ci95_half_width = r.ci95_half_width;
  if (trials != nullptr) *trials = r.trials;
  return MVG_OK;
}

mvg_status mvg_report_set_format(mvg_report_set* reports,
                                 mvg_report_format format, const char** text) {
  MVG_REQUIRE(reports);
  MVG_REQUIRE(text);
  if (format != MVG_REPORT_TEXT && format != MVG_REPORT_CSV) {
    return Report(MVG_ERR_INVALID_ARGUMENT, "unknown report format");
  }
  return Guard([&] {
    reports->text = mvgdp::EmitReports(reports->reports,
                                       format == MVG_REPORT_TEXT
                                           ? mvgdp::ReportFormat::kText
                                           : mvgdp::ReportFormat::kCsv);
    *text = reports->text.c_str();
  });
}

void mvg_report_set_destroy(mvg_report_set* reports) { delete reports; }

}  // extern "C"
