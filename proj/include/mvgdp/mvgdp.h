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

// C interface to the mvgdp library. Every object is an opaque handle owned by
// the caller and released with its *_destroy function. Functions return an
// mvg_status; on failure mvg_last_error() describes the problem for the
// calling thread until its next failing call.
//
// Matrices follow the library convention: data sets are features x records,
// so mvg_matrix_load_csv transposes the file's records-as-rows layout.

#ifndef MVGDP_MVGDP_H_
#define MVGDP_MVGDP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MVGDP_BUILDING_LIBRARY)
#define MVG_API __declspec(dllexport)
#else
#define MVG_API __declspec(dllimport)
#endif
#else
#define MVG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvg_status {
  MVG_OK = 0,
  MVG_ERR_INVALID_ARGUMENT = 1,  // null pointer, bad enum, index out of range
  MVG_ERR_DOMAIN = 2,
  MVG_ERR_SHAPE = 3,
  MVG_ERR_DEGENERATE = 4,
  MVG_ERR_ALLOCATION = 5,
  MVG_ERR_FORMAT = 6,
  MVG_ERR_CONFIG = 7,
  MVG_ERR_IO = 8,
  MVG_ERR_CONTRACT = 9,  // declared data bounds or gamma do not hold
  MVG_ERR_INTERNAL = 10,  // a design failed the privacy condition
  MVG_ERR_NO_MEMORY = 11,
} mvg_status;

MVG_API const char* mvg_version(void);
MVG_API const char* mvg_status_name(mvg_status status);
MVG_API const char* mvg_last_error(void);

// Dense matrices.
typedef struct mvg_matrix mvg_matrix;

MVG_API mvg_status mvg_matrix_create(size_t rows, size_t cols,
                                     mvg_matrix** out);
MVG_API mvg_status mvg_matrix_from_row_major(size_t rows, size_t cols,
                                             const double* values,
                                             mvg_matrix** out);
MVG_API size_t mvg_matrix_rows(const mvg_matrix* matrix);
MVG_API size_t mvg_matrix_cols(const mvg_matrix* matrix);
MVG_API mvg_status mvg_matrix_get(const mvg_matrix* matrix, size_t row,
                                  size_t col, double* value);
MVG_API mvg_status mvg_matrix_set(mvg_matrix* matrix, size_t row, size_t col,
                                  double value);
MVG_API mvg_status mvg_matrix_transpose(const mvg_matrix* matrix,
                                        mvg_matrix** out);
// Records-as-rows CSV in, features x records matrix out.
MVG_API mvg_status mvg_matrix_load_csv(const char* path, int has_header,
                                       mvg_matrix** out);
// Loads a headerless CSV as stored, one file row per matrix row.
MVG_API mvg_status mvg_matrix_load_csv_raw(const char* path,
                                           mvg_matrix** out);
// Writes the matrix as stored, shortest round-trip decimal form.
MVG_API mvg_status mvg_matrix_save_csv(const mvg_matrix* matrix,
                                       const char* path);
MVG_API void mvg_matrix_destroy(mvg_matrix* matrix);

// Seeded random stream.
typedef struct mvg_rng mvg_rng;

MVG_API mvg_status mvg_rng_create(uint64_t seed, mvg_rng** out);
MVG_API void mvg_rng_destroy(mvg_rng* rng);

// Privacy budget.
typedef struct mvg_privacy {
  double epsilon;
  double delta;
} mvg_privacy;

typedef struct mvg_query {
  size_t m;
  size_t n;
  double sensitivity;  // s2, L2 sensitivity
  double gamma;        // bound on ||f(X)||_F
} mvg_query;

typedef enum mvg_budget_mode {
  MVG_MODE_UNIMODAL = 0,
  MVG_MODE_EQUIMODAL = 1,
} mvg_budget_mode;

typedef struct mvg_budget {
  double h_r;
  double h_r_half;
  double zeta;
  double alpha;
  double beta;
  double phi_max;
  double precision_budget;
} mvg_budget;

MVG_API mvg_status mvg_compute_budget(const mvg_query* query,
                                      const mvg_privacy* privacy,
                                      mvg_budget_mode mode, mvg_budget* out);

// Noise designs and sampling.
typedef struct mvg_design mvg_design;

MVG_API mvg_status mvg_design_from_covariances(const mvg_matrix* sigma,
                                               const mvg_matrix* psi,
                                               mvg_design** out);
// holds is 1 when ||sigma(Sigma^-1)||_2 ||sigma(Psi^-1)||_2 <= phi_max^2.
MVG_API mvg_status mvg_design_check(const mvg_design* design,
                                    const mvg_query* query,
                                    const mvg_privacy* privacy, int* holds,
                                    double* lhs, double* rhs);
MVG_API void mvg_design_destroy(mvg_design* design);

// One m x n draw Z ~ MVG(0, Sigma, Psi).
MVG_API mvg_status mvg_sample(const mvg_design* design, mvg_rng* rng,
                              mvg_matrix** out);
// count x (m n) matrix; row k is vec(Z_k), columns of Z_k stacked.
MVG_API mvg_status mvg_sample_batch(const mvg_design* design, mvg_rng* rng,
                                    size_t count, mvg_matrix** out);

// Single private release of a data set.
typedef enum mvg_query_kind {
  MVG_QUERY_IDENTITY = 0,
  MVG_QUERY_COVARIANCE = 1,
} mvg_query_kind;

typedef struct mvg_perturb_config {
  mvg_query_kind query;
  int use_default_mode;  // unimodal for identity, equi-modal for covariance
  mvg_budget_mode mode;
  double lo;
  double hi;
  double epsilon;
  int has_delta;  // 0: delta = 1 / records
  double delta;
  const char* theta;       // allocation spec, NULL for "uniform"
  const char* directions;  // "standard", "dp", "dp:F" or a CSV path
  uint64_t seed;
} mvg_perturb_config;

MVG_API void mvg_perturb_config_init(mvg_perturb_config* config);
// data is features x records. budget may be NULL.
MVG_API mvg_status mvg_perturb(const mvg_matrix* data,
                               const mvg_perturb_config* config,
                               mvg_matrix** out, mvg_budget* budget);

// Benchmark harness.
typedef enum mvg_experiment {
  MVG_EXPERIMENT_REGRESSION = 0,
  MVG_EXPERIMENT_FIRST_PC = 1,
  MVG_EXPERIMENT_COVARIANCE = 2,
  MVG_EXPERIMENT_ABLATION = 3,
} mvg_experiment;

typedef enum mvg_mechanism {
  MVG_MECHANISM_MVG_UNIMODAL = 0,
  MVG_MECHANISM_MVG_EQUIMODAL = 1,
  MVG_MECHANISM_GAUSSIAN = 2,
  MVG_MECHANISM_LAPLACE = 3,
  MVG_MECHANISM_NONE = 4,
} mvg_mechanism;

typedef struct mvg_bench_config {
  mvg_experiment experiment;
  const char* input;  // records-as-rows CSV
  int has_header;
  double lo;
  double hi;
  double epsilon;
  int has_delta;
  double delta;
  mvg_mechanism mechanism;
  const char* theta;
  const char* directions;
  size_t trials;
  uint64_t seed;
  double ridge;
  double train_fraction;
  mvg_experiment ablation_base;
  const char* const* ablation_thetas;
  size_t ablation_count;
} mvg_bench_config;

typedef enum mvg_report_format {
  MVG_REPORT_TEXT = 0,
  MVG_REPORT_CSV = 1,
} mvg_report_format;

typedef struct mvg_report_set mvg_report_set;

MVG_API void mvg_bench_config_init(mvg_bench_config* config);
MVG_API mvg_status mvg_bench_run(const mvg_bench_config* config,
                                 mvg_report_set** out);
MVG_API size_t mvg_report_set_size(const mvg_report_set* reports);
// name stays valid until the set is destroyed.
MVG_API mvg_status mvg_report_get(const mvg_report_set* reports, size_t index,
                                  const char** name, double* mean,
                                  double* ci95_half_width, size_t* trials);
// The returned text is owned by the set and valid until the next call on it.
MVG_API mvg_status mvg_report_set_format(mvg_report_set* reports,
                                         mvg_report_format format,
                                         const char** text);
MVG_API void mvg_report_set_destroy(mvg_report_set* reports);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // MVGDP_MVGDP_H_
