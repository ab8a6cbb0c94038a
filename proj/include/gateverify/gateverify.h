// Copyright 2026 The gateverify Authors
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

/* C interface to the gateverify library. Every entry point returns a
 * gv_status; on failure gv_last_error() describes the most recent error on
 * the calling thread. Strings returned through char** are owned by the
 * caller and released with gv_string_free. */
#ifndef GATEVERIFY_GATEVERIFY_H_
#define GATEVERIFY_GATEVERIFY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GV_API __declspec(dllexport)
#else
#define GV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gv_status {
    GV_OK = 0,
    GV_INVALID_ARGUMENT = 1,
    GV_DIMENSION = 2,
    GV_UNSUPPORTED = 3,
    GV_NOT_HERMITIAN = 4,
    GV_INVARIANT = 5,
    GV_NOT_STABILIZER = 6,
    GV_NOT_PRODUCT = 7,
    GV_SCHEMA = 8,
    GV_IO = 9,
    GV_NUMERIC = 10,
    GV_INTERNAL = 99
} gv_status;

typedef enum gv_fidelity_kind { GV_ENTANGLEMENT = 0, GV_AVERAGE = 1 } gv_fidelity_kind;

typedef struct gv_strategy gv_strategy;

typedef struct gv_gaps {
    double nu_p;
    double nu_m;
    double nu;
    double nu_bound;
    double beta_p;
    double beta_m;
    double beta;
    int balanced;
} gv_gaps;

typedef struct gv_sdp_result {
    double value;
    double upper_certificate;
    double dual_bound;
    int64_t iterations;
    int converged;
} gv_sdp_result;

typedef struct gv_test_counts {
    double eps_e;
    /* -1 when unavailable or unverifiable. */
    int64_t exact;
    int64_t gap;
    int64_t bound;
} gv_test_counts;

GV_API const char *gv_version(void);
GV_API const char *gv_last_error(void);
GV_API const char *gv_status_name(gv_status status);

/* Caps the Hilbert-space dimension accepted by every operation. */
GV_API gv_status gv_set_max_dim(size_t dim);
GV_API size_t gv_max_dim(void);

/* Builds the strategy described by a scenario config (JSON text). */
GV_API gv_status gv_strategy_from_config(const char *config_json, gv_strategy **out);
GV_API void gv_strategy_free(gv_strategy *strategy);
GV_API gv_status gv_strategy_dim(const gv_strategy *strategy, int *dim);
GV_API gv_status gv_strategy_gaps(const gv_strategy *strategy, gv_gaps *out);

GV_API gv_status gv_p_e_bound(const gv_strategy *strategy, double eps_e, double *out);
GV_API gv_status gv_p_e_sdp(const gv_strategy *strategy, double eps_e, gv_sdp_result *out);
GV_API gv_status gv_p_a(const gv_strategy *strategy, double eps_a, gv_sdp_result *out);
GV_API gv_status gv_num_tests(const gv_strategy *strategy, double eps, double delta, gv_fidelity_kind kind,
                              gv_test_counts *out);

/* Average pass probability of the strategy against the noise model given as
 * a JSON descriptor (same form as the config "noise" field). */
GV_API gv_status gv_exact_pass_probability(const gv_strategy *strategy, const char *noise_json, double *out);

/* Report commands. Each takes a scenario config and returns a document. */
GV_API gv_status gv_analyze(const char *config_json, char **report_json);
GV_API gv_status gv_table(int max_n, int max_n_qutrit, double eps, double delta, char **report_json);
GV_API gv_status gv_pcurve(const char *config_json, const double *grid, size_t grid_len, char **csv);
GV_API gv_status gv_simulate(const char *config_json, char **report_json, char **trials_csv);
GV_API gv_status gv_export_protocol(const char *config_json, char **protocol_json);

/* Renders a report document as "text" or "csv" where supported. */
GV_API gv_status gv_render(const char *report_json, const char *format, char **out);
/* Checks that a document carries a known schema and its required fields. */
GV_API gv_status gv_validate_document(const char *document_json);

GV_API void gv_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* GATEVERIFY_GATEVERIFY_H_ */
