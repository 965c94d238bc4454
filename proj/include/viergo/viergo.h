// Copyright 2026 The viergo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIERGO_VIERGO_H_
#define VIERGO_VIERGO_H_

/* C interface to the viergo library. Every handle is opaque and owned by the
 * caller; release it with the matching *_free function. Functions return a
 * viergo_status; on failure viergo_last_error() describes the problem for
 * the calling thread until its next viergo call. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VIERGO_API __declspec(dllexport)
#else
#define VIERGO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum viergo_status {
  VIERGO_OK = 0,
  VIERGO_ERR_INPUT = 1,
  VIERGO_ERR_CONFIG = 2,
  VIERGO_ERR_PRECONDITION = 3,
  VIERGO_ERR_IO = 4,
  VIERGO_ERR_VALIDATION = 5,
  VIERGO_ERR_DOMAIN = 6,
  VIERGO_ERR_UNSUPPORTED = 7,
  VIERGO_ERR_INTERNAL = 8
} viergo_status;

/* Process exit statuses reported by viergo_result_exit_code. */
#define VIERGO_EXIT_OK 0
#define VIERGO_EXIT_ERROR 1
#define VIERGO_EXIT_VIOLATION 2
#define VIERGO_EXIT_DIVERGED 3

typedef struct viergo_config viergo_config;
typedef struct viergo_result viergo_result;
typedef struct viergo_trajectory viergo_trajectory;

VIERGO_API const char* viergo_version(void);
VIERGO_API const char* viergo_last_error(void);
VIERGO_API int viergo_default_threads(void);

/* Configuration. Parsing reports every problem at once, one per line. */
VIERGO_API viergo_status viergo_config_load(const char* path, viergo_config** out);
VIERGO_API viergo_status viergo_config_parse(const char* yaml_text, viergo_config** out);
VIERGO_API void viergo_config_free(viergo_config* config);
VIERGO_API viergo_status viergo_config_set_seed(viergo_config* config, uint64_t seed);
VIERGO_API viergo_status viergo_config_set_output_dir(viergo_config* config, const char* dir);
VIERGO_API viergo_status viergo_config_set_emit_svg(viergo_config* config, int enabled);
/* Canonical text; release with viergo_string_free. */
VIERGO_API viergo_status viergo_config_serialize(const viergo_config* config, char** out);
/* Writes 16 hex digits and a terminating NUL into out. */
VIERGO_API viergo_status viergo_config_hash(const viergo_config* config, char out[17]);

/* Runs "run", "bias-sweep", "clt", "rr" or "validate". threads <= 0 selects
 * VIERGO_THREADS or the number of logical cores. A diverged chain or a failed
 * assumption check still returns VIERGO_OK; inspect the exit code. */
VIERGO_API viergo_status viergo_execute(const viergo_config* config, const char* command,
                                        int threads, viergo_result** out);
VIERGO_API int viergo_result_exit_code(const viergo_result* result);
VIERGO_API const char* viergo_result_message(const viergo_result* result);
VIERGO_API const char* viergo_result_manifest_json(const viergo_result* result);
VIERGO_API void viergo_result_free(viergo_result* result);

/* Single chain with the configured solver, on stream index `chain`. */
VIERGO_API viergo_status viergo_simulate(const viergo_config* config, uint64_t chain,
                                         viergo_trajectory** out);
VIERGO_API int64_t viergo_trajectory_steps(const viergo_trajectory* traj);
VIERGO_API int viergo_trajectory_diverged(const viergo_trajectory* traj,
                                          int64_t* iteration);
VIERGO_API size_t viergo_trajectory_dimension(const viergo_trajectory* traj);
/* Copy up to len values; return the number available. */
VIERGO_API size_t viergo_trajectory_cesaro_mean(const viergo_trajectory* traj, double* out,
                                                size_t len);
VIERGO_API size_t viergo_trajectory_sq_err(const viergo_trajectory* traj, double* out,
                                           size_t len);
VIERGO_API void viergo_trajectory_free(viergo_trajectory* traj);

/* Renders a CSV file as "trajectory_loglog", "histogram" or "bar_errors".
 * Nothing is written when the data does not fit the plot kind. */
VIERGO_API viergo_status viergo_plot(const char* csv_path, const char* kind,
                                     const char* svg_path, const char* title);

VIERGO_API void viergo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  // VIERGO_VIERGO_H_
