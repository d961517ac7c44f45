/* Copyright 2026 The uqrel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the uqrel library.
 *
 * All entry points are synchronous and thread-safe. Functions that produce
 * output fill a uqrel_report handle; the caller owns it and must release it
 * with uqrel_report_free. Strings returned from a report stay valid until
 * the report is freed. On any non-OK status, uqrel_last_error() returns a
 * thread-local description of the failure.
 */

#ifndef UQREL_UQREL_H_
#define UQREL_UQREL_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define UQREL_API __declspec(dllexport)
#else
#define UQREL_API __attribute__((visibility("default")))
#endif

typedef enum uqrel_status {
  UQREL_OK = 0,
  UQREL_ERR_CONFIG = 1,    /* invalid input: JSON, shapes, constraints */
  UQREL_ERR_VIOLATION = 2, /* a checked inequality failed beyond tolerance */
  UQREL_ERR_NUMERICAL = 3  /* result unreliable at the working precision */
} uqrel_status;

/* Opaque result of a run: a data body (CSV or JSON rows), a one-line JSON
 * summary, and the process exit code the CLI would use. */
typedef struct uqrel_report uqrel_report;

/* Library version, e.g. "0.1.0". Static storage, do not free. */
UQREL_API const char* uqrel_version(void);

/* Description of the most recent failure on this thread, or "" if the last
 * call succeeded. Static thread-local storage, do not free. */
UQREL_API const char* uqrel_last_error(void);

/* Random sweep checking a relation family. config_json fields (all
 * optional): mode, dims, trials, seed, tol, format. Returns UQREL_OK when
 * the sweep ran to completion, even if rows violate the bound; the report
 * exit code distinguishes clean (0) from violating (2) sweeps. */
UQREL_API uqrel_status uqrel_run_verify(const char* config_json,
                                        uqrel_report** out_report);

/* Random sweep comparing moment-based and distance-based quantities.
 * Accepts the same config fields as uqrel_run_verify except mode. */
UQREL_API uqrel_status uqrel_run_compare(const char* config_json,
                                         uqrel_report** out_report);

/* Closed-form worked example. name is one of: luders-xy, naive-violation,
 * schrodinger-equality, transpose-map. format is "csv" or "json". */
UQREL_API uqrel_status uqrel_run_demo(const char* name, const char* format,
                                      uqrel_report** out_report);

/* Single fully specified scenario, see the README for the schema. */
UQREL_API uqrel_status uqrel_run_case(const char* scenario_json,
                                      const char* format,
                                      uqrel_report** out_report);

/* Accessors. Passing NULL is safe: body/summary return "" and exit_code
 * returns UQREL_ERR_CONFIG. */
UQREL_API const char* uqrel_report_body(const uqrel_report* report);
UQREL_API const char* uqrel_report_summary(const uqrel_report* report);
UQREL_API int uqrel_report_exit_code(const uqrel_report* report);
UQREL_API void uqrel_report_free(uqrel_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UQREL_UQREL_H_ */
