/*
 * Copyright 2026 The umtslab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the umtslab core. Every call returns a status code; on
 * failure umts_last_error() describes the problem for the calling thread.
 * Strings returned through out-parameters are owned by the caller and must be
 * released with umts_string_free. */

#ifndef UMTSLAB_UMTSLAB_H_
#define UMTSLAB_UMTSLAB_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define UMTS_API __attribute__((visibility("default")))
#else
#define UMTS_API
#endif

typedef enum umts_status {
  UMTS_OK = 0,
  UMTS_E_INVALID_ARGUMENT = 1,
  UMTS_E_CONFIG = 2,
  UMTS_E_PARSE = 3,
  UMTS_E_UNSUPPORTED = 4,
  UMTS_E_STEP_BOUND = 5,
  UMTS_E_INTERNAL = 6,
  UMTS_E_IO = 7
} umts_status;

typedef enum umts_verdict {
  UMTS_EQUIVALENT = 0,
  UMTS_COUNTEREXAMPLE = 1,
  UMTS_BOUND_EXHAUSTED = 2
} umts_verdict;

typedef struct umts_bounds {
  uint32_t repl;
  uint32_t depth;
  uint64_t steps;
} umts_bounds;

typedef struct umts_model umts_model;

UMTS_API const char* umts_version(void);
UMTS_API const char* umts_last_error(void);
UMTS_API const char* umts_status_name(umts_status s);
UMTS_API void umts_string_free(char* s);

/* Defaults: repl=2, depth=3, steps=10000. */
UMTS_API umts_bounds umts_default_bounds(void);

/* Runs a scenario file (JSON text). *out_json receives
 * {"scenario", "transcript", "outcomes"}. */
UMTS_API umts_status umts_simulate(const char* scenario_json, char** out_json);

/* variant: original | unified | pk. */
UMTS_API umts_status umts_attack(const char* variant, uint64_t trials, uint64_t seed,
                                 unsigned jobs, int with_log, char** out_json);

/* kind: unlinkability | anonymity. strategy NULL selects the default. */
UMTS_API umts_status umts_game(const char* kind, const char* variant, const char* strategy,
                               uint64_t trials, uint64_t seed, int identity_requests,
                               unsigned jobs, int with_log, char** out_json);

UMTS_API umts_status umts_model_parse(const char* source, umts_model** out);
UMTS_API umts_status umts_model_pretty(const umts_model* model, char** out_text);
/* mode: observable | strict (NULL selects observable). bounds NULL selects
 * the defaults. verdict may be NULL. */
UMTS_API umts_status umts_model_check(umts_model* model, const umts_bounds* bounds,
                                      const char* mode, umts_verdict* verdict,
                                      char** out_json);
UMTS_API void umts_model_destroy(umts_model* model);

#ifdef __cplusplus
}
#endif

#endif /* UMTSLAB_UMTSLAB_H_ */
