// Copyright 2026 The OMEN Authors.
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

/*
 * C interface to the OMEN password-guessing library.
 *
 * Every object is an opaque handle created by an omen_*_create/load/open
 * function and released with the matching omen_*_free. Functions return an
 * omen_status; on failure omen_last_error() describes the problem for the
 * calling thread. Strings returned through out-parameters stay valid until
 * the next call on the same handle unless noted otherwise.
 */
#ifndef OMEN_OMEN_H_
#define OMEN_OMEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OMEN_BUILDING_LIBRARY)
#    define OMEN_API __declspec(dllexport)
#  else
#    define OMEN_API __declspec(dllimport)
#  endif
#else
#  define OMEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum omen_status {
  OMEN_OK = 0,
  OMEN_ERR_IO = 1,
  OMEN_ERR_EMPTY_CORPUS = 2,
  OMEN_ERR_PARAMETER = 3,
  OMEN_ERR_PARSE = 4,
  OMEN_ERR_TRAINING = 5,
  OMEN_ERR_SCORING = 6,
  OMEN_ERR_FORMAT = 7,
  OMEN_ERR_CALIBRATION = 8,
  OMEN_ERR_COMPARISON = 9,
  OMEN_ERR_FIT = 10,
  OMEN_ERR_INTERNAL = 99
} omen_status;

typedef struct omen_corpus omen_corpus;
typedef struct omen_model omen_model;
typedef struct omen_stream omen_stream;
typedef struct omen_curve omen_curve;
typedef struct omen_hints omen_hints;
typedef struct omen_profile omen_profile;

/* Message for the last failed call on this thread ("" when none). */
OMEN_API const char* omen_last_error(void);
OMEN_API const char* omen_status_name(omen_status status);
OMEN_API const char* omen_default_alphabet(void);

/* ---- corpus ------------------------------------------------------------ */

/* `alphabet` may be NULL for the default; `alphabet_path` (may be NULL)
 * takes precedence when given. */
OMEN_API omen_status omen_corpus_load(const char* path, const char* alphabet,
                                      const char* alphabet_path,
                                      size_t min_length, size_t max_length,
                                      omen_corpus** out);
OMEN_API void omen_corpus_free(omen_corpus* corpus);
OMEN_API size_t omen_corpus_size(const omen_corpus* corpus);
OMEN_API size_t omen_corpus_rejected(const omen_corpus* corpus);
/* NULL when out of range. Valid for the lifetime of the corpus. */
OMEN_API const char* omen_corpus_get(const omen_corpus* corpus, size_t index);
OMEN_API const char* omen_corpus_alphabet(const omen_corpus* corpus);
OMEN_API omen_status omen_corpus_split(const omen_corpus* corpus,
                                       double train_fraction, uint64_t seed,
                                       omen_corpus** train, omen_corpus** test);
OMEN_API omen_status omen_corpus_save(const omen_corpus* corpus,
                                      const char* path);

/* ---- model ------------------------------------------------------------- */

OMEN_API omen_status omen_model_train(const omen_corpus* corpus, int order,
                                      int level_count, double smoothing,
                                      omen_model** out);
OMEN_API omen_status omen_model_load(const char* path, omen_model** out);
OMEN_API omen_status omen_model_save(const omen_model* model, const char* path);
OMEN_API void omen_model_free(omen_model* model);
OMEN_API int omen_model_order(const omen_model* model);
OMEN_API int omen_model_level_count(const omen_model* model);
OMEN_API const char* omen_model_alphabet(const omen_model* model);
OMEN_API omen_status omen_model_probability(const omen_model* model,
                                            const char* password, double* out);
OMEN_API omen_status omen_model_level(const omen_model* model,
                                      const char* password, int* out);

/* ---- guess streams ----------------------------------------------------- */

typedef struct omen_guess {
  const char* text; /* valid until the next omen_stream_next */
  int level;
  int length;
} omen_guess;

/* Returns nonzero when `guess` hit. */
typedef int (*omen_oracle_fn)(const char* guess, void* user);

/* Passwords of exactly `length` at total level `level`. */
OMEN_API omen_status omen_enum_open(const omen_model* model, int level,
                                    int length, omen_stream** out);
OMEN_API omen_status omen_count_guesses(const omen_model* model, int level,
                                        int length, uint64_t* out);

/* Adaptive schedule over lengths [min_length, max_length]. Success feedback
 * comes from membership in `test` (may be NULL) or from `oracle` when
 * given. */
OMEN_API omen_status omen_crack_open(const omen_model* model, int min_length,
                                     int max_length, uint64_t budget,
                                     const omen_corpus* test,
                                     omen_oracle_fn oracle, void* user,
                                     omen_stream** out);

/* Like omen_crack_open with levels boosted by record `record_index` of
 * `hints` according to `profile`. */
OMEN_API omen_status omen_plus_open(const omen_model* model,
                                    const omen_profile* profile,
                                    const omen_hints* hints,
                                    size_t record_index, int min_length,
                                    int max_length, uint64_t budget,
                                    const omen_corpus* test,
                                    omen_oracle_fn oracle, void* user,
                                    omen_stream** out);

/* *has_guess is set to 0 at the end of the stream. */
OMEN_API omen_status omen_stream_next(omen_stream* stream, omen_guess* guess,
                                      int* has_guess);
/* Scheduled streams only; 0 otherwise. */
OMEN_API uint64_t omen_stream_cracked(const omen_stream* stream);
OMEN_API void omen_stream_free(omen_stream* stream);

/* ---- evaluation -------------------------------------------------------- */

OMEN_API omen_status omen_parse_checkpoints(const char* list, uint64_t* out,
                                            size_t capacity, size_t* count);
/* Consumes `stream`. */
OMEN_API omen_status omen_curve_compute(omen_stream* stream,
                                        const omen_corpus* test,
                                        const uint64_t* checkpoints,
                                        size_t count, int unique,
                                        omen_curve** out);
OMEN_API omen_status omen_curve_load(const char* path, omen_curve** out);
OMEN_API omen_status omen_curve_save(const omen_curve* curve, const char* path);
OMEN_API size_t omen_curve_size(const omen_curve* curve);
OMEN_API omen_status omen_curve_point(const omen_curve* curve, size_t index,
                                      uint64_t* guesses, double* fraction);
OMEN_API void omen_curve_free(omen_curve* curve);

typedef struct omen_curve_comparison {
  size_t dominated_count; /* checkpoints where a >= b */
  size_t checkpoint_count;
  double max_gap;
} omen_curve_comparison;

OMEN_API omen_status omen_curve_compare(const omen_curve* a,
                                        const omen_curve* b,
                                        omen_curve_comparison* out);

/* ---- hints and similarity ---------------------------------------------- */

OMEN_API omen_status omen_hints_load(const char* path, omen_hints** out);
OMEN_API void omen_hints_free(omen_hints* hints);
OMEN_API size_t omen_hints_size(const omen_hints* hints);
/* Attribute vocabulary; NULL past the end. */
OMEN_API const char* omen_attribute_name(size_t index);

OMEN_API void omen_lcss(const char* a, const char* b, size_t* start_in_a,
                        size_t* length);
OMEN_API double omen_jaccard3(const char* password, const char* hint);

typedef struct omen_similarity_row {
  const char* attribute; /* static string */
  double mean_js;
  double js5;
  double mean_lcss;
  double lcss5;
  double mean_length;
  size_t records;
} omen_similarity_row;

/* Writes up to `capacity` rows; *count receives the number available. */
OMEN_API omen_status omen_similarity_stats(const omen_hints* hints,
                                           omen_similarity_row* rows,
                                           size_t capacity, size_t* count);

/* `attribute` NULL or "max" for the per-record maximum. Writes up to
 * `capacity` points; *count receives the number available. */
OMEN_API omen_status omen_similarity_cdf(const omen_hints* hints,
                                         const char* attribute, double* values,
                                         double* fractions, size_t capacity,
                                         size_t* count);

typedef enum omen_policy_verdict {
  OMEN_POLICY_IDENTICAL = 0,
  OMEN_POLICY_TOO_SIMILAR = 1,
  OMEN_POLICY_OK = 2
} omen_policy_verdict;

OMEN_API omen_policy_verdict omen_policy_check(const char* username,
                                               const char* password,
                                               size_t min_edit_distance,
                                               double jaccard_threshold);
OMEN_API const char* omen_policy_verdict_name(omen_policy_verdict verdict);

/* ---- boosting ---------------------------------------------------------- */

typedef struct omen_alpha_result {
  double alpha;
  double ln_alpha;
  int boost_level;
  double objective;
} omen_alpha_result;

/* Grid lo, lo+step, ..., hi; exponent is the guess-curve slope (-1.5 by
 * default). */
OMEN_API omen_status omen_alpha_estimate(const omen_model* model,
                                         const omen_hints* hints,
                                         const char* attribute, double lo,
                                         double hi, double step,
                                         double exponent, unsigned threads,
                                         omen_alpha_result* out);

/* On OMEN_ERR_FIT *exponent is still set to -1.5. */
OMEN_API omen_status omen_fit_guess_curve(const omen_model* model,
                                          size_t sample_count,
                                          double* exponent);

OMEN_API omen_status omen_profile_create(omen_profile** out);
OMEN_API omen_status omen_profile_load(const char* path, omen_profile** out);
OMEN_API omen_status omen_profile_save(const omen_profile* profile,
                                       const char* path);
OMEN_API omen_status omen_profile_set(omen_profile* profile,
                                      const char* attribute, double alpha);
OMEN_API int omen_profile_boost_level(const omen_profile* profile,
                                      const char* attribute);
OMEN_API void omen_profile_free(omen_profile* profile);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* OMEN_OMEN_H_ */
