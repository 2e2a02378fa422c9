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

#include "omen/omen.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <unordered_set>
#include <vector>

#include "boost.h"
#include "corpus.h"
#include "enumerator.h"
#include "error.h"
#include "eval.h"
#include "level_table.h"
#include "model.h"
#include "scheduler.h"
#include "similarity.h"

struct omen_corpus {
  omen::Corpus corpus;
  omen::Alphabet alphabet;
};

struct omen_model {
  omen::NgramModel model;
};

struct omen_stream {
  std::unique_ptr<omen::GuessSource> source;
  omen::ScheduledStream* scheduled = nullptr;
  std::shared_ptr<std::unordered_set<std::string>> members;
  omen::Guess current;
};

struct omen_curve {
  omen::CrackCurve curve;
};

struct omen_hints {
  std::vector<omen::HintRecord> records;
};

struct omen_profile {
  omen::BoostProfile profile;
};

namespace {

thread_local std::string g_last_error;

omen_status StatusFor(omen::ErrorCode code) {
  using omen::ErrorCode;
  switch (code) {
    case ErrorCode::kIo: return OMEN_ERR_IO;
    case ErrorCode::kEmptyCorpus: return OMEN_ERR_EMPTY_CORPUS;
    case ErrorCode::kParameter: return OMEN_ERR_PARAMETER;
    case ErrorCode::kParse: return OMEN_ERR_PARSE;
    case ErrorCode::kTraining: return OMEN_ERR_TRAINING;
    case ErrorCode::kScoring: return OMEN_ERR_SCORING;
    case ErrorCode::kFormat: return OMEN_ERR_FORMAT;
    case ErrorCode::kCalibration: return OMEN_ERR_CALIBRATION;
    case ErrorCode::kComparison: return OMEN_ERR_COMPARISON;
    case ErrorCode::kFit: return OMEN_ERR_FIT;
  }
  return OMEN_ERR_INTERNAL;
}

omen_status Fail(omen_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
omen_status Guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return OMEN_OK;
  } catch (const omen::Error& e) {
    return Fail(StatusFor(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(OMEN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(OMEN_ERR_INTERNAL, e.what());
  }
}

omen_status NullArgument(const char* what) {
  return Fail(OMEN_ERR_PARAMETER, std::string(what) + " must not be NULL");
}

omen::SuccessOracle MakeOracle(omen_stream& stream, const omen_corpus* test,
                               omen_oracle_fn oracle, void* user) {
  if (oracle) {
    return [oracle, user](std::string_view g) {
      const std::string s(g);
      return oracle(s.c_str(), user) != 0;
    };
  }
  if (test) {
    stream.members = std::make_shared<std::unordered_set<std::string>>(
        test->corpus.passwords.begin(), test->corpus.passwords.end());
    auto members = stream.members;
    return [members](std::string_view g) {
      return members->count(std::string(g)) > 0;
    };
  }
  return {};
}

omen::LengthRange Lengths(int min_length, int max_length) {
  return {min_length, max_length};
}

}  // namespace

extern "C" {

const char* omen_last_error(void) { return g_last_error.c_str(); }

const char* omen_status_name(omen_status status) {
  switch (status) {
    case OMEN_OK: return "ok";
    case OMEN_ERR_IO: return "io error";
    case OMEN_ERR_EMPTY_CORPUS: return "empty corpus";
    case OMEN_ERR_PARAMETER: return "parameter error";
    case OMEN_ERR_PARSE: return "parse error";
    case OMEN_ERR_TRAINING: return "training error";
    case OMEN_ERR_SCORING: return "scoring error";
    case OMEN_ERR_FORMAT: return "format error";
    case OMEN_ERR_CALIBRATION: return "calibration error";
    case OMEN_ERR_COMPARISON: return "comparison error";
    case OMEN_ERR_FIT: return "fit error";
    case OMEN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* omen_default_alphabet(void) {
  static const std::string chars = omen::Alphabet::Default().chars();
  return chars.c_str();
}

omen_status omen_corpus_load(const char* path, const char* alphabet,
                             const char* alphabet_path, size_t min_length,
                             size_t max_length, omen_corpus** out) {
  if (!path || !out) return NullArgument("path and out");
  return Guard([&] {
    omen::Alphabet a = alphabet_path ? omen::Alphabet::Load(alphabet_path)
                       : alphabet    ? omen::Alphabet::FromString(alphabet)
                                     : omen::Alphabet::Default();
    omen::Corpus c = omen::LoadPasswords(path, a, min_length, max_length);
    *out = new omen_corpus{std::move(c), std::move(a)};
  });
}

void omen_corpus_free(omen_corpus* corpus) { delete corpus; }

size_t omen_corpus_size(const omen_corpus* corpus) {
  return corpus ? corpus->corpus.size() : 0;
}

size_t omen_corpus_rejected(const omen_corpus* corpus) {
  return corpus ? corpus->corpus.rejected_count : 0;
}

const char* omen_corpus_get(const omen_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->corpus.size()) return nullptr;
  return corpus->corpus.passwords[index].c_str();
}

const char* omen_corpus_alphabet(const omen_corpus* corpus) {
  return corpus ? corpus->alphabet.chars().c_str() : nullptr;
}

omen_status omen_corpus_split(const omen_corpus* corpus, double train_fraction,
                              uint64_t seed, omen_corpus** train,
                              omen_corpus** test) {
  if (!corpus || !train || !test) return NullArgument("corpus and outputs");
  return Guard([&] {
    omen::CorpusSplit s = omen::Split(corpus->corpus, train_fraction, seed);
    auto t = std::make_unique<omen_corpus>(omen_corpus{std::move(s.train), corpus->alphabet});
    auto e = std::make_unique<omen_corpus>(omen_corpus{std::move(s.test), corpus->alphabet});
    *train = t.release();
    *test = e.release();
  });
}

omen_status omen_corpus_save(const omen_corpus* corpus, const char* path) {
  if (!corpus || !path) return NullArgument("corpus and path");
  return Guard([&] { omen::WritePasswords(corpus->corpus, path); });
}

omen_status omen_model_train(const omen_corpus* corpus, int order,
                             int level_count, double smoothing,
                             omen_model** out) {
  if (!corpus || !out) return NullArgument("corpus and out");
  return Guard([&] {
    omen::TrainOptions opts{order, level_count, smoothing};
    *out = new omen_model{omen::NgramModel::Train(corpus->corpus, corpus->alphabet, opts)};
  });
}

omen_status omen_model_load(const char* path, omen_model** out) {
  if (!path || !out) return NullArgument("path and out");
  return Guard([&] { *out = new omen_model{omen::NgramModel::Load(path)}; });
}

omen_status omen_model_save(const omen_model* model, const char* path) {
  if (!model || !path) return NullArgument("model and path");
  return Guard([&] { model->model.Save(path); });
}

void omen_model_free(omen_model* model) { delete model; }

int omen_model_order(const omen_model* model) {
  return model ? model->model.order() : 0;
}

int omen_model_level_count(const omen_model* model) {
  return model ? model->model.level_count() : 0;
}

const char* omen_model_alphabet(const omen_model* model) {
  return model ? model->model.alphabet().chars().c_str() : nullptr;
}

omen_status omen_model_probability(const omen_model* model,
                                   const char* password, double* out) {
  if (!model || !password || !out) return NullArgument("arguments");
  return Guard([&] { *out = model->model.Probability(password); });
}

omen_status omen_model_level(const omen_model* model, const char* password,
                             int* out) {
  if (!model || !password || !out) return NullArgument("arguments");
  return Guard([&] { *out = model->model.Level(password); });
}

omen_status omen_enum_open(const omen_model* model, int level, int length,
                           omen_stream** out) {
  if (!model || !out) return NullArgument("model and out");
  return Guard([&] {
    if (level > 0) throw omen::Error(omen::ErrorCode::kParameter, "level must be <= 0");
    if (length < model->model.order() - 1) {
      throw omen::Error(omen::ErrorCode::kParameter,
                        "length is shorter than the model context");
    }
    auto s = std::make_unique<omen_stream>();
    s->source = std::make_unique<omen::PasswordEnumerator>(
        omen::LevelTable(model->model), level, length);
    *out = s.release();
  });
}

omen_status omen_count_guesses(const omen_model* model, int level, int length,
                               uint64_t* out) {
  if (!model || !out) return NullArgument("model and out");
  return Guard([&] {
    *out = omen::CountGuesses(omen::LevelTable(model->model), level, length);
  });
}

omen_status omen_crack_open(const omen_model* model, int min_length,
                            int max_length, uint64_t budget,
                            const omen_corpus* test, omen_oracle_fn oracle,
                            void* user, omen_stream** out) {
  if (!model || !out) return NullArgument("model and out");
  return Guard([&] {
    auto s = std::make_unique<omen_stream>();
    auto sched = std::make_unique<omen::ScheduledStream>(
        omen::LevelTable(model->model), Lengths(min_length, max_length), budget,
        MakeOracle(*s, test, oracle, user));
    s->scheduled = sched.get();
    s->source = std::move(sched);
    *out = s.release();
  });
}

omen_status omen_plus_open(const omen_model* model, const omen_profile* profile,
                           const omen_hints* hints, size_t record_index,
                           int min_length, int max_length, uint64_t budget,
                           const omen_corpus* test, omen_oracle_fn oracle,
                           void* user, omen_stream** out) {
  if (!model || !profile || !hints || !out) return NullArgument("arguments");
  return Guard([&] {
    if (record_index >= hints->records.size()) {
      throw omen::Error(omen::ErrorCode::kParameter, "hint record index out of range");
    }
    auto s = std::make_unique<omen_stream>();
    auto sched = std::make_unique<omen::ScheduledStream>(omen::PlusStream(
        model->model, profile->profile, hints->records[record_index].attributes,
        Lengths(min_length, max_length), budget, MakeOracle(*s, test, oracle, user)));
    s->scheduled = sched.get();
    s->source = std::move(sched);
    *out = s.release();
  });
}

omen_status omen_stream_next(omen_stream* stream, omen_guess* guess,
                             int* has_guess) {
  if (!stream || !guess || !has_guess) return NullArgument("arguments");
  return Guard([&] {
    *has_guess = stream->source->Next(stream->current) ? 1 : 0;
    if (*has_guess) {
      guess->text = stream->current.text.c_str();
      guess->level = stream->current.level;
      guess->length = stream->current.length;
    }
  });
}

uint64_t omen_stream_cracked(const omen_stream* stream) {
  return stream && stream->scheduled ? stream->scheduled->state().cracked : 0;
}

void omen_stream_free(omen_stream* stream) { delete stream; }

omen_status omen_parse_checkpoints(const char* list, uint64_t* out,
                                   size_t capacity, size_t* count) {
  if (!list || !count) return NullArgument("list and count");
  return Guard([&] {
    const std::vector<std::uint64_t> cps = omen::ParseCheckpoints(list);
    *count = cps.size();
    if (out) std::copy_n(cps.begin(), std::min(capacity, cps.size()), out);
  });
}

omen_status omen_curve_compute(omen_stream* stream, const omen_corpus* test,
                               const uint64_t* checkpoints, size_t count,
                               int unique, omen_curve** out) {
  if (!stream || !test || !out || (!checkpoints && count > 0)) {
    return NullArgument("arguments");
  }
  return Guard([&] {
    *out = new omen_curve{omen::ComputeCrackCurve(
        *stream->source, test->corpus.passwords,
        std::span<const std::uint64_t>(checkpoints, count), unique != 0)};
  });
}

omen_status omen_curve_load(const char* path, omen_curve** out) {
  if (!path || !out) return NullArgument("path and out");
  return Guard([&] { *out = new omen_curve{omen::ImportCurve(path)}; });
}

omen_status omen_curve_save(const omen_curve* curve, const char* path) {
  if (!curve || !path) return NullArgument("curve and path");
  return Guard([&] { omen::ExportCurve(curve->curve, path); });
}

size_t omen_curve_size(const omen_curve* curve) {
  return curve ? curve->curve.checkpoints.size() : 0;
}

omen_status omen_curve_point(const omen_curve* curve, size_t index,
                             uint64_t* guesses, double* fraction) {
  if (!curve || !guesses || !fraction) return NullArgument("arguments");
  if (index >= curve->curve.checkpoints.size()) {
    return Fail(OMEN_ERR_PARAMETER, "curve index out of range");
  }
  *guesses = curve->curve.checkpoints[index];
  *fraction = curve->curve.fractions[index];
  return OMEN_OK;
}

void omen_curve_free(omen_curve* curve) { delete curve; }

omen_status omen_curve_compare(const omen_curve* a, const omen_curve* b,
                               omen_curve_comparison* out) {
  if (!a || !b || !out) return NullArgument("arguments");
  return Guard([&] {
    const omen::CurveComparison c = omen::CompareCurves(a->curve, b->curve);
    out->dominated_count = c.a_dominates.size();
    out->checkpoint_count = a->curve.checkpoints.size();
    out->max_gap = c.max_gap;
  });
}

omen_status omen_hints_load(const char* path, omen_hints** out) {
  if (!path || !out) return NullArgument("path and out");
  return Guard([&] { *out = new omen_hints{omen::LoadHints(path)}; });
}

void omen_hints_free(omen_hints* hints) { delete hints; }

size_t omen_hints_size(const omen_hints* hints) {
  return hints ? hints->records.size() : 0;
}

const char* omen_attribute_name(size_t index) {
  if (index >= omen::kAttributeNames.size()) return nullptr;
  return omen::kAttributeNames[index].data();
}

void omen_lcss(const char* a, const char* b, size_t* start_in_a,
               size_t* length) {
  const std::string_view sa = a ? a : "";
  const std::string_view sb = b ? b : "";
  const omen::CommonSubstring c = omen::Lcss(sa, sb);
  const size_t start = c.length == 0 ? 0 : sa.find(c.text);
  if (start_in_a) *start_in_a = start;
  if (length) *length = c.length;
}

double omen_jaccard3(const char* password, const char* hint) {
  return omen::Jaccard3(password ? password : "", hint ? hint : "");
}

omen_status omen_similarity_stats(const omen_hints* hints,
                                  omen_similarity_row* rows, size_t capacity,
                                  size_t* count) {
  if (!hints || !count) return NullArgument("hints and count");
  return Guard([&] {
    if (hints->records.empty()) {
      throw omen::Error(omen::ErrorCode::kParameter, "no hint records");
    }
    const auto stats = omen::AttributeStats(hints->records);
    *count = stats.size();
    for (size_t i = 0; rows && i < std::min(capacity, stats.size()); ++i) {
      const auto& s = stats[i];
      const auto it = std::find(omen::kAttributeNames.begin(),
                                omen::kAttributeNames.end(), s.attribute);
      rows[i] = {it->data(), s.mean_js, s.js5, s.mean_lcss, s.lcss5,
                 s.mean_length, s.records};
    }
  });
}

omen_status omen_similarity_cdf(const omen_hints* hints, const char* attribute,
                                double* values, double* fractions,
                                size_t capacity, size_t* count) {
  if (!hints || !count) return NullArgument("hints and count");
  return Guard([&] {
    if (hints->records.empty()) {
      throw omen::Error(omen::ErrorCode::kParameter, "no hint records");
    }
    const std::string_view attr = attribute ? attribute : "max";
    if (attr != "max" && !omen::IsKnownAttribute(attr)) {
      throw omen::Error(omen::ErrorCode::kParameter,
                        "unknown attribute '" + std::string(attr) + "'");
    }
    const auto cdf = omen::CdfSimilarity(hints->records, attr);
    *count = cdf.size();
    for (size_t i = 0; i < std::min(capacity, cdf.size()); ++i) {
      if (values) values[i] = cdf[i].first;
      if (fractions) fractions[i] = cdf[i].second;
    }
  });
}

omen_policy_verdict omen_policy_check(const char* username,
                                      const char* password,
                                      size_t min_edit_distance,
                                      double jaccard_threshold) {
  switch (omen::PolicyCheck(username ? username : "", password ? password : "",
                            min_edit_distance, jaccard_threshold)) {
    case omen::PolicyVerdict::kIdentical: return OMEN_POLICY_IDENTICAL;
    case omen::PolicyVerdict::kTooSimilar: return OMEN_POLICY_TOO_SIMILAR;
    case omen::PolicyVerdict::kOk: return OMEN_POLICY_OK;
  }
  return OMEN_POLICY_OK;
}

const char* omen_policy_verdict_name(omen_policy_verdict verdict) {
  switch (verdict) {
    case OMEN_POLICY_IDENTICAL: return "identical";
    case OMEN_POLICY_TOO_SIMILAR: return "too-similar";
    case OMEN_POLICY_OK: return "ok";
  }
  return "ok";
}

omen_status omen_alpha_estimate(const omen_model* model, const omen_hints* hints,
                                const char* attribute, double lo, double hi,
                                double step, double exponent, unsigned threads,
                                omen_alpha_result* out) {
  if (!model || !hints || !attribute || !out) return NullArgument("arguments");
  return Guard([&] {
    if (!omen::IsKnownAttribute(attribute)) {
      throw omen::Error(omen::ErrorCode::kParameter,
                        std::string("unknown attribute '") + attribute + "'");
    }
    const omen::AlphaEstimate est =
        omen::EstimateAlpha(hints->records, attribute, omen::AlphaGrid(lo, hi, step),
                            model->model, exponent, threads);
    *out = {est.alpha, est.ln_alpha, est.boost_level, est.objective};
  });
}

omen_status omen_fit_guess_curve(const omen_model* model, size_t sample_count,
                                 double* exponent) {
  if (!model || !exponent) return NullArgument("model and exponent");
  *exponent = omen::kDefaultGuessExponent;
  return Guard([&] {
    *exponent = omen::FitGuessCurve(model->model, sample_count).exponent;
  });
}

omen_status omen_profile_create(omen_profile** out) {
  if (!out) return NullArgument("out");
  return Guard([&] { *out = new omen_profile{}; });
}

omen_status omen_profile_load(const char* path, omen_profile** out) {
  if (!path || !out) return NullArgument("path and out");
  return Guard([&] { *out = new omen_profile{omen::LoadProfile(path)}; });
}

omen_status omen_profile_save(const omen_profile* profile, const char* path) {
  if (!profile || !path) return NullArgument("profile and path");
  return Guard([&] { omen::SaveProfile(profile->profile, path); });
}

omen_status omen_profile_set(omen_profile* profile, const char* attribute,
                             double alpha) {
  if (!profile || !attribute) return NullArgument("profile and attribute");
  return Guard([&] { profile->profile.Set(attribute, alpha); });
}

int omen_profile_boost_level(const omen_profile* profile, const char* attribute) {
  if (!profile || !attribute) return 0;
  return profile->profile.LevelFor(attribute);
}

void omen_profile_free(omen_profile* profile) { delete profile; }

}  // extern "C"
