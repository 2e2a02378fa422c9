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

// omen: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage or parameter error, 2 data/format error.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "omen/omen.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

bool g_quiet = false;

// Carries a C API failure out of a subcommand.
struct CommandError {
  omen_status status;
  std::string message;
};

void Check(omen_status status) {
  if (status != OMEN_OK) throw CommandError{status, omen_last_error()};
}

void Info(const std::string& msg) {
  if (!g_quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Corpus = std::unique_ptr<omen_corpus, Deleter<omen_corpus, omen_corpus_free>>;
using Model = std::unique_ptr<omen_model, Deleter<omen_model, omen_model_free>>;
using Stream = std::unique_ptr<omen_stream, Deleter<omen_stream, omen_stream_free>>;
using Curve = std::unique_ptr<omen_curve, Deleter<omen_curve, omen_curve_free>>;
using Hints = std::unique_ptr<omen_hints, Deleter<omen_hints, omen_hints_free>>;
using Profile = std::unique_ptr<omen_profile, Deleter<omen_profile, omen_profile_free>>;

Model LoadModel(const std::string& path) {
  omen_model* m = nullptr;
  Check(omen_model_load(path.c_str(), &m));
  return Model(m);
}

Corpus LoadCorpus(const std::string& path, const omen_model* model,
                  std::size_t min_len, std::size_t max_len) {
  omen_corpus* c = nullptr;
  Check(omen_corpus_load(path.c_str(), model ? omen_model_alphabet(model) : nullptr,
                         nullptr, min_len, max_len, &c));
  return Corpus(c);
}

Hints LoadHintFile(const std::string& path) {
  omen_hints* h = nullptr;
  Check(omen_hints_load(path.c_str(), &h));
  return Hints(h);
}

std::vector<std::uint64_t> Checkpoints(const std::string& list) {
  std::size_t count = 0;
  Check(omen_parse_checkpoints(list.c_str(), nullptr, 0, &count));
  std::vector<std::uint64_t> cps(count);
  Check(omen_parse_checkpoints(list.c_str(), cps.data(), cps.size(), &count));
  return cps;
}

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") {
      file_ = stdout;
    } else {
      file_ = std::fopen(path.c_str(), "wb");
      owned_ = true;
      if (!file_) throw CommandError{OMEN_ERR_IO, "cannot write '" + path + "'"};
    }
  }
  ~Output() {
    if (owned_) std::fclose(file_);
    else std::fflush(file_);
  }
  Output(const Output&) = delete;
  Output& operator=(const Output&) = delete;

  void Line(const char* text) {
    std::fputs(text, file_);
    std::fputc('\n', file_);
  }
  template <typename... Args>
  void Printf(const char* fmt, Args... args) {
    std::fprintf(file_, fmt, args...);
  }

 private:
  std::FILE* file_ = nullptr;
  bool owned_ = false;
};

struct Globals {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
};

struct LengthFlags {
  int min_len = 3;
  int max_len = 20;
  void Add(CLI::App* cmd) {
    cmd->add_option("--min-len", min_len, "Shortest guess length")->capture_default_str();
    cmd->add_option("--max-len", max_len, "Longest guess length")->capture_default_str();
  }
};

// ---- train / split ------------------------------------------------------

struct TrainArgs {
  std::string input, out, alphabet_file, test_out;
  int order = 3;
  int levels = 10;
  double delta = 0.01;
  std::size_t min_len = 3, max_len = 20;
  double train_fraction = 0.0;
};

void RunTrain(const TrainArgs& a, const Globals& g) {
  omen_corpus* raw = nullptr;
  Check(omen_corpus_load(a.input.c_str(), nullptr,
                         a.alphabet_file.empty() ? nullptr : a.alphabet_file.c_str(),
                         a.min_len, a.max_len, &raw));
  Corpus corpus(raw);
  Info("loaded " + std::to_string(omen_corpus_size(corpus.get())) + " passwords, rejected " +
       std::to_string(omen_corpus_rejected(corpus.get())));
  Corpus test;
  if (a.train_fraction > 0.0) {
    omen_corpus *train = nullptr, *rest = nullptr;
    Check(omen_corpus_split(corpus.get(), a.train_fraction, g.seed, &train, &rest));
    corpus.reset(train);
    test.reset(rest);
    if (!a.test_out.empty()) Check(omen_corpus_save(test.get(), a.test_out.c_str()));
    Info("training on " + std::to_string(omen_corpus_size(corpus.get())) + " passwords");
  }
  omen_model* m = nullptr;
  Check(omen_model_train(corpus.get(), a.order, a.levels, a.delta, &m));
  Model model(m);
  Check(omen_model_save(model.get(), a.out.c_str()));
  Info("model written to " + a.out);
}

struct SplitArgs {
  std::string input, train_out, test_out, alphabet_file;
  double fraction = 0.9;
  std::size_t min_len = 3, max_len = 20;
};

void RunSplit(const SplitArgs& a, const Globals& g) {
  omen_corpus* raw = nullptr;
  Check(omen_corpus_load(a.input.c_str(), nullptr,
                         a.alphabet_file.empty() ? nullptr : a.alphabet_file.c_str(),
                         a.min_len, a.max_len, &raw));
  Corpus corpus(raw);
  omen_corpus *train = nullptr, *test = nullptr;
  Check(omen_corpus_split(corpus.get(), a.fraction, g.seed, &train, &test));
  Corpus t(train), e(test);
  Check(omen_corpus_save(t.get(), a.train_out.c_str()));
  Check(omen_corpus_save(e.get(), a.test_out.c_str()));
  Info("split " + std::to_string(omen_corpus_size(corpus.get())) + " into " +
       std::to_string(omen_corpus_size(t.get())) + " / " +
       std::to_string(omen_corpus_size(e.get())));
}

// ---- enumeration --------------------------------------------------------

struct EnumArgs {
  std::string model;
  int level = 0;
  int length = 0;
  std::uint64_t max = 0;
  bool count = false;
};

void RunEnum(const EnumArgs& a) {
  Model model = LoadModel(a.model);
  if (a.count) {
    std::uint64_t n = 0;
    Check(omen_count_guesses(model.get(), a.level, a.length, &n));
    std::printf("%llu\n", static_cast<unsigned long long>(n));
    return;
  }
  omen_stream* raw = nullptr;
  Check(omen_enum_open(model.get(), a.level, a.length, &raw));
  Stream stream(raw);
  Output out("");
  omen_guess guess;
  int has = 0;
  for (std::uint64_t n = 0; a.max == 0 || n < a.max; ++n) {
    Check(omen_stream_next(stream.get(), &guess, &has));
    if (!has) break;
    out.Line(guess.text);
  }
}

struct CrackArgs {
  std::string model, test, checkpoints;
  std::uint64_t budget = 1000000;
  LengthFlags lengths;
};

void RunCrack(const CrackArgs& a) {
  Model model = LoadModel(a.model);
  Corpus test = LoadCorpus(a.test, model.get(), 1, 1024);
  std::vector<std::uint64_t> cps;
  if (!a.checkpoints.empty()) cps = Checkpoints(a.checkpoints);
  omen_stream* raw = nullptr;
  Check(omen_crack_open(model.get(), a.lengths.min_len, a.lengths.max_len, a.budget,
                        test.get(), nullptr, nullptr, &raw));
  Stream stream(raw);
  Output out("");
  const double total = static_cast<double>(omen_corpus_size(test.get()));
  std::size_t next_cp = 0;
  std::uint64_t made = 0;
  std::uint64_t cracked = 0;
  omen_guess guess;
  int has = 0;
  while (true) {
    Check(omen_stream_next(stream.get(), &guess, &has));
    if (!has) break;
    ++made;
    const std::uint64_t now = omen_stream_cracked(stream.get());
    if (now != cracked) {
      cracked = now;
      out.Printf("%llu\t%s\n", static_cast<unsigned long long>(made), guess.text);
    }
    while (next_cp < cps.size() && made == cps[next_cp]) {
      Info("checkpoint " + std::to_string(cps[next_cp]) + ": " +
           std::to_string(static_cast<double>(cracked) / total));
      ++next_cp;
    }
  }
  for (; next_cp < cps.size(); ++next_cp) {
    Info("checkpoint " + std::to_string(cps[next_cp]) + ": " +
         std::to_string(static_cast<double>(cracked) / total));
  }
  Info("guesses " + std::to_string(made) + ", distinct passwords cracked " +
       std::to_string(cracked));
}

// ---- evaluation ---------------------------------------------------------

struct EvalArgs {
  std::string model, test, out;
  std::string checkpoints = "1e3,1e4,1e5,1e6";
  std::uint64_t budget = 0;
  bool unique = false;
  LengthFlags lengths;
};

void RunEval(const EvalArgs& a) {
  Model model = LoadModel(a.model);
  Corpus test = LoadCorpus(a.test, model.get(), 1, 1024);
  const std::vector<std::uint64_t> cps = Checkpoints(a.checkpoints);
  const std::uint64_t budget = a.budget ? a.budget : cps.back();
  omen_stream* raw = nullptr;
  Check(omen_crack_open(model.get(), a.lengths.min_len, a.lengths.max_len, budget,
                        test.get(), nullptr, nullptr, &raw));
  Stream stream(raw);
  omen_curve* c = nullptr;
  Check(omen_curve_compute(stream.get(), test.get(), cps.data(), cps.size(),
                           a.unique ? 1 : 0, &c));
  Curve curve(c);
  if (a.out.empty()) {
    Output out("");
    out.Line("guesses,fraction");
    for (std::size_t i = 0; i < omen_curve_size(curve.get()); ++i) {
      std::uint64_t g = 0;
      double f = 0.0;
      Check(omen_curve_point(curve.get(), i, &g, &f));
      out.Printf("%llu,%.17g\n", static_cast<unsigned long long>(g), f);
    }
  } else {
    Check(omen_curve_save(curve.get(), a.out.c_str()));
    Info("curve written to " + a.out);
  }
}

struct CompareArgs {
  std::string a, b;
};

void RunCompare(const CompareArgs& a) {
  omen_curve *ca = nullptr, *cb = nullptr;
  Check(omen_curve_load(a.a.c_str(), &ca));
  Curve first(ca);
  Check(omen_curve_load(a.b.c_str(), &cb));
  Curve second(cb);
  omen_curve_comparison cmp{};
  Check(omen_curve_compare(first.get(), second.get(), &cmp));
  std::printf("checkpoints,a_dominates,max_gap\n%zu,%zu,%.17g\n", cmp.checkpoint_count,
              cmp.dominated_count, cmp.max_gap);
}

// ---- similarity ---------------------------------------------------------

struct SimArgs {
  std::string hints, attribute = "max", cdf, table;
};

void RunSim(const SimArgs& a) {
  Hints hints = LoadHintFile(a.hints);
  std::size_t count = 0;
  Check(omen_similarity_stats(hints.get(), nullptr, 0, &count));
  std::vector<omen_similarity_row> rows(count);
  Check(omen_similarity_stats(hints.get(), rows.data(), rows.size(), &count));
  {
    Output out(a.table);
    out.Line("attribute,meanJS,js5,meanLCSS,lcss5,meanLen");
    for (const omen_similarity_row& r : rows) {
      out.Printf("%s,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.attribute, r.mean_js, r.js5,
                 r.mean_lcss, r.lcss5, r.mean_length);
    }
  }
  if (!a.cdf.empty()) {
    const char* attr = a.attribute.c_str();
    Check(omen_similarity_cdf(hints.get(), attr, nullptr, nullptr, 0, &count));
    std::vector<double> values(count), fractions(count);
    Check(omen_similarity_cdf(hints.get(), attr, values.data(), fractions.data(),
                              count, &count));
    Output out(a.cdf);
    out.Line("similarity,cumulative");
    for (std::size_t i = 0; i < count; ++i) {
      out.Printf("%.6f,%.6f\n", values[i], fractions[i]);
    }
  }
}

// ---- boosting -----------------------------------------------------------

struct AlphaArgs {
  std::string model, hints, attribute, grid = "1:5:0.1", profile_out;
  double exponent = -1.5;
  std::size_t fit_samples = 0;
};

void RunAlpha(const AlphaArgs& a, const Globals& g) {
  double lo = 0, hi = 0, step = 0;
  char tail = 0;
  if (std::sscanf(a.grid.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3) {
    throw CommandError{OMEN_ERR_PARAMETER, "--grid expects lo:hi:step"};
  }
  Model model = LoadModel(a.model);
  Hints hints = LoadHintFile(a.hints);
  double exponent = a.exponent;
  if (a.fit_samples > 0) {
    const omen_status s = omen_fit_guess_curve(model.get(), a.fit_samples, &exponent);
    if (s == OMEN_ERR_FIT) {
      Info(std::string("fit failed (") + omen_last_error() + "), using -1.5");
    } else {
      Check(s);
    }
    Info("guess-curve exponent " + std::to_string(exponent));
  }
  std::vector<std::string> attributes;
  if (a.attribute == "all") {
    for (std::size_t i = 0; omen_attribute_name(i); ++i) attributes.push_back(omen_attribute_name(i));
  } else {
    attributes.push_back(a.attribute);
  }
  omen_profile* p = nullptr;
  Check(omen_profile_create(&p));
  Profile profile(p);
  std::printf("attribute,alpha,ln_alpha,boostLevel\n");
  for (const std::string& attr : attributes) {
    omen_alpha_result r{};
    Check(omen_alpha_estimate(model.get(), hints.get(), attr.c_str(), lo, hi, step,
                              exponent, g.threads, &r));
    std::printf("%s,%.6g,%.6f,%d\n", attr.c_str(), r.alpha, r.ln_alpha, r.boost_level);
    Check(omen_profile_set(profile.get(), attr.c_str(), r.alpha));
  }
  if (!a.profile_out.empty()) {
    Check(omen_profile_save(profile.get(), a.profile_out.c_str()));
    Info("profile written to " + a.profile_out);
  }
}

struct PlusArgs {
  std::string model, hints, profile, test;
  std::uint64_t budget = 1000000;
  std::size_t record = 0;
  LengthFlags lengths;
};

void RunPlus(const PlusArgs& a) {
  Model model = LoadModel(a.model);
  Hints hints = LoadHintFile(a.hints);
  omen_profile* p = nullptr;
  Check(omen_profile_load(a.profile.c_str(), &p));
  Profile profile(p);
  Corpus test;
  if (!a.test.empty()) test = LoadCorpus(a.test, model.get(), 1, 1024);
  omen_stream* raw = nullptr;
  Check(omen_plus_open(model.get(), profile.get(), hints.get(), a.record,
                       a.lengths.min_len, a.lengths.max_len, a.budget, test.get(),
                       nullptr, nullptr, &raw));
  Stream stream(raw);
  Output out("");
  omen_guess guess;
  int has = 0;
  while (true) {
    Check(omen_stream_next(stream.get(), &guess, &has));
    if (!has) break;
    out.Line(guess.text);
  }
}

struct PolicyArgs {
  std::string username, password;
  std::size_t min_edit = 2;
  double js_threshold = 0.5;
};

void RunPolicy(const PolicyArgs& a) {
  const omen_policy_verdict v = omen_policy_check(a.username.c_str(), a.password.c_str(),
                                                  a.min_edit, a.js_threshold);
  std::printf("%s\n", omen_policy_verdict_name(v));
}

struct ScoreArgs {
  std::string model;
  std::vector<std::string> passwords;
};

void RunScore(const ScoreArgs& a) {
  Model model = LoadModel(a.model);
  std::printf("password,probability,level\n");
  for (const std::string& pw : a.passwords) {
    double p = 0;
    int level = 0;
    Check(omen_model_probability(model.get(), pw.c_str(), &p));
    Check(omen_model_level(model.get(), pw.c_str(), &level));
    std::printf("%s,%.17g,%d\n", pw.c_str(), p, level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OMEN: ordered Markov enumeration of password guesses"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomised steps")->capture_default_str();
  app.add_flag("--quiet", g_quiet, "Suppress diagnostics on stderr");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train an n-gram model");
  c_train->add_option("--input", train.input, "Password file")->required();
  c_train->add_option("--out", train.out, "Model file to write")->required();
  c_train->add_option("--order", train.order, "n-gram order")->capture_default_str();
  c_train->add_option("--levels", train.levels, "Number of levels")->capture_default_str();
  c_train->add_option("--delta", train.delta, "Additive smoothing")->capture_default_str();
  c_train->add_option("--alphabet", train.alphabet_file, "Alphabet file");
  c_train->add_option("--min-len", train.min_len, "Shortest password kept")->capture_default_str();
  c_train->add_option("--max-len", train.max_len, "Longest password kept")->capture_default_str();
  c_train->add_option("--train-fraction", train.train_fraction,
                      "Train on a seeded split of the input");
  c_train->add_option("--test-out", train.test_out, "Held-out part of the split");

  SplitArgs split;
  auto* c_split = app.add_subcommand("split", "Seeded train/test split");
  c_split->add_option("--input", split.input)->required();
  c_split->add_option("--train-out", split.train_out)->required();
  c_split->add_option("--test-out", split.test_out)->required();
  c_split->add_option("--fraction", split.fraction)->capture_default_str();
  c_split->add_option("--alphabet", split.alphabet_file, "Alphabet file");
  c_split->add_option("--min-len", split.min_len)->capture_default_str();
  c_split->add_option("--max-len", split.max_len)->capture_default_str();

  EnumArgs en;
  auto* c_enum = app.add_subcommand("enum", "Enumerate one level and length");
  c_enum->add_option("--model", en.model)->required();
  c_enum->add_option("--level", en.level, "Target level (<= 0)")->required();
  c_enum->add_option("--length", en.length, "Password length")->required();
  c_enum->add_option("--max", en.max, "Stop after N guesses (0 = all)");
  c_enum->add_flag("--count", en.count, "Print the number of guesses only");

  CrackArgs crack;
  auto* c_crack = app.add_subcommand("crack", "Adaptive guessing against a test set");
  c_crack->add_option("--model", crack.model)->required();
  c_crack->add_option("--test", crack.test)->required();
  c_crack->add_option("--budget", crack.budget)->capture_default_str();
  c_crack->add_option("--checkpoints", crack.checkpoints, "e.g. 1e3,1e4");
  crack.lengths.Add(c_crack);

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Cracked fraction at checkpoints");
  c_eval->add_option("--model", ev.model)->required();
  c_eval->add_option("--test", ev.test)->required();
  c_eval->add_option("--budget", ev.budget, "Defaults to the last checkpoint");
  c_eval->add_option("--checkpoints", ev.checkpoints)->capture_default_str();
  c_eval->add_option("--out", ev.out, "Curve CSV (stdout when omitted)");
  c_eval->add_flag("--unique", ev.unique, "Collapse duplicate test passwords");
  ev.lengths.Add(c_eval);

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "Compare two curve CSV files");
  c_cmp->add_option("a", cmp.a)->required();
  c_cmp->add_option("b", cmp.b)->required();

  SimArgs sim;
  auto* c_sim = app.add_subcommand("sim", "Password/attribute similarity");
  c_sim->add_option("--hints", sim.hints)->required();
  c_sim->add_option("--attribute", sim.attribute, "Attribute for --cdf, or max")
      ->capture_default_str();
  c_sim->add_option("--cdf", sim.cdf, "CDF CSV output");
  c_sim->add_option("--table", sim.table, "Stats CSV output (stdout when omitted)");

  AlphaArgs al;
  auto* c_alpha = app.add_subcommand("alpha", "Estimate the boosting parameter");
  c_alpha->add_option("--model", al.model)->required();
  c_alpha->add_option("--hints", al.hints)->required();
  c_alpha->add_option("--attribute", al.attribute, "Attribute name or all")->required();
  c_alpha->add_option("--grid", al.grid, "lo:hi:step")->capture_default_str();
  c_alpha->add_option("--exponent", al.exponent, "Guess-curve exponent")
      ->capture_default_str();
  c_alpha->add_option("--fit", al.fit_samples, "Fit the exponent on N guesses");
  c_alpha->add_option("--profile-out", al.profile_out, "Write a boost profile");

  PlusArgs plus;
  auto* c_plus = app.add_subcommand("plus", "Guesses boosted by personal hints");
  c_plus->add_option("--model", plus.model)->required();
  c_plus->add_option("--hints", plus.hints)->required();
  c_plus->add_option("--profile", plus.profile)->required();
  c_plus->add_option("--budget", plus.budget)->capture_default_str();
  c_plus->add_option("--record", plus.record, "Hint record of the target")
      ->capture_default_str();
  c_plus->add_option("--test", plus.test, "Optional test set for success feedback");
  plus.lengths.Add(c_plus);

  PolicyArgs pol;
  auto* c_pol = app.add_subcommand("policy-check", "Username/password similarity verdict");
  c_pol->add_option("--username", pol.username)->required();
  c_pol->add_option("--password", pol.password)->required();
  c_pol->add_option("--min-edit-distance", pol.min_edit)->capture_default_str();
  c_pol->add_option("--js-threshold", pol.js_threshold)->capture_default_str();

  ScoreArgs score;
  auto* c_score = app.add_subcommand("score", "Probability and level of passwords");
  c_score->add_option("--model", score.model)->required();
  c_score->add_option("passwords", score.passwords)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_train->parsed()) RunTrain(train, g);
    else if (c_split->parsed()) RunSplit(split, g);
    else if (c_enum->parsed()) RunEnum(en);
    else if (c_crack->parsed()) RunCrack(crack);
    else if (c_eval->parsed()) RunEval(ev);
    else if (c_cmp->parsed()) RunCompare(cmp);
    else if (c_sim->parsed()) RunSim(sim);
    else if (c_alpha->parsed()) RunAlpha(al, g);
    else if (c_plus->parsed()) RunPlus(plus);
    else if (c_pol->parsed()) RunPolicy(pol);
    else if (c_score->parsed()) RunScore(score);
  } catch (const CommandError& e) {
    std::fprintf(stderr, "omen: %s: %s\n", omen_status_name(e.status), e.message.c_str());
    return e.status == OMEN_ERR_PARAMETER ? kExitUsage : kExitData;
  }
  return 0;
}
