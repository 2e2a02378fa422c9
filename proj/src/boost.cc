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

#include "boost.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "error.h"
#include "similarity.h"

namespace omen {
namespace {

// Dense conditional index of a lowercase gram, or npos when a character is
// outside the alphabet.
constexpr std::size_t kNoGram = std::numeric_limits<std::size_t>::max();

std::size_t GramIndex(const NgramModel& model, std::string_view gram) {
  if (gram.size() != static_cast<std::size_t>(model.order())) return kNoGram;
  std::size_t idx = 0;
  for (char c : gram) {
    const int r = model.alphabet().Rank(c);
    if (r < 0) return kNoGram;
    idx = idx * model.alphabet_size() + r;
  }
  return idx;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

BoostSets DeriveSets(std::string_view password,
                     std::span<const std::string> hints, std::size_t n) {
  BoostSets sets;
  for (const std::string& h : hints) sets.hint.merge(Ngrams(h, n));
  for (const std::string& g : Ngrams(password, n)) {
    if (sets.hint.count(g)) {
      sets.shared.insert(g);
      continue;
    }
    const std::string_view ctx(g.data(), n - 1);
    auto it = sets.hint.lower_bound(std::string(ctx));
    for (; it != sets.hint.end() && it->compare(0, n - 1, ctx) == 0; ++it) {
      if ((*it)[n - 1] != g[n - 1]) {
        sets.context.insert(g);
        break;
      }
    }
  }
  return sets;
}

BoostSets DeriveSets(std::string_view password, std::string_view hint,
                     std::size_t n) {
  const std::string h(hint);
  return DeriveSets(password, std::span<const std::string>(&h, 1), n);
}

int BoostLevel(double alpha, int level_count) {
  if (!(alpha >= 1.0)) return 0;
  const int level = static_cast<int>(std::lround(std::log(alpha)));
  return std::clamp(level, 0, std::max(0, level_count - 1));
}

std::vector<std::size_t> ConditionalIndices(const NgramModel& model,
                                            const std::set<std::string>& grams) {
  std::vector<std::size_t> out;
  for (const std::string& g : grams) {
    const std::size_t idx = GramIndex(model, g);
    if (idx != kNoGram) out.push_back(idx);
  }
  return out;
}

BoostedView::BoostedView(const NgramModel& model,
                         const std::set<std::string>& hint_grams, double alpha,
                         bool exact)
    : model_(&model), alpha_(alpha) {
  if (!(alpha >= 1.0)) throw Error(ErrorCode::kParameter, "alpha must be >= 1");
  const std::size_t sigma = model.alphabet_size();
  std::map<std::size_t, std::vector<int>> by_context;
  for (std::size_t idx : ConditionalIndices(model, hint_grams)) {
    boosted_.insert(idx);
    by_context[idx / sigma].push_back(static_cast<int>(idx % sigma));
  }
  if (alpha == 1.0) return;
  for (const auto& [ctx, nexts] : by_context) {
    std::vector<double> p(sigma);
    for (std::size_t z = 0; z < sigma; ++z) p[z] = model.cond_prob(ctx, static_cast<int>(z));
    double p_hat = 0.0;
    for (int z : nexts) p_hat += p[z];
    std::vector<bool> is_boosted(sigma, false);
    for (int z : nexts) is_boosted[z] = true;
    if (alpha * p_hat >= 1.0) {
      capped_ = true;
      for (std::size_t z = 0; z < sigma; ++z) {
        p[z] = is_boosted[z] ? p[z] / p_hat : 0.0;
      }
    } else {
      double rest = 1.0 - alpha * p_hat;
      if (exact) rest /= (1.0 - p_hat);
      for (std::size_t z = 0; z < sigma; ++z) {
        p[z] = is_boosted[z] ? alpha * p[z] : rest * p[z];
      }
    }
    probs_.emplace(ctx, std::move(p));
  }
}

double BoostedView::cond_prob(std::size_t context, int next) const {
  auto it = probs_.find(context);
  if (it != probs_.end()) return it->second[next];
  return model_->cond_prob(context, next);
}

int BoostedView::cond_level(std::size_t context, int next) const {
  const int base = model_->cond_level(context, next);
  const std::size_t idx = context * model_->alphabet_size() + next;
  if (!boosted_.count(idx)) return base;
  return std::min(0, base + BoostLevel(alpha_, model_->level_count()));
}

double BoostedView::Probability(std::string_view password) const {
  const NgramModel& m = *model_;
  const std::size_t prefix = static_cast<std::size_t>(m.order() - 1);
  double p = m.initial_prob(m.ContextIndex(password.substr(0, prefix)));
  std::size_t ctx = m.ContextIndex(password.substr(0, prefix));
  for (std::size_t i = prefix; i < password.size(); ++i) {
    const int r = m.alphabet().Rank(password[i]);
    if (r < 0) throw Error(ErrorCode::kScoring, "character not in the alphabet");
    p *= cond_prob(ctx, r);
    ctx = m.ShiftContext(ctx, r);
  }
  return p;
}

LevelTable BoostedView::Levels() const {
  const int boost = BoostLevel(alpha_, model_->level_count());
  std::vector<std::pair<std::size_t, int>> grams;
  for (std::size_t idx : boosted_) grams.emplace_back(idx, boost);
  std::sort(grams.begin(), grams.end());
  return LevelTable(*model_).WithBoostedGrams(grams);
}

BoostedScore BoostedProbability(const NgramModel& model, const BoostSets& sets,
                                double alpha, std::string_view password) {
  BoostedScore score;
  score.log_probability = model.LogProbability(password);
  const std::size_t n = static_cast<std::size_t>(model.order());
  if (alpha == 1.0 || password.size() < n) {
    score.probability = std::exp(score.log_probability);
    return score;
  }
  const std::string lower = ToLower(password);
  const double log_alpha = std::log(alpha);
  for (std::size_t i = 0; i + n <= lower.size(); ++i) {
    const std::string gram = lower.substr(i, n);
    if (sets.shared.count(gram)) {
      score.log_probability += log_alpha;
    } else if (sets.context.count(gram)) {
      double p_hat = 0.0;
      const std::string_view ctx(gram.data(), n - 1);
      for (auto it = sets.hint.lower_bound(std::string(ctx));
           it != sets.hint.end() && it->compare(0, n - 1, ctx) == 0; ++it) {
        const std::size_t idx = GramIndex(model, *it);
        if (idx != kNoGram) p_hat += model.cond_probs()[idx];
      }
      double factor = 1.0 - alpha * p_hat;
      if (factor <= 0.0) {
        factor = kFactorFloor;
        ++score.clamped_factors;
      }
      score.log_probability += std::log(factor);
    }
  }
  score.probability = std::exp(score.log_probability);
  return score;
}

ObjectiveResult ObjectiveS(std::span<const HintRecord> records,
                           std::string_view attribute, double alpha,
                           const NgramModel& model, double exponent) {
  if (records.empty()) {
    throw Error(ErrorCode::kParameter, "objective needs at least one record");
  }
  if (!(alpha >= 1.0)) throw Error(ErrorCode::kParameter, "alpha must be >= 1");
  ObjectiveResult result;
  long double sum = 0.0L;
  const std::size_t n = static_cast<std::size_t>(model.order());
  for (const HintRecord& r : records) {
    BoostedScore s;
    try {
      const BoostSets sets = DeriveSets(r.password, r.Values(attribute), n);
      s = BoostedProbability(model, sets, alpha, r.password);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kScoring) throw;
      ++result.skipped;
      continue;
    }
    sum += std::exp(static_cast<long double>(exponent) * s.log_probability);
    result.clamped += static_cast<std::size_t>(s.clamped_factors);
    ++result.used;
  }
  if (result.used > 0) {
    result.score = static_cast<double>(sum / static_cast<long double>(result.used));
  }
  return result;
}

std::vector<double> AlphaGrid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) {
    throw Error(ErrorCode::kParameter, "grid needs lo <= hi and step > 0");
  }
  std::vector<double> grid;
  for (long i = 0;; ++i) {
    // Rounded to 1e-9 so 1.0 + 0.1 * i lands on the decimal value.
    const double a = std::round((lo + step * static_cast<double>(i)) * 1e9) / 1e9;
    if (a > hi + 1e-9) break;
    grid.push_back(a);
  }
  return grid;
}

AlphaEstimate EstimateAlpha(std::span<const HintRecord> records,
                            std::string_view attribute,
                            std::vector<double> grid, const NgramModel& model,
                            double exponent, unsigned threads,
                            double alpha_cap) {
  if (grid.empty()) throw Error(ErrorCode::kParameter, "empty alpha grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (std::abs(grid.front() - 1.0) > 1e-9 || grid.back() > alpha_cap + 1e-9) {
    throw Error(ErrorCode::kParameter,
                "alpha grid must start at 1 and stay within the cap");
  }
  grid.front() = 1.0;

  std::vector<double> scores(grid.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < grid.size(); i += workers) {
      scores[i] = ObjectiveS(records, attribute, grid[i], model, exponent).score;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }

  AlphaEstimate est;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    est.curve.emplace_back(grid[i], scores[i]);
    if (scores[i] < scores[best]) best = i;
  }
  est.alpha = grid[best];
  est.ln_alpha = std::log(est.alpha);
  est.boost_level = BoostLevel(est.alpha, model.level_count());
  est.objective = scores[best];
  return est;
}

GuessCurveFit FitGuessCurve(const NgramModel& model, std::size_t sample_count,
                            LengthRange lengths) {
  if (sample_count < 1000) {
    throw Error(ErrorCode::kParameter, "guess-curve fit needs >= 1000 samples");
  }
  const LevelTable table(model);
  ValidateLengths(table, lengths);
  std::vector<double> xs;
  xs.reserve(sample_count);
  const int deepest = MinTotalLevel(table, lengths.max);
  Guess g;
  for (int eta = 0; eta >= deepest && xs.size() < sample_count; --eta) {
    for (int len = lengths.min; len <= lengths.max && xs.size() < sample_count; ++len) {
      if (eta < MinTotalLevel(table, len)) continue;
      PasswordEnumerator batch(table, eta, len);
      while (xs.size() < sample_count && batch.Next(g)) {
        xs.push_back(model.LogProbability(g.text));
      }
    }
  }
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += std::log(static_cast<double>(i + 1));
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = std::log(static_cast<double>(i + 1)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (n < 2 || sxx <= 1e-12 * static_cast<double>(n) ||
      std::abs(sxy) <= 1e-12 * static_cast<double>(n)) {
    throw Error(ErrorCode::kFit,
                "sampled guesses share one probability; cannot fit a slope");
  }
  GuessCurveFit fit;
  fit.exponent = syy / sxy;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  fit.samples = n;
  return fit;
}

double GuessExponentOrDefault(const NgramModel& model, std::size_t sample_count,
                              LengthRange lengths) {
  try {
    return FitGuessCurve(model, sample_count, lengths).exponent;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kFit) throw;
    return kDefaultGuessExponent;
  }
}

void BoostProfile::Set(const std::string& attribute, double alpha,
                       double alpha_cap) {
  if (!IsKnownAttribute(attribute)) {
    throw Error(ErrorCode::kParameter, "unknown attribute '" + attribute + "'");
  }
  if (!(alpha >= 1.0 && alpha <= alpha_cap + 1e-9)) {
    throw Error(ErrorCode::kParameter, "alpha must lie in [1, cap]");
  }
  attributes[attribute] = {alpha, BoostLevel(alpha, 128)};
}

int BoostProfile::LevelFor(std::string_view attribute) const {
  auto it = attributes.find(std::string(attribute));
  return it == attributes.end() ? 0 : it->second.boost_level;
}

BoostProfile ParseProfile(std::string_view csv) {
  BoostProfile profile;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("attribute,", 0) == 0) continue;
    auto fail = [line_no](const std::string& what) {
      return Error(ErrorCode::kParse,
                   "profile line " + std::to_string(line_no) + ": " + what);
    };
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(Trim(f));
    if (fields.size() != 3) throw fail("expected attribute,alpha,boostLevel");
    if (!IsKnownAttribute(fields[0])) throw fail("unknown attribute '" + fields[0] + "'");
    double alpha;
    int level;
    try {
      std::size_t used = 0;
      alpha = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("alpha");
      level = std::stoi(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("level");
    } catch (const std::exception&) {
      throw fail("non-numeric alpha or boostLevel");
    }
    if (!(alpha >= 1.0 && alpha <= kDefaultAlphaCap + 1e-9)) {
      throw fail("alpha outside [1, " + std::to_string(kDefaultAlphaCap) + "]");
    }
    if (level != BoostLevel(alpha, 128)) {
      throw fail("boostLevel must equal round(ln alpha)");
    }
    profile.attributes[fields[0]] = {alpha, level};
  }
  return profile;
}

BoostProfile LoadProfile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseProfile(buf.str());
}

std::string SerializeProfile(const BoostProfile& profile) {
  std::ostringstream out;
  out << "attribute,alpha,boostLevel\n";
  for (const auto& [name, b] : profile.attributes) {
    out << name << ',' << b.alpha << ',' << b.boost_level << '\n';
  }
  return out.str();
}

void SaveProfile(const BoostProfile& profile, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << SerializeProfile(profile);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

LevelTable PlusLevelTable(
    const NgramModel& model, const BoostProfile& profile,
    const std::map<std::string, std::vector<std::string>>& attributes) {
  const std::size_t n = static_cast<std::size_t>(model.order());
  std::vector<std::pair<std::size_t, int>> grams;
  for (const auto& [name, values] : attributes) {
    if (name == "email") continue;
    const int boost = std::min(profile.LevelFor(name), model.level_count() - 1);
    if (boost < 1) continue;
    std::set<std::string> hint_grams;
    for (const std::string& v : values) hint_grams.merge(Ngrams(v, n));
    for (std::size_t idx : ConditionalIndices(model, hint_grams)) {
      grams.emplace_back(idx, boost);
    }
  }
  const LevelTable base(model);
  if (grams.empty()) return base;
  return base.WithBoostedGrams(grams);
}

ScheduledStream PlusStream(
    const NgramModel& model, const BoostProfile& profile,
    const std::map<std::string, std::vector<std::string>>& attributes,
    LengthRange lengths, std::uint64_t budget, SuccessOracle oracle) {
  return ScheduledStream(PlusLevelTable(model, profile, attributes), lengths,
                         budget, std::move(oracle));
}

}  // namespace omen
