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

#ifndef OMEN_BOOST_H_
#define OMEN_BOOST_H_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "corpus.h"
#include "level_table.h"
#include "model.h"
#include "scheduler.h"

namespace omen {

inline constexpr double kDefaultGuessExponent = -1.5;
inline constexpr double kDefaultAlphaCap = 5.0;
inline constexpr double kFactorFloor = 1e-12;

// Grams of one password/hint pair, all lowercase.
//   shared:   grams in both the password and the hint
//   context:  password grams whose (n-1)-prefix starts a hint gram with a
//             different last character (and that are not shared)
//   hint:     every hint gram
struct BoostSets {
  std::set<std::string> shared;
  std::set<std::string> context;
  std::set<std::string> hint;
};

BoostSets DeriveSets(std::string_view password,
                     std::span<const std::string> hints, std::size_t n = 3);
BoostSets DeriveSets(std::string_view password, std::string_view hint,
                     std::size_t n = 3);

// round(ln alpha), clamped to [0, level_count - 1].
int BoostLevel(double alpha, int level_count);

// Dense conditional indices of those `grams` the model can express.
std::vector<std::size_t> ConditionalIndices(const NgramModel& model,
                                            const std::set<std::string>& grams);

// Probability-domain boost of a model. Boosted grams get alpha * p; the rest
// of a touched context is scaled by (1 - alpha * p_hat), p_hat being the
// original mass of the boosted grams in that context. With `exact` the rest
// is scaled by (1 - alpha * p_hat) / (1 - p_hat) instead, so contexts sum to
// exactly 1. When alpha * p_hat >= 1 the boosted grams share the whole
// context mass proportionally and the rest gets zero.
class BoostedView {
 public:
  BoostedView(const NgramModel& model, const std::set<std::string>& hint_grams,
              double alpha, bool exact = false);

  const NgramModel& model() const { return *model_; }
  double alpha() const { return alpha_; }
  bool capped() const { return capped_; }
  std::size_t touched_contexts() const { return probs_.size(); }

  double cond_prob(std::size_t context, int next) const;
  // Base level plus BoostLevel(alpha) for boosted grams, clamped at 0.
  int cond_level(std::size_t context, int next) const;
  // The boosted model's product over the password's initial gram and
  // transitions.
  double Probability(std::string_view password) const;
  LevelTable Levels() const;

 private:
  const NgramModel* model_;
  double alpha_;
  bool capped_ = false;
  std::unordered_map<std::size_t, std::vector<double>> probs_;
  std::unordered_set<std::size_t> boosted_;
};

struct BoostedScore {
  double probability = 0.0;
  double log_probability = 0.0;
  int clamped_factors = 0;  // (1 - alpha * p_hat) factors raised to the floor
};

// Closed form  p_old * alpha^s * prod over context grams (1 - alpha * p_hat),
// where s and the context product run over the password's transitions
// (case-folded) that fall in `sets.shared` and `sets.context`. p_hat is the
// model mass of the hint grams sharing the transition's context.
BoostedScore BoostedProbability(const NgramModel& model, const BoostSets& sets,
                                double alpha, std::string_view password);

struct ObjectiveResult {
  double score = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;  // records whose password the model cannot score
  std::size_t clamped = 0;
};

// Mean over records of boosted_probability^exponent, each record boosted by
// the values of its own `attribute`.
ObjectiveResult ObjectiveS(std::span<const HintRecord> records,
                           std::string_view attribute, double alpha,
                           const NgramModel& model,
                           double exponent = kDefaultGuessExponent);

// lo, lo + step, ..., hi (inclusive, up to rounding).
std::vector<double> AlphaGrid(double lo = 1.0, double hi = kDefaultAlphaCap,
                              double step = 0.1);

struct AlphaEstimate {
  double alpha = 1.0;
  double ln_alpha = 0.0;
  int boost_level = 0;
  double objective = 0.0;
  std::vector<std::pair<double, double>> curve;  // (alpha, S*) per grid point
};

// argmin of ObjectiveS over the grid, ties to the smaller alpha. The grid
// must contain 1 and lie within [1, alpha_cap].
AlphaEstimate EstimateAlpha(std::span<const HintRecord> records,
                            std::string_view attribute,
                            std::vector<double> grid, const NgramModel& model,
                            double exponent = kDefaultGuessExponent,
                            unsigned threads = 1,
                            double alpha_cap = kDefaultAlphaCap);

struct GuessCurveFit {
  double exponent = kDefaultGuessExponent;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

// Fits index ~ p^exponent over the first `sample_count` guesses of a
// level-ordered enumeration (all lengths at level 0, then all at -1, ...).
// The guess index is the controlled variable, so ln(p) is regressed on
// ln(index) and the slope inverted; intercept is that of ln(index) against
// ln(p). Throws Error(kFit) when every sampled probability is the same.
GuessCurveFit FitGuessCurve(const NgramModel& model, std::size_t sample_count,
                            LengthRange lengths = {});

// FitGuessCurve's exponent, or kDefaultGuessExponent when the fit fails.
double GuessExponentOrDefault(const NgramModel& model, std::size_t sample_count,
                              LengthRange lengths = {});

struct AttributeBoost {
  double alpha = 1.0;
  int boost_level = 0;
};

// Per-attribute boosting parameters. CSV: attribute,alpha,boostLevel.
struct BoostProfile {
  std::map<std::string, AttributeBoost> attributes;

  void Set(const std::string& attribute, double alpha,
           double alpha_cap = kDefaultAlphaCap);
  int LevelFor(std::string_view attribute) const;
};

BoostProfile ParseProfile(std::string_view csv);
BoostProfile LoadProfile(const std::string& path);
std::string SerializeProfile(const BoostProfile& profile);
void SaveProfile(const BoostProfile& profile, const std::string& path);

// Level table for one target: every model gram occurring in a value of an
// attribute with boost level >= 1 gains that level (largest wins). email is
// never boosted.
LevelTable PlusLevelTable(
    const NgramModel& model, const BoostProfile& profile,
    const std::map<std::string, std::vector<std::string>>& attributes);

ScheduledStream PlusStream(
    const NgramModel& model, const BoostProfile& profile,
    const std::map<std::string, std::vector<std::string>>& attributes,
    LengthRange lengths, std::uint64_t budget, SuccessOracle oracle = {});

}  // namespace omen

#endif  // OMEN_BOOST_H_
