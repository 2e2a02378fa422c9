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

#ifndef OMEN_MODEL_H_
#define OMEN_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.h"

namespace omen {

inline constexpr int kDefaultOrder = 3;
inline constexpr int kDefaultLevelCount = 10;
inline constexpr double kDefaultSmoothing = 0.01;
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Constants of the level map  level = round(ln(c1 * p + c2)).
struct LevelCalibration {
  double c1 = 1.0;
  double c2 = 1.0;
};

// Picks c1, c2 so that `p_max` maps to level 0 and probability 0 maps to
// -(level_count - 1). Throws Error(kCalibration) unless 0 < p_max <= 1.
LevelCalibration Calibrate(double p_max, int level_count);

// Level of `prob`, clamped to [-(level_count - 1), 0]. Non-decreasing in
// `prob`.
int Discretize(double prob, const LevelCalibration& calibration,
               int level_count);

struct TrainOptions {
  int order = kDefaultOrder;
  int level_count = kDefaultLevelCount;
  double smoothing = kDefaultSmoothing;
};

// Character n-gram Markov model with dense tables.
//
// Grams are indexed in lexicographic alphabet-rank order with the first
// character most significant, so the conditional index of gram c1..cn is
// context_index(c1..c(n-1)) * |alphabet| + rank(cn). Immutable once built.
class NgramModel {
 public:
  // Add-delta estimates: initial (n-1)-grams are counted at the start of each
  // password, transitions over every n-gram. Throws kTraining when no
  // password is long enough to contribute an initial gram.
  static NgramModel Train(const Corpus& corpus, const Alphabet& alphabet,
                          const TrainOptions& options = {});

  // Builds a model from explicit probability tables and derives levels.
  static NgramModel FromProbabilities(Alphabet alphabet, int order,
                                      int level_count,
                                      std::vector<double> initial_prob,
                                      std::vector<double> cond_prob,
                                      double smoothing = 0.0);

  // Builds a model whose levels are given verbatim. Probabilities are set to
  // exp(level) normalised within each table or context.
  static NgramModel FromLevels(Alphabet alphabet, int order, int level_count,
                               std::vector<int> initial_level,
                               std::vector<int> cond_level);

  static NgramModel Load(const std::string& path);
  static NgramModel Deserialize(std::span<const std::uint8_t> bytes);
  void Save(const std::string& path) const;
  std::vector<std::uint8_t> Serialize() const;

  const Alphabet& alphabet() const { return alphabet_; }
  int order() const { return order_; }
  int level_count() const { return level_count_; }
  int min_level() const { return -(level_count_ - 1); }
  double smoothing() const { return smoothing_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  std::size_t context_count() const { return initial_prob_.size(); }

  const LevelCalibration& initial_calibration() const { return initial_cal_; }
  const LevelCalibration& cond_calibration() const { return cond_cal_; }

  std::span<const double> initial_probs() const { return initial_prob_; }
  std::span<const double> cond_probs() const { return cond_prob_; }
  std::span<const std::int8_t> initial_levels() const { return initial_level_; }
  std::span<const std::int8_t> cond_levels() const { return cond_level_; }

  double initial_prob(std::size_t context) const {
    return initial_prob_[context];
  }
  double cond_prob(std::size_t context, int next) const {
    return cond_prob_[context * alphabet_.size() + next];
  }
  int initial_level(std::size_t context) const {
    return initial_level_[context];
  }
  int cond_level(std::size_t context, int next) const {
    return cond_level_[context * alphabet_.size() + next];
  }

  // Index of an (n-1)-gram. Throws kScoring on out-of-alphabet characters.
  std::size_t ContextIndex(std::string_view gram) const;
  // Context index reached after appending `next` to `context`.
  std::size_t ShiftContext(std::size_t context, int next) const {
    return (context * alphabet_.size() + next) % context_count();
  }
  std::string ContextString(std::size_t context) const;

  // Product of the initial probability and every transition. Throws
  // kScoring for passwords shorter than n-1 or with foreign characters.
  double Probability(std::string_view password) const;
  double LogProbability(std::string_view password) const;
  // Sum of the initial level and every transition level; always <= 0.
  int Level(std::string_view password) const;

 private:
  NgramModel(Alphabet alphabet, int order, int level_count, double smoothing);

  std::vector<int> Ranks(std::string_view password) const;
  void Recalibrate();
  void AssignLevels();

  Alphabet alphabet_;
  int order_;
  int level_count_;
  double smoothing_;
  LevelCalibration initial_cal_;
  LevelCalibration cond_cal_;
  std::vector<double> initial_prob_;
  std::vector<double> cond_prob_;
  std::vector<std::int8_t> initial_level_;
  std::vector<std::int8_t> cond_level_;
};

}  // namespace omen

#endif  // OMEN_MODEL_H_
