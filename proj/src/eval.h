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

#ifndef OMEN_EVAL_H_
#define OMEN_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "enumerator.h"

namespace omen {

// Cracked fraction after each checkpoint (number of guesses).
struct CrackCurve {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> fractions;

  friend bool operator==(const CrackCurve&, const CrackCurve&) = default;
};

// Plaintext test set. Each occurrence of a password counts separately unless
// `unique` collapses duplicates.
class TestSet {
 public:
  explicit TestSet(std::span<const std::string> passwords, bool unique = false);

  std::uint64_t total() const { return total_; }
  bool Contains(std::string_view guess) const;
  // Marks `guess` cracked; returns how many test entries it cracked now (0
  // for misses and repeated guesses).
  std::uint64_t Crack(std::string_view guess);

 private:
  struct Slot {
    std::uint64_t count = 0;
    bool cracked = false;
  };
  std::unordered_map<std::string, Slot> slots_;
  std::uint64_t total_ = 0;
};

// Parses "1e3,1e4,1000" into ascending integers. Throws kParameter on
// malformed, non-positive or non-ascending values.
std::vector<std::uint64_t> ParseCheckpoints(std::string_view list);

// Consumes `stream` up to the last checkpoint. A stream that runs dry leaves
// the remaining checkpoints at the final fraction.
CrackCurve ComputeCrackCurve(GuessSource& stream,
                             std::span<const std::string> test_set,
                             std::span<const std::uint64_t> checkpoints,
                             bool unique = false);

// Serves a fixed list of guesses.
class VectorSource : public GuessSource {
 public:
  explicit VectorSource(std::vector<std::string> guesses)
      : guesses_(std::move(guesses)) {}
  bool Next(Guess& out) override;

 private:
  std::vector<std::string> guesses_;
  std::size_t pos_ = 0;
};

// CSV with header "guesses,fraction".
std::string SerializeCurve(const CrackCurve& curve);
CrackCurve ParseCurve(std::string_view csv);
void ExportCurve(const CrackCurve& curve, const std::string& path);
CrackCurve ImportCurve(const std::string& path);

struct CurveComparison {
  std::vector<std::uint64_t> a_dominates;  // checkpoints where a >= b
  double max_gap = 0.0;                    // max |a - b|
  double dominated_share = 0.0;            // |a_dominates| / checkpoints
};

// Throws Error(kComparison) unless both curves use the same checkpoints.
CurveComparison CompareCurves(const CrackCurve& a, const CrackCurve& b);

}  // namespace omen

#endif  // OMEN_EVAL_H_
