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

#ifndef OMEN_LEVEL_TABLE_H_
#define OMEN_LEVEL_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "model.h"

namespace omen {

// Level-indexed view of a model used by enumeration: for every level it lists
// the initial grams at that level, and for every (context, level) pair the
// next characters at that level, in alphabet order.
//
// Copies are cheap; the dense index is shared. Boosted tables store only the
// contexts they touch.
class LevelTable {
 public:
  explicit LevelTable(const NgramModel& model);

  // Raises the level of each listed conditional gram (dense gram index) by
  // its boost, clamped at 0. When a gram is listed more than once the
  // largest boost applies. Grams with non-positive boost are ignored.
  LevelTable WithBoostedGrams(
      std::span<const std::pair<std::size_t, int>> gram_boosts) const;

  const Alphabet& alphabet() const { return base_->alphabet; }
  std::size_t alphabet_size() const { return base_->alphabet.size(); }
  int order() const { return base_->order; }
  int level_count() const { return base_->level_count; }
  int min_level() const { return -(base_->level_count - 1); }
  std::size_t context_count() const { return base_->initial_level.size(); }
  bool boosted() const { return overlay_ && !overlay_->empty(); }

  int initial_level(std::size_t context) const {
    return base_->initial_level[context];
  }
  int cond_level(std::size_t context, int next) const;

  std::span<const std::uint32_t> InitialsAt(int level) const;
  std::span<const std::uint8_t> NextAt(std::size_t context, int level) const;

  std::size_t ShiftContext(std::size_t context, int next) const {
    return (context * alphabet_size() + next) % context_count();
  }

 private:
  struct Base {
    Alphabet alphabet = Alphabet::Default();
    int order = 0;
    int level_count = 0;
    std::vector<std::int8_t> initial_level;
    std::vector<std::int8_t> cond_level;
    std::vector<std::uint32_t> initial_offsets;  // level_count + 1
    std::vector<std::uint32_t> initial_grams;
    std::vector<std::uint32_t> next_offsets;     // contexts * level_count + 1
    std::vector<std::uint8_t> next_chars;
  };
  struct ContextOverride {
    std::vector<std::int8_t> levels;      // alphabet_size
    std::vector<std::uint32_t> offsets;   // level_count + 1
    std::vector<std::uint8_t> chars;
  };
  using Overlay = std::unordered_map<std::size_t, ContextOverride>;

  LevelTable(std::shared_ptr<const Base> base,
             std::shared_ptr<const Overlay> overlay)
      : base_(std::move(base)), overlay_(std::move(overlay)) {}

  static void Bucket(std::span<const std::int8_t> levels, int level_count,
                     std::uint32_t* offsets, std::uint8_t* chars);

  std::shared_ptr<const Base> base_;
  std::shared_ptr<const Overlay> overlay_;
};

}  // namespace omen

#endif  // OMEN_LEVEL_TABLE_H_
