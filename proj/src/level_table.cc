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

#include "level_table.h"

#include <algorithm>

namespace omen {

void LevelTable::Bucket(std::span<const std::int8_t> levels, int level_count,
                        std::uint32_t* offsets, std::uint8_t* chars) {
  // offsets are relative to `chars`; slot s holds level -s.
  std::vector<std::uint32_t> counts(level_count + 1, 0);
  for (std::int8_t l : levels) ++counts[-l + 1];
  for (int s = 0; s < level_count; ++s) counts[s + 1] += counts[s];
  std::copy(counts.begin(), counts.end(), offsets);
  for (std::size_t z = 0; z < levels.size(); ++z) {
    chars[counts[-levels[z]]++] = static_cast<std::uint8_t>(z);
  }
}

LevelTable::LevelTable(const NgramModel& model) {
  auto base = std::make_shared<Base>();
  base->alphabet = model.alphabet();
  base->order = model.order();
  base->level_count = model.level_count();
  base->initial_level.assign(model.initial_levels().begin(),
                             model.initial_levels().end());
  base->cond_level.assign(model.cond_levels().begin(),
                          model.cond_levels().end());

  const int lc = base->level_count;
  base->initial_offsets.assign(lc + 1, 0);
  for (std::int8_t l : base->initial_level) ++base->initial_offsets[-l + 1];
  for (int s = 0; s < lc; ++s) base->initial_offsets[s + 1] += base->initial_offsets[s];
  base->initial_grams.resize(base->initial_level.size());
  {
    std::vector<std::uint32_t> fill(base->initial_offsets.begin(),
                                    base->initial_offsets.end() - 1);
    for (std::size_t g = 0; g < base->initial_level.size(); ++g) {
      base->initial_grams[fill[-base->initial_level[g]]++] =
          static_cast<std::uint32_t>(g);
    }
  }

  const std::size_t sigma = base->alphabet.size();
  const std::size_t contexts = base->initial_level.size();
  base->next_offsets.assign(contexts * lc + 1, 0);
  base->next_chars.resize(contexts * sigma);
  std::vector<std::uint32_t> local(lc + 1);
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    std::span<const std::int8_t> levels(base->cond_level.data() + ctx * sigma,
                                        sigma);
    Bucket(levels, lc, local.data(), base->next_chars.data() + ctx * sigma);
    for (int s = 0; s <= lc; ++s) {
      base->next_offsets[ctx * lc + s] =
          static_cast<std::uint32_t>(ctx * sigma) + local[s];
    }
  }
  base_ = std::move(base);
}

LevelTable LevelTable::WithBoostedGrams(
    std::span<const std::pair<std::size_t, int>> gram_boosts) const {
  const std::size_t sigma = alphabet_size();
  std::unordered_map<std::size_t, int> best;
  for (const auto& [gram, boost] : gram_boosts) {
    if (boost <= 0 || gram >= base_->cond_level.size()) continue;
    int& b = best[gram];
    b = std::max(b, boost);
  }
  auto overlay = std::make_shared<Overlay>(overlay_ ? *overlay_ : Overlay{});
  for (const auto& [gram, boost] : best) {
    const std::size_t ctx = gram / sigma;
    auto [it, inserted] = overlay->try_emplace(ctx);
    ContextOverride& ov = it->second;
    if (inserted) {
      ov.levels.assign(base_->cond_level.begin() + ctx * sigma,
                       base_->cond_level.begin() + (ctx + 1) * sigma);
    }
    const std::size_t z = gram % sigma;
    ov.levels[z] = static_cast<std::int8_t>(std::min(0, ov.levels[z] + boost));
  }
  for (auto& [ctx, ov] : *overlay) {
    ov.offsets.assign(level_count() + 1, 0);
    ov.chars.assign(sigma, 0);
    Bucket(ov.levels, level_count(), ov.offsets.data(), ov.chars.data());
  }
  return LevelTable(base_, std::move(overlay));
}

int LevelTable::cond_level(std::size_t context, int next) const {
  if (overlay_ && !overlay_->empty()) {
    auto it = overlay_->find(context);
    if (it != overlay_->end()) return it->second.levels[next];
  }
  return base_->cond_level[context * alphabet_size() + next];
}

std::span<const std::uint32_t> LevelTable::InitialsAt(int level) const {
  if (level > 0 || level < min_level()) return {};
  const int s = -level;
  const std::uint32_t* data = base_->initial_grams.data();
  return {data + base_->initial_offsets[s], data + base_->initial_offsets[s + 1]};
}

std::span<const std::uint8_t> LevelTable::NextAt(std::size_t context,
                                                 int level) const {
  if (level > 0 || level < min_level()) return {};
  const int s = -level;
  if (overlay_ && !overlay_->empty()) {
    auto it = overlay_->find(context);
    if (it != overlay_->end()) {
      const ContextOverride& ov = it->second;
      return {ov.chars.data() + ov.offsets[s], ov.chars.data() + ov.offsets[s + 1]};
    }
  }
  const std::size_t slot = context * level_count() + s;
  const std::uint8_t* data = base_->next_chars.data();
  return {data + base_->next_offsets[slot], data + base_->next_offsets[slot + 1]};
}

}  // namespace omen
