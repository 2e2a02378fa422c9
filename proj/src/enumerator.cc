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

#include "enumerator.h"

#include <algorithm>
#include <limits>

namespace omen {

LevelVectorIterator::LevelVectorIterator(int eta, int size, int min_level)
    : size_(size), min_level_(min_level) {
  if (size <= 0 || eta > 0 || eta < size * min_level) {
    done_ = true;
    return;
  }
  entries_.assign(size, 0);
  FillFrom(0, eta);
}

void LevelVectorIterator::FillFrom(int first, int remaining) {
  for (int j = first; j < size_; ++j) {
    const int a = std::min(0, remaining - (size_ - 1 - j) * min_level_);
    entries_[j] = a;
    remaining -= a;
  }
}

void LevelVectorIterator::AdvanceWithin(int last_entry) {
  if (done_) return;
  const int limit = std::min(last_entry, size_ - 2);
  int suffix = 0;
  for (int j = limit + 1; j < size_; ++j) suffix += entries_[j];
  for (int i = limit; i >= 0; --i) {
    if (entries_[i] > min_level_ && suffix < 0) {
      --entries_[i];
      FillFrom(i + 1, suffix + 1);
      return;
    }
    suffix += entries_[i];
  }
  done_ = true;
}

std::vector<std::vector<int>> EnumLevelVectors(int eta, int size,
                                               int min_level) {
  std::vector<std::vector<int>> out;
  for (LevelVectorIterator it(eta, size, min_level); !it.done(); it.Advance()) {
    out.push_back(it.current());
  }
  return out;
}

PasswordEnumerator::PasswordEnumerator(LevelTable table, int eta, int length)
    : table_(std::move(table)),
      eta_(eta),
      length_(length),
      prefix_(table_.order() - 1),
      entries_(LevelVectorSize(length, table_.order())),
      vectors_(length >= prefix_ ? eta : 1, entries_, table_.min_level()) {
  const std::size_t n = entries_ > 0 ? static_cast<std::size_t>(entries_) : 0;
  next_lists_.assign(n, nullptr);
  next_sizes_.assign(n, 0);
  cursor_.assign(n, 0);
  context_.assign(n, 0);
  ranks_.assign(length > 0 ? static_cast<std::size_t>(length) : 0, 0);
}

bool PasswordEnumerator::StartVector() {
  reached_ = -1;
  depth_ = 0;
  cursor_[0] = 0;
  initials_ = table_.InitialsAt(vectors_.current()[0]);
  in_vector_ = true;
  return true;
}

bool PasswordEnumerator::Descend(bool resume) {
  const std::vector<int>& vec = vectors_.current();
  const std::size_t sigma = table_.alphabet_size();
  if (resume) ++cursor_[depth_];
  while (true) {
    const std::size_t size = depth_ == 0 ? initials_.size() : next_sizes_[depth_];
    if (cursor_[depth_] >= size) {
      if (depth_ == 0) return false;
      --depth_;
      ++cursor_[depth_];
      continue;
    }
    std::size_t ctx;
    if (depth_ == 0) {
      ctx = initials_[cursor_[0]];
      std::size_t g = ctx;
      for (int i = prefix_ - 1; i >= 0; --i) {
        ranks_[i] = static_cast<int>(g % sigma);
        g /= sigma;
      }
    } else {
      const int r = next_lists_[depth_][cursor_[depth_]];
      ranks_[prefix_ + depth_ - 1] = r;
      ctx = table_.ShiftContext(context_[depth_], r);
    }
    reached_ = std::max(reached_, depth_);
    if (depth_ == entries_ - 1) return true;
    ++depth_;
    context_[depth_] = ctx;
    const auto next = table_.NextAt(ctx, vec[depth_]);
    next_lists_[depth_] = next.data();
    next_sizes_[depth_] = next.size();
    cursor_[depth_] = 0;
  }
}

bool PasswordEnumerator::Next(Guess& out) {
  while (!vectors_.done()) {
    bool found;
    if (!in_vector_) {
      StartVector();
      found = Descend(false);
    } else {
      found = Descend(true);
    }
    if (found) {
      out.text.resize(ranks_.size());
      for (std::size_t i = 0; i < ranks_.size(); ++i) {
        out.text[i] = table_.alphabet().at(ranks_[i]);
      }
      out.level = eta_;
      out.length = length_;
      return true;
    }
    in_vector_ = false;
    if (reached_ < entries_ - 1) {
      vectors_.AdvanceWithin(reached_ + 1);
    } else {
      vectors_.Advance();
    }
  }
  return false;
}

std::uint64_t CountGuesses(const LevelTable& table, int eta, int length) {
  const int prefix = table.order() - 1;
  if (length < prefix || eta > 0 || eta < MinTotalLevel(table, length)) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto add = [](std::uint64_t a, std::uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };
  const int deficit = -eta;
  const std::size_t width = static_cast<std::size_t>(deficit) + 1;
  const std::size_t contexts = table.context_count();
  const int deepest_step = table.level_count() - 1;

  std::vector<std::uint64_t> dp(contexts * width, 0);
  for (int s = 0; s <= std::min(deepest_step, deficit); ++s) {
    for (std::uint32_t g : table.InitialsAt(-s)) dp[g * width + s] += 1;
  }
  std::vector<std::uint64_t> next(dp.size());
  for (int step = prefix; step < length; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
      for (int d = 0; d <= deficit; ++d) {
        const std::uint64_t c = dp[ctx * width + d];
        if (c == 0) continue;
        for (int s = 0; s <= std::min(deepest_step, deficit - d); ++s) {
          for (std::uint8_t z : table.NextAt(ctx, -s)) {
            std::uint64_t& slot = next[table.ShiftContext(ctx, z) * width + d + s];
            slot = add(slot, c);
          }
        }
      }
    }
    dp.swap(next);
  }
  std::uint64_t total = 0;
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    total = add(total, dp[ctx * width + deficit]);
  }
  return total;
}

}  // namespace omen
