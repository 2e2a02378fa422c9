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

#include "scheduler.h"

#include <algorithm>

#include "error.h"

namespace omen {

bool SchedulesBefore(const ScheduleEntry& a, const ScheduleEntry& b) {
  if (a.success != b.success) return a.success > b.success;
  if (a.length != b.length) return a.length < b.length;
  return a.level > b.level;
}

void ScheduleState::Insert(const ScheduleEntry& entry) {
  auto pos = std::upper_bound(entries.begin(), entries.end(), entry,
                              SchedulesBefore);
  entries.insert(pos, entry);
}

ScheduleEntry ScheduleState::PopHead() {
  ScheduleEntry head = entries.front();
  entries.erase(entries.begin());
  return head;
}

void ValidateLengths(const LevelTable& table, LengthRange lengths) {
  if (lengths.min > lengths.max) {
    throw Error(ErrorCode::kParameter, "empty length range");
  }
  if (lengths.min < std::max(1, table.order() - 1)) {
    throw Error(ErrorCode::kParameter,
                "minimum length is shorter than the model context");
  }
}

BatchResult RunBatch(const LevelTable& table, int level, int length,
                     const SuccessOracle& oracle) {
  BatchResult result;
  PasswordEnumerator batch(table, level, length);
  Guess g;
  while (batch.Next(g)) {
    ++result.generated;
    if (oracle && oracle(g.text)) ++result.hits;
  }
  return result;
}

ScheduleState ScheduleInit(const LevelTable& table, LengthRange lengths,
                           const SuccessOracle& oracle) {
  ValidateLengths(table, lengths);
  ScheduleState state;
  for (int len = lengths.min; len <= lengths.max; ++len) {
    const BatchResult r = RunBatch(table, 0, len, oracle);
    state.guesses_made += r.generated;
    state.cracked += r.hits;
    state.Insert({r.success(), 0, len});
  }
  return state;
}

ScheduleState NextStep(ScheduleState state, const LevelTable& table,
                       const SuccessOracle& oracle) {
  if (state.empty()) return state;
  const ScheduleEntry head = state.PopHead();
  const int level = head.level - 1;
  if (level < MinTotalLevel(table, head.length)) return state;
  const BatchResult r = RunBatch(table, level, head.length, oracle);
  state.guesses_made += r.generated;
  state.cracked += r.hits;
  state.Insert({r.success(), level, head.length});
  return state;
}

ScheduledStream::ScheduledStream(LevelTable table, LengthRange lengths,
                                 std::uint64_t budget, SuccessOracle oracle)
    : table_(std::move(table)),
      lengths_(lengths),
      budget_(budget),
      oracle_(std::move(oracle)),
      next_initial_length_(lengths.min) {
  ValidateLengths(table_, lengths_);
}

bool ScheduledStream::StartNextBatch() {
  if (next_initial_length_ <= lengths_.max) {
    const int len = next_initial_length_++;
    batch_.emplace(table_, 0, len);
  } else {
    while (true) {
      if (state_.empty()) return false;
      const ScheduleEntry head = state_.PopHead();
      const int level = head.level - 1;
      if (level < MinTotalLevel(table_, head.length)) continue;
      batch_.emplace(table_, level, head.length);
      break;
    }
  }
  batch_result_ = {};
  batches_.emplace_back(batch_->length(), batch_->eta());
  return true;
}

void ScheduledStream::FinishBatch() {
  state_.Insert({batch_result_.success(), batch_->eta(), batch_->length()});
  batch_.reset();
}

bool ScheduledStream::Next(Guess& out) {
  while (emitted_ < budget_) {
    if (!batch_ && !StartNextBatch()) return false;
    if (batch_->Next(out)) {
      ++emitted_;
      ++batch_result_.generated;
      ++state_.guesses_made;
      if (oracle_ && oracle_(out.text)) {
        ++batch_result_.hits;
        ++state_.cracked;
      }
      return true;
    }
    FinishBatch();
  }
  return false;
}

}  // namespace omen
