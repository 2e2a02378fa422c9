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

#ifndef OMEN_SCHEDULER_H_
#define OMEN_SCHEDULER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "enumerator.h"
#include "level_table.h"

namespace omen {

// Tells the scheduler whether a guess hit. In evaluation mode this is
// membership in a plaintext test set; an attack would plug in a hash check.
// An empty function means "never hits".
using SuccessOracle = std::function<bool(std::string_view)>;

struct ScheduleEntry {
  double success = 0.0;  // hits / guesses of the last batch, 0 for empty ones
  int level = 0;         // last level executed for `length`
  int length = 0;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

// Higher success first; equal success favours the shorter length.
bool SchedulesBefore(const ScheduleEntry& a, const ScheduleEntry& b);

struct ScheduleState {
  std::vector<ScheduleEntry> entries;  // kept ordered by SchedulesBefore
  std::uint64_t guesses_made = 0;
  std::uint64_t cracked = 0;

  bool empty() const { return entries.empty(); }
  void Insert(const ScheduleEntry& entry);
  ScheduleEntry PopHead();
};

struct LengthRange {
  int min = 3;
  int max = 20;
};

// Throws Error(kParameter) when the range is empty or shorter than the
// model's context.
void ValidateLengths(const LevelTable& table, LengthRange lengths);

struct BatchResult {
  std::uint64_t generated = 0;
  std::uint64_t hits = 0;

  double success() const {
    return generated == 0 ? 0.0
                          : static_cast<double>(hits) / static_cast<double>(generated);
  }
};

// Runs one full enumeration batch and asks the oracle about every guess.
BatchResult RunBatch(const LevelTable& table, int level, int length,
                     const SuccessOracle& oracle);

// Level-0 batch for every length, entries ordered by success.
ScheduleState ScheduleInit(const LevelTable& table, LengthRange lengths,
                           const SuccessOracle& oracle);

// Pops the most productive entry, runs the next lower level for its length
// and re-inserts it unless that level is below the feasible minimum.
ScheduleState NextStep(ScheduleState state, const LevelTable& table,
                       const SuccessOracle& oracle);

// Adaptive, budget-limited stream: level 0 for each length in order, then
// always the next level of the currently most successful length.
class ScheduledStream : public GuessSource {
 public:
  ScheduledStream(LevelTable table, LengthRange lengths, std::uint64_t budget,
                  SuccessOracle oracle = {});

  bool Next(Guess& out) override;

  const ScheduleState& state() const { return state_; }
  std::uint64_t emitted() const { return emitted_; }
  // (length, level) of every batch started so far, in order.
  const std::vector<std::pair<int, int>>& batches() const { return batches_; }

 private:
  bool StartNextBatch();
  void FinishBatch();

  LevelTable table_;
  LengthRange lengths_;
  std::uint64_t budget_;
  SuccessOracle oracle_;
  ScheduleState state_;
  std::uint64_t emitted_ = 0;
  int next_initial_length_;
  std::optional<PasswordEnumerator> batch_;
  BatchResult batch_result_;
  std::vector<std::pair<int, int>> batches_;
};

}  // namespace omen

#endif  // OMEN_SCHEDULER_H_
