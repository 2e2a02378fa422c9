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

#ifndef OMEN_ENUMERATOR_H_
#define OMEN_ENUMERATOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "level_table.h"

namespace omen {

struct Guess {
  std::string text;
  int level = 0;
  int length = 0;
};

// Pull-style stream of guesses.
class GuessSource {
 public:
  virtual ~GuessSource() = default;
  // Writes the next guess into `out`; false once the stream is exhausted.
  virtual bool Next(Guess& out) = 0;
};

// Every integer vector of `size` entries in [min_level, 0] summing to `eta`,
// in lexicographically descending order. Infeasible targets yield nothing.
class LevelVectorIterator {
 public:
  LevelVectorIterator(int eta, int size, int min_level);

  bool done() const { return done_; }
  const std::vector<int>& current() const { return entries_; }

  void Advance() { AdvanceWithin(size_ - 1); }
  // Moves to the next vector that differs from the current one somewhere in
  // entries [0, last_entry]; vectors sharing that prefix are skipped.
  void AdvanceWithin(int last_entry);

 private:
  void FillFrom(int first, int remaining);

  int size_;
  int min_level_;
  bool done_ = false;
  std::vector<int> entries_;
};

// Convenience for tests and tools: all vectors materialised.
std::vector<std::vector<int>> EnumLevelVectors(int eta, int size,
                                               int min_level);

// Number of level-vector entries for a password of `length` characters: one
// for the initial (n-1)-gram plus one per transition.
inline int LevelVectorSize(int length, int order) {
  return length - (order - 2);
}
// Lowest reachable total level for passwords of `length`.
inline int MinTotalLevel(const LevelTable& table, int length) {
  return table.min_level() * LevelVectorSize(length, table.order());
}

// Streams every password of `length` whose initial level plus transition
// levels equals `eta`. Vectors are visited in descending lexicographic order
// and characters in alphabet order, so the stream is deterministic for a
// fixed table. Prefixes that admit no password prune every vector sharing
// them.
class PasswordEnumerator : public GuessSource {
 public:
  PasswordEnumerator(LevelTable table, int eta, int length);

  bool Next(Guess& out) override;

  int eta() const { return eta_; }
  int length() const { return length_; }

 private:
  bool StartVector();
  bool Descend(bool resume);

  LevelTable table_;
  int eta_;
  int length_;
  int prefix_;  // n - 1
  int entries_;
  LevelVectorIterator vectors_;
  bool in_vector_ = false;
  int depth_ = 0;
  int reached_ = -1;
  std::vector<const std::uint8_t*> next_lists_;
  std::vector<std::size_t> next_sizes_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> context_;  // context before each transition
  std::vector<int> ranks_;
  std::span<const std::uint32_t> initials_;
};

// Size of PasswordEnumerator(table, eta, length) by dynamic programming over
// (context, accumulated level). Saturates at UINT64_MAX.
std::uint64_t CountGuesses(const LevelTable& table, int eta, int length);

}  // namespace omen

#endif  // OMEN_ENUMERATOR_H_
