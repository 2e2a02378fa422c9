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

#ifndef OMEN_CORPUS_H_
#define OMEN_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace omen {

// Ordered character set the model is defined over. Characters are single
// printable ASCII bytes; their position in the set is the "rank" used for
// dense gram indexing.
class Alphabet {
 public:
  // 26 lowercase, 26 uppercase, 10 digits and the specials "!@#$%^&*.-".
  static Alphabet Default();

  // Throws Error(kParameter) on duplicates, fewer than two characters or a
  // byte outside the printable ASCII range.
  static Alphabet FromString(std::string_view chars);

  // Reads a single-line alphabet file. Trailing newline is ignored.
  static Alphabet Load(const std::string& path);

  std::size_t size() const { return chars_.size(); }
  const std::string& chars() const { return chars_; }
  char at(std::size_t rank) const { return chars_[rank]; }

  // Rank of `c`, or -1 when `c` is not a member.
  int Rank(char c) const { return rank_[static_cast<unsigned char>(c)]; }
  bool Contains(char c) const { return Rank(c) >= 0; }
  bool ContainsAll(std::string_view s) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.chars_ == b.chars_;
  }

 private:
  explicit Alphabet(std::string chars);

  std::string chars_;
  std::array<int, 256> rank_{};
};

inline constexpr std::size_t kDefaultMinLength = 3;
inline constexpr std::size_t kDefaultMaxLength = 20;

struct Corpus {
  std::vector<std::string> passwords;
  std::size_t rejected_count = 0;
  std::map<std::size_t, std::size_t> length_histogram;

  std::size_t size() const { return passwords.size(); }
  bool empty() const { return passwords.empty(); }
};

// Builds a corpus from in-memory lines with the same filtering rules as
// LoadPasswords. Does not throw on an empty result.
Corpus FilterPasswords(std::span<const std::string> lines,
                       const Alphabet& alphabet, std::size_t min_length,
                       std::size_t max_length);

// One candidate per line. Lines with characters outside `alphabet` or a
// length outside [min_length, max_length] are dropped and counted. A trailing
// '\r' is stripped. Throws kIo when unreadable and kEmptyCorpus when nothing
// survives.
Corpus LoadPasswords(const std::string& path, const Alphabet& alphabet,
                     std::size_t min_length = kDefaultMinLength,
                     std::size_t max_length = kDefaultMaxLength);

void WritePasswords(const Corpus& corpus, const std::string& path);

// Deterministic seeded partition. The training part holds
// round(train_fraction * size) passwords; both parts keep input order.
struct CorpusSplit {
  Corpus train;
  Corpus test;
};
CorpusSplit Split(const Corpus& corpus, double train_fraction,
                  std::uint64_t seed);

// Personal attributes known for an account.
inline constexpr std::array<std::string_view, 10> kAttributeNames = {
    "email",    "userName", "firstName", "lastName", "birthday",
    "location", "contact",  "eduWork",   "friends",  "siblings"};

bool IsKnownAttribute(std::string_view name);

struct HintRecord {
  std::string password;
  std::map<std::string, std::vector<std::string>> attributes;

  // Values of `name`, or an empty span when absent.
  std::span<const std::string> Values(std::string_view name) const;

  friend bool operator==(const HintRecord&, const HintRecord&) = default;
};

// JSON-lines: {"password": "...", "attributes": {"userName": ["..."]}}.
// Blank lines are skipped. Throws kParse naming the 1-based line number.
std::vector<HintRecord> ParseHints(std::string_view text);
std::vector<HintRecord> LoadHints(const std::string& path);

std::string SerializeHints(std::span<const HintRecord> records);
void WriteHints(std::span<const HintRecord> records, const std::string& path);

std::string ToLower(std::string_view s);

}  // namespace omen

#endif  // OMEN_CORPUS_H_
