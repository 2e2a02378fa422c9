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

// Fixtures shared by the unit and acceptance tests: the two-letter toy
// model, random small models, exhaustive oracles and a synthetic
// Zipf-distributed password population with personal hints.

#ifndef OMEN_TESTS_TESTING_SYNTHETIC_H_
#define OMEN_TESTS_TESTING_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "corpus.h"
#include "level_table.h"
#include "model.h"

namespace omen::testing {

// Sigma = {a,b}, n = 3, L = 3 with the levels
//   L(aa)=0 L(ab)=-1 L(ba)=-1 L(bb)=0
//   L(a|aa)=-1 L(b|aa)=-1  L(a|ab)=0 L(b|ab)=-2
//   L(a|ba)=-1 L(b|ba)=-1  L(a|bb)=0 L(b|bb)=-2
NgramModel ToyModel();

// Random probability tables over the first `sigma` letters of "abcdefgh".
// Skew varies per context so that several levels are populated.
NgramModel RandomModel(std::mt19937_64& rng, int sigma, int order,
                       int level_count);

// Every string of `length` over the alphabet, in lexicographic order.
std::vector<std::string> AllStrings(const Alphabet& alphabet, int length);

// Sum of levels along `s` under `table` (overlays included).
int TableLevel(const LevelTable& table, const std::string& s);

// Uniform double in [0, 1) built from the top 53 bits.
double UnitDouble(std::mt19937_64& rng);

// A fixed vocabulary of syllable-built base words with optional digit
// suffixes and capitalisation; ranks are drawn from a Zipf law.
class ZipfPopulation {
 public:
  explicit ZipfPopulation(std::size_t vocabulary = 20000,
                          double exponent = 1.0,
                          std::uint64_t vocabulary_seed = 7);

  std::string Sample(std::mt19937_64& rng) const;
  std::vector<std::string> Sample(std::size_t count, std::uint64_t seed) const;
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::vector<double> cdf_;
};

// A random name-like lowercase token of 4..8 letters.
std::string RandomName(std::mt19937_64& rng);

// Hint records whose `attribute` holds a random name. A fraction
// `embed_share` of passwords are built from that name (name plus a short
// digit suffix); the rest are drawn from `population`.
std::vector<HintRecord> HintCorpus(const ZipfPopulation& population,
                                   std::size_t count, double embed_share,
                                   const std::string& attribute,
                                   std::uint64_t seed);

}  // namespace omen::testing

#endif  // OMEN_TESTS_TESTING_SYNTHETIC_H_
