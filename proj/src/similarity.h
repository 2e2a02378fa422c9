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

#ifndef OMEN_SIMILARITY_H_
#define OMEN_SIMILARITY_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.h"

namespace omen {

struct CommonSubstring {
  std::size_t length = 0;
  std::string text;
};

// Longest common contiguous substring. Ties go to the earliest start in `a`.
// Case-sensitive.
CommonSubstring Lcss(std::string_view a, std::string_view b);

// Distinct lowercase n-grams of `s`, without padding.
std::set<std::string> Ngrams(std::string_view s, std::size_t n = 3);

// |P ∩ H| / |P| over lowercase 3-gram sets. 0 when the password is shorter
// than three characters.
double Jaccard3(std::string_view password, std::string_view hint);

std::size_t EditDistance(std::string_view a, std::string_view b);

struct SimilarityRow {
  std::string attribute;
  double mean_js = 0.0;
  double js5 = 0.0;      // mean over the top 5% records by JS
  double mean_lcss = 0.0;
  double lcss5 = 0.0;
  double mean_length = 0.0;  // total characters of the attribute's values
  std::size_t records = 0;
};

// One row per attribute present in at least one record, in attribute
// vocabulary order. Only records carrying the attribute contribute; a
// record's similarity is the maximum over its values.
std::vector<SimilarityRow> AttributeStats(std::span<const HintRecord> records);

// Empirical CDF of per-record Jaccard3 as (value, fraction <= value) at each
// distinct value. `attribute` empty or "max" takes the per-record maximum
// over all attributes. Records without the attribute score 0.
std::vector<std::pair<double, double>> CdfSimilarity(
    std::span<const HintRecord> records, std::string_view attribute);

// Per-record Jaccard3 against the best value of `attribute` (or the best over
// all attributes for "max").
double RecordSimilarity(const HintRecord& record, std::string_view attribute);

enum class PolicyVerdict { kIdentical, kTooSimilar, kOk };

const char* PolicyVerdictName(PolicyVerdict verdict);

inline constexpr std::size_t kDefaultMinEditDistance = 2;
inline constexpr double kDefaultPolicyJaccard = 0.5;

PolicyVerdict PolicyCheck(std::string_view username, std::string_view password,
                          std::size_t min_edit_distance = kDefaultMinEditDistance,
                          double jaccard_threshold = kDefaultPolicyJaccard);

}  // namespace omen

#endif  // OMEN_SIMILARITY_H_
