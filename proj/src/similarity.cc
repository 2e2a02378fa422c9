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

#include "similarity.h"

#include <algorithm>
#include <map>
#include <numeric>

namespace omen {
namespace {

double TopShareMean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const std::size_t k = (values.size() * 5 + 99) / 100;
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += values[order[i]];
  return sum / static_cast<double>(k);
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace

CommonSubstring Lcss(std::string_view a, std::string_view b) {
  // run[j] = length of the common suffix of a[..i] and b[..j].
  std::vector<std::size_t> run(b.size() + 1, 0);
  std::size_t best = 0;
  std::size_t best_end = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = b.size(); j >= 1; --j) {
      if (a[i - 1] == b[j - 1]) {
        run[j] = run[j - 1] + 1;
        if (run[j] > best) {
          best = run[j];
          best_end = i;
        }
      } else {
        run[j] = 0;
      }
    }
  }
  return {best, std::string(a.substr(best_end - best, best))};
}

std::set<std::string> Ngrams(std::string_view s, std::size_t n) {
  std::set<std::string> grams;
  if (n == 0 || s.size() < n) return grams;
  const std::string lower = ToLower(s);
  for (std::size_t i = 0; i + n <= lower.size(); ++i) {
    grams.insert(lower.substr(i, n));
  }
  return grams;
}

double Jaccard3(std::string_view password, std::string_view hint) {
  const std::set<std::string> p = Ngrams(password, 3);
  if (p.empty()) return 0.0;
  const std::set<std::string> h = Ngrams(hint, 3);
  std::size_t shared = 0;
  for (const std::string& g : p) shared += h.count(g);
  return static_cast<double>(shared) / static_cast<double>(p.size());
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<SimilarityRow> AttributeStats(std::span<const HintRecord> records) {
  std::vector<SimilarityRow> rows;
  for (std::string_view name : kAttributeNames) {
    std::vector<double> js, lcss, len;
    for (const HintRecord& r : records) {
      const auto values = r.Values(name);
      if (values.empty()) continue;
      const std::string pw = ToLower(r.password);
      double best_js = 0.0;
      double best_lcss = 0.0;
      double total_len = 0.0;
      for (const std::string& v : values) {
        const std::string hint = ToLower(v);
        best_js = std::max(best_js, Jaccard3(pw, hint));
        best_lcss = std::max(best_lcss, static_cast<double>(Lcss(pw, hint).length));
        total_len += static_cast<double>(v.size());
      }
      js.push_back(best_js);
      lcss.push_back(best_lcss);
      len.push_back(total_len);
    }
    if (js.empty()) continue;
    SimilarityRow row;
    row.attribute = std::string(name);
    row.mean_js = Mean(js);
    row.js5 = TopShareMean(js);
    row.mean_lcss = Mean(lcss);
    row.lcss5 = TopShareMean(lcss);
    row.mean_length = Mean(len);
    row.records = js.size();
    rows.push_back(std::move(row));
  }
  return rows;
}

double RecordSimilarity(const HintRecord& record, std::string_view attribute) {
  double best = 0.0;
  if (attribute.empty() || attribute == "max") {
    for (const auto& [name, values] : record.attributes) {
      for (const std::string& v : values) {
        best = std::max(best, Jaccard3(record.password, v));
      }
    }
    return best;
  }
  for (const std::string& v : record.Values(attribute)) {
    best = std::max(best, Jaccard3(record.password, v));
  }
  return best;
}

std::vector<std::pair<double, double>> CdfSimilarity(
    std::span<const HintRecord> records, std::string_view attribute) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const HintRecord& r : records) values.push_back(RecordSimilarity(r, attribute));
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> cdf;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    cdf.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

const char* PolicyVerdictName(PolicyVerdict verdict) {
  switch (verdict) {
    case PolicyVerdict::kIdentical: return "identical";
    case PolicyVerdict::kTooSimilar: return "too-similar";
    case PolicyVerdict::kOk: return "ok";
  }
  return "ok";
}

PolicyVerdict PolicyCheck(std::string_view username, std::string_view password,
                          std::size_t min_edit_distance,
                          double jaccard_threshold) {
  const std::string user = ToLower(username);
  const std::string pass = ToLower(password);
  if (user == pass) return PolicyVerdict::kIdentical;
  if (EditDistance(user, pass) < min_edit_distance ||
      Jaccard3(pass, user) >= jaccard_threshold) {
    return PolicyVerdict::kTooSimilar;
  }
  return PolicyVerdict::kOk;
}

}  // namespace omen
