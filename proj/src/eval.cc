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

#include "eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.h"

namespace omen {

TestSet::TestSet(std::span<const std::string> passwords, bool unique) {
  for (const std::string& pw : passwords) ++slots_[pw].count;
  if (unique) {
    for (auto& [pw, slot] : slots_) slot.count = 1;
  }
  for (const auto& [pw, slot] : slots_) total_ += slot.count;
}

bool TestSet::Contains(std::string_view guess) const {
  return slots_.find(std::string(guess)) != slots_.end();
}

std::uint64_t TestSet::Crack(std::string_view guess) {
  auto it = slots_.find(std::string(guess));
  if (it == slots_.end() || it->second.cracked) return 0;
  it->second.cracked = true;
  return it->second.count;
}

std::vector<std::uint64_t> ParseCheckpoints(std::string_view list) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string item(list.substr(start, end - start));
    start = end + 1;
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw Error(ErrorCode::kParameter, "empty checkpoint");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParameter, "bad checkpoint '" + item + "'");
    }
    if (!(v >= 1.0) || v != std::floor(v) || v > 1.8e19) {
      throw Error(ErrorCode::kParameter,
                  "checkpoint '" + item + "' is not a positive integer");
    }
    const auto c = static_cast<std::uint64_t>(v);
    if (!out.empty() && c <= out.back()) {
      throw Error(ErrorCode::kParameter, "checkpoints must be strictly ascending");
    }
    out.push_back(c);
    if (end == list.size()) break;
  }
  return out;
}

CrackCurve ComputeCrackCurve(GuessSource& stream,
                             std::span<const std::string> test_set,
                             std::span<const std::uint64_t> checkpoints,
                             bool unique) {
  if (test_set.empty()) throw Error(ErrorCode::kParameter, "empty test set");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw Error(ErrorCode::kParameter, "checkpoints must be strictly ascending");
    }
  }
  TestSet targets(test_set, unique);
  const double total = static_cast<double>(targets.total());
  CrackCurve curve;
  curve.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  std::uint64_t guesses = 0;
  std::uint64_t cracked = 0;
  Guess g;
  bool live = true;
  for (std::uint64_t cp : checkpoints) {
    while (live && guesses < cp) {
      if (!stream.Next(g)) {
        live = false;
        break;
      }
      ++guesses;
      cracked += targets.Crack(g.text);
    }
    curve.fractions.push_back(static_cast<double>(cracked) / total);
  }
  return curve;
}

bool VectorSource::Next(Guess& out) {
  if (pos_ >= guesses_.size()) return false;
  out.text = guesses_[pos_++];
  out.length = static_cast<int>(out.text.size());
  out.level = 0;
  return true;
}

std::string SerializeCurve(const CrackCurve& curve) {
  std::string out = "guesses,fraction\n";
  char buf[64];
  for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%llu,%.17g\n",
                  static_cast<unsigned long long>(curve.checkpoints[i]),
                  curve.fractions[i]);
    out += buf;
  }
  return out;
}

CrackCurve ParseCurve(std::string_view csv) {
  CrackCurve curve;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "guesses,fraction") continue;
    const auto comma = line.find(',');
    auto fail = [line_no]() {
      return Error(ErrorCode::kParse,
                   "curve line " + std::to_string(line_no) + ": expected guesses,fraction");
    };
    if (comma == std::string::npos) throw fail();
    std::uint64_t cp = 0;
    const std::string head = line.substr(0, comma);
    auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), cp);
    if (ec != std::errc() || p != head.data() + head.size()) throw fail();
    double f = 0.0;
    try {
      std::size_t used = 0;
      const std::string tail = line.substr(comma + 1);
      f = std::stod(tail, &used);
      if (used != tail.size()) throw fail();
    } catch (const std::invalid_argument&) {
      throw fail();
    } catch (const std::out_of_range&) {
      throw fail();
    }
    if (!curve.checkpoints.empty() && cp <= curve.checkpoints.back()) {
      throw Error(ErrorCode::kParse, "curve checkpoints must be ascending");
    }
    curve.checkpoints.push_back(cp);
    curve.fractions.push_back(f);
  }
  return curve;
}

void ExportCurve(const CrackCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << SerializeCurve(curve);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

CrackCurve ImportCurve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCurve(buf.str());
}

CurveComparison CompareCurves(const CrackCurve& a, const CrackCurve& b) {
  if (a.checkpoints != b.checkpoints) {
    throw Error(ErrorCode::kComparison, "curves use different checkpoints");
  }
  CurveComparison cmp;
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    if (a.fractions[i] >= b.fractions[i]) cmp.a_dominates.push_back(a.checkpoints[i]);
    cmp.max_gap = std::max(cmp.max_gap, std::abs(a.fractions[i] - b.fractions[i]));
  }
  if (!a.checkpoints.empty()) {
    cmp.dominated_share = static_cast<double>(cmp.a_dominates.size()) /
                          static_cast<double>(a.checkpoints.size());
  }
  return cmp;
}

}  // namespace omen
