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

#include "corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "error.h"
#include "json.hpp"

namespace omen {
namespace {

constexpr std::string_view kDefaultAlphabet =
    "abcdefghijklmnopqrstuvwxyz"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "0123456789"
    "!@#$%^&*.-";

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return buf.str();
}

// Splits on '\n'. A final line without terminator still counts; a file that
// ends in '\n' has no extra empty line.
std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

// Unbiased draw from [0, bound) using only the raw engine output, so the
// result does not depend on the standard library's distributions.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Corpus FromIndices(const Corpus& corpus, const std::vector<std::size_t>& idx) {
  Corpus out;
  out.passwords.reserve(idx.size());
  for (std::size_t i : idx) {
    const std::string& pw = corpus.passwords[i];
    out.passwords.push_back(pw);
    ++out.length_histogram[pw.size()];
  }
  return out;
}

}  // namespace

Alphabet::Alphabet(std::string chars) : chars_(std::move(chars)) {
  rank_.fill(-1);
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    rank_[static_cast<unsigned char>(chars_[i])] = static_cast<int>(i);
  }
}

Alphabet Alphabet::Default() { return Alphabet(std::string(kDefaultAlphabet)); }

Alphabet Alphabet::FromString(std::string_view chars) {
  if (chars.size() < 2) {
    throw Error(ErrorCode::kParameter, "alphabet needs at least 2 characters");
  }
  std::array<bool, 256> seen{};
  for (char c : chars) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u > 0x7e) {
      throw Error(ErrorCode::kParameter,
                  "alphabet characters must be printable ASCII");
    }
    if (seen[u]) {
      throw Error(ErrorCode::kParameter,
                  std::string("duplicate alphabet character '") + c + "'");
    }
    seen[u] = true;
  }
  return Alphabet(std::string(chars));
}

Alphabet Alphabet::Load(const std::string& path) {
  std::string text = ReadFile(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  if (text.find('\n') != std::string::npos) {
    throw Error(ErrorCode::kParameter, "alphabet file must be a single line");
  }
  return FromString(text);
}

bool Alphabet::ContainsAll(std::string_view s) const {
  return std::all_of(s.begin(), s.end(), [this](char c) { return Contains(c); });
}

Corpus FilterPasswords(std::span<const std::string> lines,
                       const Alphabet& alphabet, std::size_t min_length,
                       std::size_t max_length) {
  Corpus corpus;
  for (const std::string& line : lines) {
    if (line.size() < min_length || line.size() > max_length ||
        !alphabet.ContainsAll(line)) {
      ++corpus.rejected_count;
      continue;
    }
    corpus.passwords.push_back(line);
    ++corpus.length_histogram[line.size()];
  }
  return corpus;
}

Corpus LoadPasswords(const std::string& path, const Alphabet& alphabet,
                     std::size_t min_length, std::size_t max_length) {
  if (min_length > max_length) {
    throw Error(ErrorCode::kParameter, "min length exceeds max length");
  }
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  Corpus corpus = FilterPasswords(lines, alphabet, min_length, max_length);
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "no usable passwords in '" + path + "'");
  }
  return corpus;
}

void WritePasswords(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  for (const std::string& pw : corpus.passwords) out << pw << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

CorpusSplit Split(const Corpus& corpus, double train_fraction,
                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kParameter, "train fraction must lie in (0, 1)");
  }
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot split an empty corpus");
  }
  const std::size_t n = corpus.size();
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first n_train slots become the training set.
  for (std::size_t i = 0; i < n_train && i + 1 < n; ++i) {
    std::size_t j = i + UniformBelow(rng, n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> train(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test(order.begin() + n_train, order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {FromIndices(corpus, train), FromIndices(corpus, test)};
}

bool IsKnownAttribute(std::string_view name) {
  return std::find(kAttributeNames.begin(), kAttributeNames.end(), name) !=
         kAttributeNames.end();
}

std::span<const std::string> HintRecord::Values(std::string_view name) const {
  auto it = attributes.find(std::string(name));
  if (it == attributes.end()) return {};
  return it->second;
}

std::vector<HintRecord> ParseHints(std::string_view text) {
  using nlohmann::json;
  std::vector<HintRecord> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    auto fail = [line_no](const std::string& what) {
      return Error(ErrorCode::kParse,
                   "hints line " + std::to_string(line_no) + ": " + what);
    };
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) throw fail("record must be a JSON object");
    auto pw = doc.find("password");
    if (pw == doc.end() || !pw->is_string()) {
      throw fail("missing string field \"password\"");
    }
    HintRecord record;
    record.password = pw->get<std::string>();
    if (record.password.empty()) throw fail("empty password");

    auto attrs = doc.find("attributes");
    if (attrs == doc.end() || !attrs->is_object()) {
      throw fail("missing object field \"attributes\"");
    }
    for (auto& [name, values] : attrs->items()) {
      if (!IsKnownAttribute(name)) throw fail("unknown attribute '" + name + "'");
      if (!values.is_array()) {
        throw fail("attribute '" + name + "' must be an array of strings");
      }
      std::vector<std::string>& out = record.attributes[name];
      for (const json& v : values) {
        if (!v.is_string()) {
          throw fail("attribute '" + name + "' must be an array of strings");
        }
        out.push_back(v.get<std::string>());
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<HintRecord> LoadHints(const std::string& path) {
  return ParseHints(ReadFile(path));
}

std::string SerializeHints(std::span<const HintRecord> records) {
  std::string out;
  for (const HintRecord& r : records) {
    nlohmann::json doc;
    doc["password"] = r.password;
    doc["attributes"] = nlohmann::json::object();
    for (const auto& [name, values] : r.attributes) {
      doc["attributes"][name] = values;
    }
    out += doc.dump();
    out += '\n';
  }
  return out;
}

void WriteHints(std::span<const HintRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << SerializeHints(records);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace omen
