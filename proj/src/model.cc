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

#include "model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "error.h"

namespace omen {
namespace {

constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 24;
constexpr char kMagic[4] = {'O', 'M', 'E', 'N'};

std::size_t CheckedPower(std::size_t base, int exponent) {
  std::size_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    if (v > kMaxDenseEntries / base) {
      throw Error(ErrorCode::kParameter,
                  "alphabet size and order exceed dense table limit");
    }
    v *= base;
  }
  return v;
}

void ValidateShape(std::size_t alphabet_size, int order, int level_count) {
  if (order < 2) throw Error(ErrorCode::kParameter, "order must be >= 2");
  if (level_count < 2 || level_count > 128) {
    throw Error(ErrorCode::kParameter, "level count must lie in [2, 128]");
  }
  CheckedPower(alphabet_size, order);
}

class Writer {
 public:
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void I8(std::int8_t v) { bytes_.push_back(static_cast<std::uint8_t>(v)); }
  void Raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    bytes_.insert(bytes_.end(), b, b + n);
  }
  std::vector<std::uint8_t> Take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kFormat, "model file is truncated");
    }
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  double F64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  std::int8_t I8() {
    Need(1);
    return static_cast<std::int8_t>(bytes_[pos_++]);
  }
  std::string Str(std::size_t n) {
    Need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

double MaxOf(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

LevelCalibration Calibrate(double p_max, int level_count) {
  if (!(p_max > 0.0 && p_max <= 1.0)) {
    throw Error(ErrorCode::kCalibration,
                "calibration needs a maximum probability in (0, 1]");
  }
  if (level_count < 2) {
    throw Error(ErrorCode::kCalibration, "level count must be >= 2");
  }
  LevelCalibration cal;
  cal.c2 = std::exp(-static_cast<double>(level_count - 1));
  cal.c1 = (1.0 - cal.c2) / p_max;
  return cal;
}

int Discretize(double prob, const LevelCalibration& calibration,
               int level_count) {
  const double x = calibration.c1 * prob + calibration.c2;
  const int lowest = -(level_count - 1);
  if (!(x > 0.0)) return lowest;
  const double level = std::round(std::log(x));
  if (level >= 0.0) return 0;
  if (level <= lowest) return lowest;
  return static_cast<int>(level);
}

NgramModel::NgramModel(Alphabet alphabet, int order, int level_count,
                       double smoothing)
    : alphabet_(std::move(alphabet)),
      order_(order),
      level_count_(level_count),
      smoothing_(smoothing) {
  ValidateShape(alphabet_.size(), order, level_count);
}

NgramModel NgramModel::Train(const Corpus& corpus, const Alphabet& alphabet,
                             const TrainOptions& options) {
  if (!(options.smoothing > 0.0)) {
    throw Error(ErrorCode::kParameter, "smoothing delta must be > 0");
  }
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot train on an empty corpus");
  }
  NgramModel model(alphabet, options.order, options.level_count,
                   options.smoothing);
  const std::size_t sigma = alphabet.size();
  const std::size_t contexts = CheckedPower(sigma, options.order - 1);
  const std::size_t prefix = static_cast<std::size_t>(options.order - 1);

  std::vector<std::uint64_t> initial_count(contexts, 0);
  std::vector<std::uint64_t> cond_count(contexts * sigma, 0);
  std::uint64_t initial_total = 0;

  for (const std::string& pw : corpus.passwords) {
    if (pw.size() < prefix) continue;
    std::size_t ctx = 0;
    for (std::size_t i = 0; i < pw.size(); ++i) {
      const int r = alphabet.Rank(pw[i]);
      if (r < 0) {
        throw Error(ErrorCode::kTraining,
                    "password contains a character outside the alphabet");
      }
      if (i < prefix) {
        ctx = ctx * sigma + r;
        if (i + 1 == prefix) {
          ++initial_count[ctx];
          ++initial_total;
        }
        continue;
      }
      ++cond_count[ctx * sigma + r];
      ctx = (ctx * sigma + r) % contexts;
    }
  }
  if (initial_total == 0) {
    throw Error(ErrorCode::kTraining,
                "no password is long enough to train an order-" +
                    std::to_string(options.order) + " model");
  }

  const double delta = options.smoothing;
  model.initial_prob_.resize(contexts);
  const double initial_denom =
      static_cast<double>(initial_total) + delta * static_cast<double>(contexts);
  for (std::size_t g = 0; g < contexts; ++g) {
    model.initial_prob_[g] =
        (static_cast<double>(initial_count[g]) + delta) / initial_denom;
  }
  model.cond_prob_.resize(contexts * sigma);
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    std::uint64_t total = 0;
    for (std::size_t z = 0; z < sigma; ++z) total += cond_count[ctx * sigma + z];
    const double denom =
        static_cast<double>(total) + delta * static_cast<double>(sigma);
    for (std::size_t z = 0; z < sigma; ++z) {
      model.cond_prob_[ctx * sigma + z] =
          (static_cast<double>(cond_count[ctx * sigma + z]) + delta) / denom;
    }
  }
  model.Recalibrate();
  model.AssignLevels();
  return model;
}

NgramModel NgramModel::FromProbabilities(Alphabet alphabet, int order,
                                         int level_count,
                                         std::vector<double> initial_prob,
                                         std::vector<double> cond_prob,
                                         double smoothing) {
  NgramModel model(std::move(alphabet), order, level_count, smoothing);
  const std::size_t contexts = CheckedPower(model.alphabet_size(), order - 1);
  if (initial_prob.size() != contexts ||
      cond_prob.size() != contexts * model.alphabet_size()) {
    throw Error(ErrorCode::kParameter, "probability table has the wrong size");
  }
  model.initial_prob_ = std::move(initial_prob);
  model.cond_prob_ = std::move(cond_prob);
  model.Recalibrate();
  model.AssignLevels();
  return model;
}

NgramModel NgramModel::FromLevels(Alphabet alphabet, int order,
                                  int level_count,
                                  std::vector<int> initial_level,
                                  std::vector<int> cond_level) {
  NgramModel model(std::move(alphabet), order, level_count, 0.0);
  const std::size_t sigma = model.alphabet_size();
  const std::size_t contexts = CheckedPower(sigma, order - 1);
  if (initial_level.size() != contexts || cond_level.size() != contexts * sigma) {
    throw Error(ErrorCode::kParameter, "level table has the wrong size");
  }
  auto check = [&](int lvl) {
    if (lvl > 0 || lvl < model.min_level()) {
      throw Error(ErrorCode::kParameter, "level outside [-(L-1), 0]");
    }
    return static_cast<std::int8_t>(lvl);
  };
  model.initial_level_.resize(contexts);
  model.initial_prob_.resize(contexts);
  double total = 0.0;
  for (std::size_t g = 0; g < contexts; ++g) {
    model.initial_level_[g] = check(initial_level[g]);
    model.initial_prob_[g] = std::exp(initial_level[g]);
    total += model.initial_prob_[g];
  }
  for (double& p : model.initial_prob_) p /= total;
  model.cond_level_.resize(contexts * sigma);
  model.cond_prob_.resize(contexts * sigma);
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    double sum = 0.0;
    for (std::size_t z = 0; z < sigma; ++z) {
      const std::size_t i = ctx * sigma + z;
      model.cond_level_[i] = check(cond_level[i]);
      model.cond_prob_[i] = std::exp(cond_level[i]);
      sum += model.cond_prob_[i];
    }
    for (std::size_t z = 0; z < sigma; ++z) model.cond_prob_[ctx * sigma + z] /= sum;
  }
  model.Recalibrate();
  return model;
}

void NgramModel::Recalibrate() {
  initial_cal_ = Calibrate(MaxOf(initial_prob_), level_count_);
  cond_cal_ = Calibrate(MaxOf(cond_prob_), level_count_);
}

void NgramModel::AssignLevels() {
  initial_level_.resize(initial_prob_.size());
  for (std::size_t i = 0; i < initial_prob_.size(); ++i) {
    initial_level_[i] = static_cast<std::int8_t>(
        Discretize(initial_prob_[i], initial_cal_, level_count_));
  }
  cond_level_.resize(cond_prob_.size());
  for (std::size_t i = 0; i < cond_prob_.size(); ++i) {
    cond_level_[i] = static_cast<std::int8_t>(
        Discretize(cond_prob_[i], cond_cal_, level_count_));
  }
}

std::vector<int> NgramModel::Ranks(std::string_view password) const {
  if (password.size() < static_cast<std::size_t>(order_ - 1)) {
    throw Error(ErrorCode::kScoring, "password shorter than the model context");
  }
  std::vector<int> ranks;
  ranks.reserve(password.size());
  for (char c : password) {
    const int r = alphabet_.Rank(c);
    if (r < 0) {
      throw Error(ErrorCode::kScoring,
                  std::string("character '") + c + "' is not in the alphabet");
    }
    ranks.push_back(r);
  }
  return ranks;
}

std::size_t NgramModel::ContextIndex(std::string_view gram) const {
  if (gram.size() != static_cast<std::size_t>(order_ - 1)) {
    throw Error(ErrorCode::kScoring, "context has the wrong length");
  }
  std::size_t ctx = 0;
  for (int r : Ranks(gram)) ctx = ctx * alphabet_size() + r;
  return ctx;
}

std::string NgramModel::ContextString(std::size_t context) const {
  std::string s(static_cast<std::size_t>(order_ - 1), '\0');
  for (std::size_t i = s.size(); i-- > 0;) {
    s[i] = alphabet_.at(context % alphabet_size());
    context /= alphabet_size();
  }
  return s;
}

double NgramModel::Probability(std::string_view password) const {
  const std::vector<int> ranks = Ranks(password);
  const std::size_t prefix = static_cast<std::size_t>(order_ - 1);
  std::size_t ctx = 0;
  for (std::size_t i = 0; i < prefix; ++i) ctx = ctx * alphabet_size() + ranks[i];
  double p = initial_prob_[ctx];
  for (std::size_t i = prefix; i < ranks.size(); ++i) {
    p *= cond_prob(ctx, ranks[i]);
    ctx = ShiftContext(ctx, ranks[i]);
  }
  return p;
}

double NgramModel::LogProbability(std::string_view password) const {
  const std::vector<int> ranks = Ranks(password);
  const std::size_t prefix = static_cast<std::size_t>(order_ - 1);
  std::size_t ctx = 0;
  for (std::size_t i = 0; i < prefix; ++i) ctx = ctx * alphabet_size() + ranks[i];
  double lp = std::log(initial_prob_[ctx]);
  for (std::size_t i = prefix; i < ranks.size(); ++i) {
    lp += std::log(cond_prob(ctx, ranks[i]));
    ctx = ShiftContext(ctx, ranks[i]);
  }
  return lp;
}

int NgramModel::Level(std::string_view password) const {
  const std::vector<int> ranks = Ranks(password);
  const std::size_t prefix = static_cast<std::size_t>(order_ - 1);
  std::size_t ctx = 0;
  for (std::size_t i = 0; i < prefix; ++i) ctx = ctx * alphabet_size() + ranks[i];
  int level = initial_level_[ctx];
  for (std::size_t i = prefix; i < ranks.size(); ++i) {
    level += cond_level(ctx, ranks[i]);
    ctx = ShiftContext(ctx, ranks[i]);
  }
  return level;
}

std::vector<std::uint8_t> NgramModel::Serialize() const {
  Writer w;
  w.Raw(kMagic, sizeof(kMagic));
  w.U32(kModelFormatVersion);
  w.U32(static_cast<std::uint32_t>(order_));
  w.U32(static_cast<std::uint32_t>(level_count_));
  w.U32(static_cast<std::uint32_t>(alphabet_.size()));
  w.Raw(alphabet_.chars().data(), alphabet_.size());
  for (double p : initial_prob_) w.F64(p);
  for (double p : cond_prob_) w.F64(p);
  for (std::int8_t l : initial_level_) w.I8(l);
  for (std::int8_t l : cond_level_) w.I8(l);
  w.F64(smoothing_);
  return w.Take();
}

NgramModel NgramModel::Deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.Str(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorCode::kFormat, "not an OMEN model file (bad magic)");
  }
  const std::uint32_t version = r.U32();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported model format version " + std::to_string(version));
  }
  const std::uint32_t order = r.U32();
  const std::uint32_t levels = r.U32();
  const std::uint32_t alpha_len = r.U32();
  if (order < 2 || order > 16 || levels < 2 || levels > 128 ||
      alpha_len < 2 || alpha_len > 256) {
    throw Error(ErrorCode::kFormat, "model header fields out of range");
  }
  Alphabet alphabet = Alphabet::Default();
  try {
    alphabet = Alphabet::FromString(r.Str(alpha_len));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormat) throw;
    throw Error(ErrorCode::kFormat, std::string("bad alphabet: ") + e.what());
  }
  std::size_t contexts = 0;
  try {
    contexts = CheckedPower(alpha_len, static_cast<int>(order) - 1);
    CheckedPower(alpha_len, static_cast<int>(order));
  } catch (const Error&) {
    throw Error(ErrorCode::kFormat, "model tables exceed dense table limit");
  }
  const std::size_t cond = contexts * alpha_len;
  r.Need(contexts * 9 + cond * 9 + 8);

  NgramModel model(std::move(alphabet), static_cast<int>(order),
                   static_cast<int>(levels), 0.0);
  auto read_probs = [&](std::vector<double>& out, std::size_t n) {
    out.resize(n);
    for (double& p : out) {
      p = r.F64();
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kFormat, "probability outside [0, 1]");
      }
    }
  };
  auto read_levels = [&](std::vector<std::int8_t>& out, std::size_t n) {
    out.resize(n);
    for (std::int8_t& l : out) {
      l = r.I8();
      if (l > 0 || l < model.min_level()) {
        throw Error(ErrorCode::kFormat, "level outside [-(L-1), 0]");
      }
    }
  };
  read_probs(model.initial_prob_, contexts);
  read_probs(model.cond_prob_, cond);
  read_levels(model.initial_level_, contexts);
  read_levels(model.cond_level_, cond);
  model.smoothing_ = r.F64();
  if (!r.AtEnd()) throw Error(ErrorCode::kFormat, "trailing bytes in model file");
  try {
    model.Recalibrate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, std::string("bad probability table: ") + e.what());
  }
  return model;
}

void NgramModel::Save(const std::string& path) const {
  const std::vector<std::uint8_t> bytes = Serialize();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

NgramModel NgramModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return Deserialize(bytes);
}

}  // namespace omen
