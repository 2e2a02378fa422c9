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

#include "boost.h"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.h"
#include "similarity.h"
#include "testing/files.h"
#include "testing/synthetic.h"

namespace omen {
namespace {

using Grams = std::set<std::string>;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no omen::Error thrown";
  return ErrorCode::kIo;
}

// Order-3 model over `chars` with uniform tables except for the listed
// conditional probabilities; each listed context is renormalised over its
// remaining characters.
NgramModel Handmade(const std::string& chars,
                    const std::map<std::string, double>& fixed) {
  const Alphabet a = Alphabet::FromString(chars);
  const std::size_t s = a.size();
  std::vector<double> initial(s * s, 1.0 / static_cast<double>(s * s));
  std::vector<double> cond(s * s * s, 1.0 / static_cast<double>(s));
  std::map<std::size_t, std::pair<double, std::vector<int>>> rows;
  for (const auto& [gram, p] : fixed) {
    const std::size_t ctx = a.Rank(gram[0]) * s + a.Rank(gram[1]);
    cond[ctx * s + a.Rank(gram[2])] = p;
    rows[ctx].first += p;
    rows[ctx].second.push_back(a.Rank(gram[2]));
  }
  for (const auto& [ctx, row] : rows) {
    const double rest = (1.0 - row.first) / static_cast<double>(s - row.second.size());
    for (std::size_t z = 0; z < s; ++z) {
      if (std::find(row.second.begin(), row.second.end(), static_cast<int>(z)) == row.second.end()) {
        cond[ctx * s + z] = rest;
      }
    }
  }
  return NgramModel::FromProbabilities(a, 3, 10, initial, cond);
}

TEST(DeriveSetsTest, Examples) {
  const BoostSets sets = DeriveSets("password", "passabcd");
  EXPECT_EQ(sets.shared, (Grams{"pas", "ass"}));
  EXPECT_EQ(sets.context, (Grams{"ssw"}));
  EXPECT_EQ(sets.hint, (Grams{"pas", "ass", "ssa", "sab", "abc", "bcd"}));

  const BoostSets same = DeriveSets("Monkey12", "monkey12");
  EXPECT_EQ(same.shared, Ngrams("monkey12"));
  EXPECT_TRUE(same.context.empty());

  const BoostSets none = DeriveSets("abcdef", "123456");
  EXPECT_TRUE(none.shared.empty());
  EXPECT_TRUE(none.context.empty());
}

TEST(DeriveSetsTest, SharedAndContextAreDisjoint) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    std::string p(6 + rng() % 6, 'a'), h(3 + rng() % 10, 'a');
    for (char& c : p) c = "abc"[rng() % 3];
    for (char& c : h) c = "abc"[rng() % 3];
    const BoostSets sets = DeriveSets(p, h);
    for (const std::string& g : sets.shared) ASSERT_FALSE(sets.context.count(g));
  }
}

TEST(BoostLevelTest, RoundsLogAlpha) {
  EXPECT_EQ(BoostLevel(1.0, 10), 0);
  EXPECT_EQ(BoostLevel(1.1, 10), 0);
  EXPECT_EQ(BoostLevel(2.0, 10), 1);
  EXPECT_EQ(BoostLevel(2.3, 10), 1);
  EXPECT_EQ(BoostLevel(5.0, 10), 2);
  EXPECT_EQ(BoostLevel(5.0, 2), 1);
}

TEST(BoostedViewTest, AlphaOneIsIdentity) {
  std::mt19937_64 rng(6);
  const NgramModel m = testing::RandomModel(rng, 4, 3, 10);
  const BoostedView view(m, Grams{"abc", "abd", "cca"}, 1.0);
  for (std::size_t ctx = 0; ctx < m.context_count(); ++ctx) {
    for (int z = 0; z < 4; ++z) {
      EXPECT_EQ(view.cond_prob(ctx, z), m.cond_prob(ctx, z));
      EXPECT_EQ(view.cond_level(ctx, z), m.cond_level(ctx, z));
    }
  }
  EXPECT_EQ(view.Probability("abcda"), m.Probability("abcda"));
}

TEST(BoostedViewTest, ApproximateAndExactRenormalisation) {
  const NgramModel m = Handmade("abcd", {{"aab", 0.1}});
  const std::size_t ctx = m.ContextIndex("aa");
  const BoostedView approx(m, Grams{"aab"}, 2.0);
  EXPECT_DOUBLE_EQ(approx.cond_prob(ctx, 1), 0.2);
  EXPECT_DOUBLE_EQ(approx.cond_prob(ctx, 0), 0.8 * 0.3);
  double sum = 0.0;
  for (int z = 0; z < 4; ++z) sum += approx.cond_prob(ctx, z);
  EXPECT_NEAR(sum, 0.92, 1e-12);
  EXPECT_EQ(approx.cond_prob(m.ContextIndex("ab"), 1), m.cond_prob(m.ContextIndex("ab"), 1));

  const BoostedView exact(m, Grams{"aab"}, 2.0, true);
  sum = 0.0;
  for (int z = 0; z < 4; ++z) sum += exact.cond_prob(ctx, z);
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_FALSE(exact.capped());
}

TEST(BoostedViewTest, CapsWhenBoostedMassReachesOne) {
  const NgramModel m = Handmade("abcd", {{"aab", 0.3}, {"aac", 0.2}});
  const std::size_t ctx = m.ContextIndex("aa");
  const BoostedView view(m, Grams{"aab", "aac"}, 2.0);
  EXPECT_TRUE(view.capped());
  EXPECT_DOUBLE_EQ(view.cond_prob(ctx, 1), 0.6);
  EXPECT_DOUBLE_EQ(view.cond_prob(ctx, 2), 0.4);
  EXPECT_EQ(view.cond_prob(ctx, 0), 0.0);
}

TEST(BoostedViewTest, LevelsGainRoundedLogAlpha) {
  std::vector<int> cond(8, 0);
  cond[1] = -4;  // b after "aa"
  const NgramModel m = NgramModel::FromLevels(Alphabet::FromString("ab"), 3, 10,
                                              {0, 0, 0, 0}, cond);
  const BoostedView view(m, Grams{"aab", "bba"}, 2.0);
  EXPECT_EQ(view.cond_level(0, 1), -3);
  EXPECT_EQ(view.cond_level(3, 0), 0);
  const LevelTable table = view.Levels();
  EXPECT_EQ(table.cond_level(0, 1), -3);
  EXPECT_EQ(table.cond_level(0, 0), 0);
}

TEST(BoostedProbabilityTest, IdentityCases) {
  std::mt19937_64 rng(12);
  const NgramModel m = testing::RandomModel(rng, 4, 3, 10);
  const double p_old = m.Probability("abcdab");
  EXPECT_DOUBLE_EQ(BoostedProbability(m, BoostSets{}, 3.0, "abcdab").probability, p_old);
  EXPECT_DOUBLE_EQ(BoostedProbability(m, DeriveSets("abcdab", "bcda"), 1.0, "abcdab").probability,
                   p_old);
}

TEST(BoostedProbabilityTest, WorkedExample) {
  const NgramModel m =
      Handmade("abcdoprsw", {{"pas", 0.1}, {"ass", 0.1}, {"ssa", 0.05}});
  const BoostSets sets = DeriveSets("password", "passabcd");
  const double p_old = m.Probability("password");
  const BoostedScore s = BoostedProbability(m, sets, 2.0, "password");
  EXPECT_NEAR(s.probability / p_old, 3.6, 1e-12);
  EXPECT_EQ(s.clamped_factors, 0);
  const BoostedView view(m, sets.hint, 2.0);
  EXPECT_NEAR(view.Probability("password") / p_old, 3.6, 1e-12);
}

TEST(BoostedProbabilityTest, NonPositiveFactorsAreFloored) {
  const NgramModel m = Handmade("abcdoprsw", {{"ssa", 0.6}});
  const BoostedScore s = BoostedProbability(m, DeriveSets("password", "passabcd"), 2.0, "password");
  EXPECT_EQ(s.clamped_factors, 1);
  EXPECT_NEAR(s.log_probability,
              m.LogProbability("password") + 2 * std::log(2.0) + std::log(kFactorFloor), 1e-9);
}

std::vector<HintRecord> Records(std::vector<std::pair<std::string, std::string>> rows) {
  std::vector<HintRecord> out;
  for (auto& [pw, hint] : rows) {
    HintRecord r;
    r.password = pw;
    r.attributes["firstName"] = {hint};
    out.push_back(std::move(r));
  }
  return out;
}

TEST(ObjectiveTest, AlphaOneIsBaseline) {
  std::mt19937_64 rng(13);
  const NgramModel m = testing::RandomModel(rng, 4, 3, 10);
  const auto records = Records({{"abcd", "bcd"}, {"dcba", "aaa"}, {"abab", "x"}, {"c", "c"}});
  const ObjectiveResult r = ObjectiveS(records, "firstName", 1.0, m);
  double baseline = 0.0;
  for (const char* pw : {"abcd", "dcba", "abab"}) baseline += std::pow(m.Probability(pw), -1.5);
  baseline /= 3.0;
  EXPECT_NEAR(r.score, baseline, 1e-12 * baseline);
  EXPECT_EQ(r.used, 3u);
  EXPECT_EQ(r.skipped, 1u);
}

TEST(ObjectiveTest, EmbeddedHintsLowerTheObjective) {
  const NgramModel m = Handmade("abcdoprsw", {});
  const auto records = Records({{"password", "pass"}, {"sword", "swordbc"}, {"crab", "cra"}});
  const auto grid = AlphaGrid();
  double last = ObjectiveS(records, "firstName", 1.0, m).score;
  for (std::size_t i = 1; i < 5; ++i) {
    const double now = ObjectiveS(records, "firstName", grid[i], m).score;
    EXPECT_LT(now, last);
    last = now;
  }
}

TEST(ObjectiveTest, ContextOnlyHintsRaiseTheObjective) {
  const NgramModel m = Handmade("abcdoprsw", {});
  // Every hint gram shares a context with the password but continues
  // differently, so boosting only ever penalises.
  const auto records = Records({{"password", "pab"}, {"sword", "swa"}, {"crab", "crd"}});
  double last = ObjectiveS(records, "firstName", 1.0, m).score;
  for (double alpha : AlphaGrid(1.1, 5.0, 0.1)) {
    const double now = ObjectiveS(records, "firstName", alpha, m).score;
    EXPECT_GT(now, last) << alpha;
    last = now;
  }
}

TEST(AlphaGridTest, DecimalSteps) {
  const std::vector<double> grid = AlphaGrid();
  ASSERT_EQ(grid.size(), 41u);
  EXPECT_EQ(grid.front(), 1.0);
  EXPECT_EQ(grid[1], 1.1);
  EXPECT_EQ(grid[13], 2.3);
  EXPECT_EQ(grid.back(), 5.0);
  EXPECT_EQ(CodeOf([] { AlphaGrid(2.0, 1.0, 0.1); }), ErrorCode::kParameter);
}

TEST(EstimateAlphaTest, FullyCorrelatedHitsTheCap) {
  const NgramModel m = Handmade("abcdoprsw", {});
  const auto records = Records({{"password", "password"}, {"crab", "crab"}, {"sword", "sword"}});
  const AlphaEstimate est = EstimateAlpha(records, "firstName", AlphaGrid(), m);
  EXPECT_EQ(est.alpha, 5.0);
  EXPECT_EQ(est.boost_level, 2);
  EXPECT_NEAR(est.ln_alpha, std::log(5.0), 1e-12);
  EXPECT_EQ(est.curve.size(), 41u);
}

TEST(EstimateAlphaTest, UnrelatedHintsStayAtOneAndThreadsAgree) {
  const NgramModel m = Handmade("abcdoprsw", {});
  const auto records = Records({{"password", "bcd"}, {"crab", "wow"}, {"sword", "ppp"}});
  const AlphaEstimate one = EstimateAlpha(records, "firstName", AlphaGrid(), m, -1.5, 1);
  EXPECT_EQ(one.alpha, 1.0);
  EXPECT_EQ(one.boost_level, 0);
  const AlphaEstimate many = EstimateAlpha(records, "firstName", AlphaGrid(), m, -1.5, 4);
  EXPECT_EQ(one.curve, many.curve);
}

TEST(EstimateAlphaTest, GridMustStartAtOneWithinCap) {
  const NgramModel m = Handmade("abcdoprsw", {});
  const auto records = Records({{"password", "bcd"}});
  EXPECT_EQ(CodeOf([&] { EstimateAlpha(records, "firstName", {1.5, 2.0}, m); }),
            ErrorCode::kParameter);
  EXPECT_EQ(CodeOf([&] { EstimateAlpha(records, "firstName", {1.0, 6.0}, m); }),
            ErrorCode::kParameter);
}

TEST(GuessCurveTest, UniformModelCannotBeFitted) {
  // One length keeps every sampled guess at the same probability.
  const NgramModel m = Handmade("abcd", {});
  EXPECT_EQ(CodeOf([&] { FitGuessCurve(m, 1000, {6, 6}); }), ErrorCode::kFit);
  EXPECT_EQ(GuessExponentOrDefault(m, 1000, {6, 6}), kDefaultGuessExponent);
  EXPECT_EQ(CodeOf([&] { FitGuessCurve(m, 10, {3, 8}); }), ErrorCode::kParameter);
}

TEST(GuessCurveTest, ZipfModelExponentInBand) {
  testing::ZipfPopulation population;
  Corpus corpus;
  corpus.passwords = population.Sample(50000, 21);
  const NgramModel m = NgramModel::Train(corpus, Alphabet::Default());
  const GuessCurveFit fit = FitGuessCurve(m, 20000);
  EXPECT_GE(fit.exponent, -2.5);
  EXPECT_LE(fit.exponent, -1.0);
  EXPECT_EQ(fit.samples, 20000u);
}

TEST(ProfileTest, RoundTripAndValidation) {
  BoostProfile p;
  p.Set("firstName", 2.3);
  p.Set("birthday", 5.0);
  p.Set("eduWork", 1.1);
  EXPECT_EQ(p.LevelFor("firstName"), 1);
  EXPECT_EQ(p.LevelFor("birthday"), 2);
  EXPECT_EQ(p.LevelFor("eduWork"), 0);
  EXPECT_EQ(p.LevelFor("siblings"), 0);
  const BoostProfile back = ParseProfile(SerializeProfile(p));
  EXPECT_EQ(back.attributes.size(), 3u);
  EXPECT_EQ(back.attributes.at("firstName").alpha, 2.3);
  testing::TempDir dir;
  SaveProfile(p, dir.File("p.csv"));
  EXPECT_EQ(LoadProfile(dir.File("p.csv")).LevelFor("birthday"), 2);

  EXPECT_EQ(CodeOf([] { ParseProfile("firstName,2.3,2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseProfile("pet,2.3,1\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseProfile("firstName,7,2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseProfile("firstName,x,1\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { p.Set("firstName", 0.5); }), ErrorCode::kParameter);
}

// Index of `probe` in the stream, or budget when absent.
std::uint64_t IndexOf(ScheduledStream stream, const std::string& probe) {
  Guess g;
  std::uint64_t i = 0;
  while (stream.Next(g)) {
    if (g.text == probe) return i;
    ++i;
  }
  return i;
}

class PlusStreamTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    testing::ZipfPopulation population(3000);
    Corpus corpus;
    corpus.passwords = population.Sample(20000, 5);
    model_ = new NgramModel(NgramModel::Train(corpus, Alphabet::Default()));
  }
  static void TearDownTestSuite() { delete model_; }
  static const NgramModel* model_;
};
const NgramModel* PlusStreamTest::model_ = nullptr;

std::vector<std::string> Collect(ScheduledStream s) {
  std::vector<std::string> out;
  Guess g;
  while (s.Next(g)) out.push_back(g.text);
  return out;
}

TEST_F(PlusStreamTest, NoOpProfileMatchesPlainStream) {
  BoostProfile p;
  p.Set("firstName", 1.4);
  const std::map<std::string, std::vector<std::string>> hints = {{"firstName", {"anna"}}};
  const auto plus = Collect(PlusStream(*model_, p, hints, {3, 10}, 20000));
  const auto plain = Collect(ScheduledStream(LevelTable(*model_), {3, 10}, 20000));
  EXPECT_EQ(plus, plain);
  EXPECT_FALSE(PlusLevelTable(*model_, p, hints).boosted());
  EXPECT_EQ(Collect(PlusStream(*model_, p, {}, {3, 10}, 5000)),
            Collect(ScheduledStream(LevelTable(*model_), {3, 10}, 5000)));
}

TEST_F(PlusStreamTest, HintGramsMoveEarlier) {
  BoostProfile p;
  p.Set("userName", 2.0);
  const std::map<std::string, std::vector<std::string>> hints = {{"userName", {"pass"}}};
  // Each probe shares "pas" or "ass" with the hint; "spas" is out of reach
  // of the plain stream within the budget.
  for (const std::string probe : {"pass", "pase", "apas", "kass", "spas"}) {
    const int len = static_cast<int>(probe.size());
    const std::uint64_t plain =
        IndexOf(ScheduledStream(LevelTable(*model_), {len, len}, 2'000'000), probe);
    const std::uint64_t plus = IndexOf(PlusStream(*model_, p, hints, {len, len}, 2'000'000), probe);
    EXPECT_LT(plus, 2'000'000u) << probe;
    EXPECT_LT(plus, plain) << probe;
  }
}

TEST_F(PlusStreamTest, EmailIsNeverBoosted) {
  BoostProfile p;
  p.Set("email", 5.0);
  p.Set("userName", 1.0);
  const std::map<std::string, std::vector<std::string>> hints = {{"email", {"pass"}},
                                                                 {"userName", {"pass"}}};
  EXPECT_FALSE(PlusLevelTable(*model_, p, hints).boosted());
}

TEST_F(PlusStreamTest, OverlappingAttributesTakeTheLargestBoost) {
  BoostProfile p;
  p.Set("firstName", 3.0);
  p.Set("lastName", 4.5);
  const std::map<std::string, std::vector<std::string>> hints = {{"firstName", {"kar"}},
                                                                 {"lastName", {"karl"}}};
  const LevelTable t = PlusLevelTable(*model_, p, hints);
  const std::size_t ctx = model_->ContextIndex("ka");
  const int r = model_->alphabet().Rank('r');
  EXPECT_EQ(t.cond_level(ctx, r), std::min(0, model_->cond_level(ctx, r) + 2));
}

}  // namespace
}  // namespace omen
