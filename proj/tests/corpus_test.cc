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
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.h"
#include "testing/files.h"

namespace omen {
namespace {

using ::omen::testing::TempDir;
using ::omen::testing::WriteFile;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no omen::Error thrown";
  return ErrorCode::kIo;
}

TEST(AlphabetTest, DefaultHas72Members) {
  const Alphabet a = Alphabet::Default();
  EXPECT_EQ(a.size(), 72u);
  for (char c : std::string("azAZ09!@#$%^&*.-")) EXPECT_TRUE(a.Contains(c)) << c;
  EXPECT_FALSE(a.Contains(' '));
  EXPECT_FALSE(a.Contains('_'));
  EXPECT_EQ(a.Rank('a'), 0);
  EXPECT_EQ(a.at(static_cast<std::size_t>(a.Rank('Q'))), 'Q');
}

TEST(AlphabetTest, RejectsBadDefinitions) {
  EXPECT_EQ(CodeOf([] { Alphabet::FromString("a"); }), ErrorCode::kParameter);
  EXPECT_EQ(CodeOf([] { Alphabet::FromString("aba"); }), ErrorCode::kParameter);
  EXPECT_EQ(CodeOf([] { Alphabet::FromString("ab\n"); }), ErrorCode::kParameter);
}

TEST(AlphabetTest, LoadsSingleLineFile) {
  TempDir dir;
  WriteFile(dir.File("sigma"), "xyz\n");
  EXPECT_EQ(Alphabet::Load(dir.File("sigma")).chars(), "xyz");
}

TEST(LoadPasswordsTest, DropsForeignAndShortLines) {
  TempDir dir;
  WriteFile(dir.File("pw"), "password\np\xE2\x88\x9Assw0rd\nab\n");
  const Corpus c = LoadPasswords(dir.File("pw"), Alphabet::Default(), 3, 20);
  EXPECT_EQ(c.passwords, std::vector<std::string>{"password"});
  EXPECT_EQ(c.rejected_count, 2u);
}

TEST(LoadPasswordsTest, EmptyFileIsAnError) {
  TempDir dir;
  WriteFile(dir.File("pw"), "");
  EXPECT_EQ(CodeOf([&] { LoadPasswords(dir.File("pw"), Alphabet::Default()); }),
            ErrorCode::kEmptyCorpus);
  EXPECT_EQ(CodeOf([&] { LoadPasswords(dir.File("missing"), Alphabet::Default()); }),
            ErrorCode::kIo);
}

TEST(LoadPasswordsTest, ConservesLinesAndKeepsOrder) {
  TempDir dir;
  std::string text;
  for (int i = 0; i < 10; ++i) text += "pass" + std::to_string(9 - i) + "\r\n";
  WriteFile(dir.File("pw"), text);
  const Corpus c = LoadPasswords(dir.File("pw"), Alphabet::Default());
  ASSERT_EQ(c.size(), 10u);
  EXPECT_EQ(c.rejected_count, 0u);
  EXPECT_EQ(c.passwords.front(), "pass9");
  std::size_t histogram_total = 0;
  for (const auto& [len, n] : c.length_histogram) histogram_total += n;
  EXPECT_EQ(histogram_total, 10u);
}

TEST(FilterPasswordsTest, LoadedPlusRejectedIsLineCount) {
  const std::vector<std::string> lines = {"", "abc", "x", "toolongpasswordtoolong", "ok12",
                                          "a b c", "abc"};
  const Corpus c = FilterPasswords(lines, Alphabet::Default(), 3, 20);
  EXPECT_EQ(c.size() + c.rejected_count, lines.size());
  EXPECT_EQ(c.passwords, (std::vector<std::string>{"abc", "ok12", "abc"}));
}

Corpus Numbered(int n) {
  Corpus c;
  for (int i = 0; i < n; ++i) c.passwords.push_back("pw" + std::to_string(i));
  return c;
}

TEST(SplitTest, PartitionsWithRoundedSizes) {
  const Corpus c = Numbered(100);
  const CorpusSplit s = Split(c, 0.9, 1);
  EXPECT_EQ(s.train.size(), 90u);
  EXPECT_EQ(s.test.size(), 10u);
  std::vector<std::string> all = s.train.passwords;
  all.insert(all.end(), s.test.passwords.begin(), s.test.passwords.end());
  std::sort(all.begin(), all.end());
  std::vector<std::string> expected = c.passwords;
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(all, expected);
}

TEST(SplitTest, DeterministicPerSeed) {
  const Corpus c = Numbered(1000);
  EXPECT_EQ(Split(c, 0.5, 42).train.passwords, Split(c, 0.5, 42).train.passwords);
  EXPECT_NE(Split(c, 0.5, 1).train.passwords, Split(c, 0.5, 2).train.passwords);
}

TEST(SplitTest, RejectsFractionOutsideOpenInterval) {
  const Corpus c = Numbered(10);
  EXPECT_EQ(CodeOf([&] { Split(c, 0.0, 1); }), ErrorCode::kParameter);
  EXPECT_EQ(CodeOf([&] { Split(c, 1.0, 1); }), ErrorCode::kParameter);
}

TEST(HintsTest, ParsesRecords) {
  const auto records = ParseHints(
      R"({"password":"pass1","attributes":{"userName":["pass"]}})"
      "\n\n"
      R"({"password":"x1y2","attributes":{"firstName":["Ann"],"siblings":["Bob","Cal"]}})"
      "\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].password, "pass1");
  EXPECT_EQ(records[0].Values("userName")[0], "pass");
  EXPECT_EQ(records[1].Values("siblings").size(), 2u);
  EXPECT_TRUE(records[1].Values("email").empty());
}

TEST(HintsTest, ErrorsNameTheLine) {
  const std::string text =
      R"({"password":"a","attributes":{}})" "\n"
      R"({"attributes":{"userName":["x"]}})" "\n";
  try {
    ParseHints(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([] { ParseHints(R"({"password":"a","attributes":{"pet":["x"]}})"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseHints("{not json"); }), ErrorCode::kParse);
}

TEST(HintsTest, SerializeRoundTrip) {
  std::vector<HintRecord> records(2);
  records[0].password = "qwerty";
  records[0].attributes["birthday"] = {"1990-01-02"};
  records[1].password = "h\"llo";
  records[1].attributes["friends"] = {"a", "b", "c"};
  records[1].attributes["email"] = {};
  EXPECT_EQ(ParseHints(SerializeHints(records)), records);
  TempDir dir;
  WriteHints(records, dir.File("h.jsonl"));
  EXPECT_EQ(LoadHints(dir.File("h.jsonl")), records);
}

}  // namespace
}  // namespace omen
