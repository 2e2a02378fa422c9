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

// Runs the omen binary end to end and checks output and exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "testing/files.h"

namespace {

using ::omen::testing::ReadFile;
using ::omen::testing::TempDir;
using ::omen::testing::WriteFile;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Omen(const std::string& args) {
  const std::string cmd = std::string(OMEN_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t Lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::string text;
    const char* words[] = {"password", "pass123", "monkey", "dragon", "letmein",
                           "qwerty", "sunshine", "password1", "abc123", "iloveyou"};
    for (int rep = 0; rep < 20; ++rep) {
      for (const char* w : words) text += std::string(w) + "\n";
    }
    WriteFile(pw_ = dir_.File("pw.txt"), text);
    model_ = dir_.File("m.omn");
    ASSERT_EQ(Omen("--quiet train --input " + pw_ + " --out " + model_).code, 0);
  }

  TempDir dir_;
  std::string pw_;
  std::string model_;
};

TEST_F(CliTest, TrainThenEnumerate) {
  const CliRun r = Omen("enum --model " + model_ + " --level 0 --length 5");
  EXPECT_EQ(r.code, 0);
  const CliRun count = Omen("enum --model " + model_ + " --level -1 --length 6 --count");
  EXPECT_EQ(count.code, 0);
  const CliRun all = Omen("enum --model " + model_ + " --level -1 --length 6");
  EXPECT_EQ(std::to_string(Lines(all.out)) + "\n", count.out);
  EXPECT_EQ(Lines(Omen("enum --model " + model_ + " --level -1 --length 6 --max 3").out), 3u);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(Omen("enum --model " + model_ + " --bogus 1").code, 1);
  EXPECT_EQ(Omen("").code, 1);
  EXPECT_EQ(Omen("frobnicate").code, 1);
  EXPECT_EQ(Omen("train --input " + pw_).code, 1);
  EXPECT_EQ(Omen("eval --model " + model_ + " --test " + pw_ + " --checkpoints 10,5").code, 1);
  EXPECT_EQ(Omen("--help").code, 0);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  WriteFile(dir_.File("bad.omn"), "OMEN\x01garbage");
  EXPECT_EQ(Omen("enum --model " + dir_.File("bad.omn") + " --level 0 --length 5").code, 2);
  EXPECT_EQ(Omen("enum --model " + dir_.File("none.omn") + " --level 0 --length 5").code, 2);
  WriteFile(dir_.File("empty.txt"), "");
  EXPECT_EQ(Omen("train --input " + dir_.File("empty.txt") + " --out " + dir_.File("x")).code, 2);
  WriteFile(dir_.File("h.jsonl"), "{\"password\":1}\n");
  EXPECT_EQ(Omen("sim --hints " + dir_.File("h.jsonl")).code, 2);
}

TEST_F(CliTest, EvalWritesCurveAndCompareReadsIt) {
  const std::string curve = dir_.File("c.csv");
  ASSERT_EQ(Omen("eval --model " + model_ + " --test " + pw_ +
                 " --checkpoints 10,100,1000 --out " + curve).code, 0);
  const std::string text = ReadFile(curve);
  EXPECT_EQ(text.rfind("guesses,fraction\n10,", 0), 0u) << text;
  EXPECT_EQ(Lines(text), 4u);
  const CliRun stdout_curve = Omen("eval --model " + model_ + " --test " + pw_ +
                                " --checkpoints 10,100,1000");
  EXPECT_EQ(stdout_curve.out, text);
  const CliRun cmp = Omen("compare " + curve + " " + curve);
  EXPECT_EQ(cmp.code, 0);
  EXPECT_EQ(cmp.out, "checkpoints,a_dominates,max_gap\n3,3,0\n");
}

TEST_F(CliTest, CrackPrintsHits) {
  const CliRun r = Omen("crack --model " + model_ + " --test " + pw_ + " --budget 50000 --min-len 6 --max-len 9");
  EXPECT_EQ(r.code, 0);
  // pass123 and letmein wait behind the exhaustive walk of length 6.
  EXPECT_EQ(Lines(r.out), 8u);
  EXPECT_NE(r.out.find("\tpassword\n"), std::string::npos);
}

TEST_F(CliTest, SplitIsSeeded) {
  const std::string a = dir_.File("a"), b = dir_.File("b"), c = dir_.File("c"), d = dir_.File("d");
  ASSERT_EQ(Omen("--seed 5 split --input " + pw_ + " --train-out " + a + " --test-out " + b).code, 0);
  ASSERT_EQ(Omen("--seed 5 split --input " + pw_ + " --train-out " + c + " --test-out " + d).code, 0);
  EXPECT_EQ(ReadFile(a), ReadFile(c));
  EXPECT_EQ(ReadFile(b), ReadFile(d));
  EXPECT_EQ(Lines(ReadFile(a)), 180u);
}

TEST_F(CliTest, SimilarityAlphaAndPlus) {
  std::string hints;
  for (int i = 0; i < 20; ++i) {
    hints += std::string(R"({"password":")") + (i % 2 ? "monkey1" : "qwerty") +
             R"(","attributes":{"userName":["monkey"],"birthday":["1999"]}})" "\n";
  }
  const std::string h = dir_.File("h.jsonl");
  WriteFile(h, hints);
  const CliRun table = Omen("sim --hints " + h);
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(table.out.rfind("attribute,meanJS,js5,meanLCSS,lcss5,meanLen\n", 0), 0u);
  EXPECT_EQ(Lines(table.out), 3u);
  const std::string cdf = dir_.File("cdf.csv");
  EXPECT_EQ(Omen("sim --hints " + h + " --attribute userName --cdf " + cdf).code, 0);
  EXPECT_EQ(ReadFile(cdf).rfind("similarity,cumulative\n0.000000,0.500000\n", 0), 0u);

  const std::string profile = dir_.File("p.csv");
  const CliRun alpha = Omen("--threads 2 alpha --model " + model_ + " --hints " + h +
                         " --attribute all --grid 1:5:0.5 --profile-out " + profile);
  EXPECT_EQ(alpha.code, 0);
  EXPECT_EQ(alpha.out.rfind("attribute,alpha,ln_alpha,boostLevel\n", 0), 0u);
  EXPECT_EQ(Lines(alpha.out), 11u);
  EXPECT_EQ(Omen("alpha --model " + model_ + " --hints " + h + " --attribute pet").code, 1);

  const CliRun plus = Omen("plus --model " + model_ + " --hints " + h + " --profile " + profile +
                        " --budget 100 --record 1");
  EXPECT_EQ(plus.code, 0);
  EXPECT_EQ(Lines(plus.out), 100u);
}

TEST_F(CliTest, PolicyAndScore) {
  EXPECT_EQ(Omen("policy-check --username berkusrnfe02 --password berkusrnfe02").out,
            "identical\n");
  EXPECT_EQ(Omen("policy-check --username berkusrnfe02 --password berkusrnfe03").out,
            "too-similar\n");
  EXPECT_EQ(Omen("policy-check --username alice --password 'Tr0ub4dor&3'").out, "ok\n");
  const CliRun s = Omen("score --model " + model_ + " password zzzzzz");
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(Lines(s.out), 3u);
}

TEST_F(CliTest, FixedSeedPipelineIsByteIdentical) {
  auto pipeline = [&](const std::string& tag) {
    const std::string m = dir_.File("m" + tag), t = dir_.File("t" + tag), c = dir_.File("c" + tag);
    EXPECT_EQ(Omen("--quiet --seed 9 train --input " + pw_ + " --out " + m +
                   " --train-fraction 0.8 --test-out " + t).code, 0);
    EXPECT_EQ(Omen("--quiet eval --model " + m + " --test " + t +
                   " --checkpoints 10,1000,20000 --out " + c).code, 0);
    return ReadFile(m) + ReadFile(t) + ReadFile(c) +
           Omen("crack --model " + m + " --test " + t + " --budget 20000").out;
  };
  EXPECT_EQ(pipeline("1"), pipeline("2"));
}

}  // namespace
