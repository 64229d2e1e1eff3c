// Copyright 2026 The TestQuest Authors
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

#include <gtest/gtest.h>

#include <algorithm>

#include "expect_error.hpp"
#include "support.hpp"
#include "testquest/achievements.hpp"
#include "testquest/challenges.hpp"

namespace testquest::challenges {
namespace {

using testing::error_code;

constexpr char kCalculatorFile[] = "src/main/java/com/example/Calculator.java";
constexpr char kParserFile[] = "src/main/java/com/example/Parser.java";

struct Fixture {
  ProjectState state = testing::project_with_users({"alice", "bob"});
  RunFacts facts;

  explicit Fixture(testing::FactsSpec spec = {})
      : facts(testing::make_facts(testing::demo_reports(), with_commits(spec))) {}

  static testing::FactsSpec with_commits(testing::FactsSpec spec) {
    if (spec.commits.empty()) {
      spec.commits = {
          testing::commit("alice", {kCalculatorFile, kParserFile, "README.md"}),
          testing::commit("bob", {kParserFile})};
    }
    return spec;
  }

  GenerationContext context(const std::string& user, std::uint64_t seed = 1) {
    return make_context(facts, state, user, seed);
  }
};

std::size_t count_targets(const GenerationContext& ctx, const std::string& fqn,
                          ChallengeKind kind) {
  return enumerate_targets(ctx, *ctx.facts.find_class(fqn), kind).size();
}

// Hand table: threshold 0.80, "high" means strictly above it.
TEST(Scoring, MatchesTheRewardTable) {
  struct Row {
    ChallengeKind kind;
    double coverage;
    int points;
  };
  const Row rows[] = {
      {ChallengeKind::kBuild, 0.0, 1},          {ChallengeKind::kBuild, 0.95, 1},
      {ChallengeKind::kTest, 0.5, 1},           {ChallengeKind::kClassCoverage, 0.10, 1},
      {ChallengeKind::kClassCoverage, 0.80, 1}, {ChallengeKind::kClassCoverage, 0.81, 2},
      {ChallengeKind::kMethodCoverage, 0.79, 1}, {ChallengeKind::kMethodCoverage, 0.9, 2},
      {ChallengeKind::kLineCoverage, 0.0, 2},   {ChallengeKind::kLineCoverage, 0.99, 3},
      {ChallengeKind::kMutation, 0.0, 4},       {ChallengeKind::kMutation, 0.99, 4},
  };
  for (const auto& row : rows) {
    EXPECT_EQ(compute_points(row.kind, row.coverage, 0.80), row.points)
        << to_string(row.kind) << " at " << row.coverage;
  }
  EXPECT_EQ(compute_points(ChallengeKind::kSmell, 0.5, 0.8, ingest::Severity::kLow), 1);
  EXPECT_EQ(compute_points(ChallengeKind::kSmell, 0.5, 0.8, ingest::Severity::kMedium), 2);
  EXPECT_EQ(compute_points(ChallengeKind::kSmell, 0.5, 0.8, ingest::Severity::kHigh), 3);
  EXPECT_EQ(compute_points(ChallengeKind::kSmell, 0.5, 0.8, ingest::Severity::kCritical), 4);
  EXPECT_EQ(error_code([] { compute_points(ChallengeKind::kSmell, 0.5, 0.8); }),
            Errc::kMissingArgument);
}

TEST(Selection, WeightAndEmptyCandidates) {
  EXPECT_DOUBLE_EQ(selection_weight(0.2), 0.81);
  EXPECT_DOUBLE_EQ(selection_weight(0.8), 0.21);
  EXPECT_DOUBLE_EQ(selection_weight(1.0), 0.01);
  Rng rng(1);
  EXPECT_EQ(error_code([&] { select_weighted({}, rng); }), Errc::kEmptyCandidates);
}

TEST(Selection, CandidatesComeFromTheUsersCommits) {
  Fixture f;
  const auto alice = candidate_classes(f.context("alice"));
  ASSERT_EQ(alice.size(), 2u);
  EXPECT_EQ(alice[0].first, "com.example.Parser");
  EXPECT_DOUBLE_EQ(alice[0].second, 0.25);
  EXPECT_EQ(alice[1].first, "com.example.Calculator");

  const auto bob = candidate_classes(f.context("bob"));
  ASSERT_EQ(bob.size(), 1u);
  EXPECT_EQ(bob[0].first, "com.example.Parser");

  f.state.rejected_class_fqns.insert("com.example.Parser");
  const auto filtered = candidate_classes(f.context("alice"));
  ASSERT_EQ(filtered.size(), 1u);
  EXPECT_EQ(filtered[0].first, "com.example.Calculator");
}

TEST(Selection, FullyCoveredClassesAreNotCandidates) {
  testing::FactsSpec spec;
  spec.commits = {testing::commit(
      "alice", {"src/main/java/com/example/util/Strings.java"})};
  Fixture f(spec);
  EXPECT_TRUE(candidate_classes(f.context("alice")).empty());
  auto ctx = f.context("alice");
  const Challenge c = generate_challenge(ctx);
  EXPECT_EQ(c.kind, ChallengeKind::kTest);
}

TEST(Targets, EnumeratesEveryKindOnTheDemoBuild) {
  Fixture f;
  const auto ctx = f.context("alice");
  const std::string calc = "com.example.Calculator";
  const std::string parser = "com.example.Parser";
  EXPECT_EQ(count_targets(ctx, calc, ChallengeKind::kClassCoverage), 1u);
  EXPECT_EQ(count_targets(ctx, calc, ChallengeKind::kMethodCoverage), 2u);
  EXPECT_EQ(count_targets(ctx, calc, ChallengeKind::kLineCoverage), 4u);
  EXPECT_EQ(count_targets(ctx, calc, ChallengeKind::kMutation), 2u);
  EXPECT_EQ(count_targets(ctx, calc, ChallengeKind::kSmell), 2u);
  EXPECT_EQ(count_targets(ctx, parser, ChallengeKind::kMethodCoverage), 1u);
  EXPECT_EQ(count_targets(ctx, parser, ChallengeKind::kLineCoverage), 3u);
  EXPECT_EQ(count_targets(ctx, parser, ChallengeKind::kMutation), 1u);
  EXPECT_EQ(count_targets(ctx, parser, ChallengeKind::kSmell), 1u);

  const auto lines = enumerate_targets(ctx, *f.facts.find_class(calc),
                                       ChallengeKind::kLineCoverage);
  std::vector<int> numbers;
  for (const auto& c : lines) {
    numbers.push_back(c.target_line);
    EXPECT_EQ(c.points, 3);
  }
  EXPECT_EQ(numbers, (std::vector<int>{9, 10, 16, 17}));

  const auto parser_lines = enumerate_targets(ctx, *f.facts.find_class(parser),
                                              ChallengeKind::kLineCoverage);
  for (const auto& c : parser_lines) EXPECT_EQ(c.points, 2);

  const auto smells = enumerate_targets(ctx, *f.facts.find_class(calc),
                                        ChallengeKind::kSmell);
  std::vector<int> smell_points;
  for (const auto& c : smells) smell_points.push_back(c.points);
  std::sort(smell_points.begin(), smell_points.end());
  EXPECT_EQ(smell_points, (std::vector<int>{2, 3}));
}

TEST(Targets, BaselinesAreFrozenFromTheBuild) {
  Fixture f;
  const auto ctx = f.context("alice");
  const auto methods = enumerate_targets(
      ctx, *f.facts.find_class("com.example.Calculator"),
      ChallengeKind::kMethodCoverage);
  ASSERT_EQ(methods.size(), 2u);
  const auto& clamp = methods[0].target_method == "clamp(III)I" ? methods[0] : methods[1];
  EXPECT_DOUBLE_EQ(clamp.baseline.method_coverage, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(clamp.baseline.class_coverage, 10.0 / 12.0);
  EXPECT_EQ(clamp.baseline.class_covered_lines, 10);

  Challenge test;
  test.kind = ChallengeKind::kTest;
  EXPECT_EQ(freeze_baseline(test, f.facts).test_count, 10);
}

TEST(Targets, RejectedAndTakenFingerprintsAreSkipped) {
  Fixture f;
  auto ctx = f.context("alice");
  const auto& calc = *f.facts.find_class("com.example.Calculator");
  const auto all = enumerate_targets(ctx, calc, ChallengeKind::kLineCoverage);
  ctx.rejected_fingerprints.insert(fingerprint(all[0]));
  ctx.taken_fingerprints.insert(fingerprint(all[1]));
  const auto rest = enumerate_targets(ctx, calc, ChallengeKind::kLineCoverage);
  ASSERT_EQ(rest.size(), 2u);
  EXPECT_EQ(rest[0].target_line, all[2].target_line);
}

TEST(Presentation, SnippetsComeFromTheWorkingCopy) {
  testing::TempDir repo;
  testing::write_text(repo / kCalculatorFile,
                      testing::read_text(testing::fixture(
                          "toyrepo/src/main/java/com/example/Calculator.java")));
  testing::FactsSpec spec;
  spec.repo_root = repo.path();
  Fixture f(spec);
  auto ctx = f.context("alice");
  Challenge c = enumerate_targets(ctx, *f.facts.find_class("com.example.Calculator"),
                                  ChallengeKind::kLineCoverage)[1];
  ASSERT_EQ(c.target_line, 10);
  attach_presentation(ctx, c);
  EXPECT_EQ(c.snippet_first_line, 8);
  EXPECT_NE(c.snippet.find("if (b == 0) {"), std::string::npos);
  EXPECT_NE(c.description.find("line 10"), std::string::npos);

  Challenge m = enumerate_targets(ctx, *f.facts.find_class("com.example.Calculator"),
                                  ChallengeKind::kMutation)[0];
  attach_presentation(ctx, m);
  EXPECT_EQ(m.snippet, "return a / b;");
  EXPECT_EQ(m.mutated_snippet, "return a * b;");
}

TEST(Generation, IsDeterministicForASeed) {
  Fixture f;
  auto a = f.context("alice", 42);
  auto b = f.context("alice", 42);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(generate_challenge(a), generate_challenge(b));
}

TEST(Generation, BuildChallengeOnlyForCommittersOfAFailedBuild) {
  testing::FactsSpec spec;
  spec.build_succeeded = false;
  spec.build_window_users = {"alice"};
  Fixture f(spec);
  const auto alice = generate_build_challenge(f.context("alice"));
  ASSERT_TRUE(alice.has_value());
  EXPECT_EQ(alice->points, 1);
  EXPECT_FALSE(generate_build_challenge(f.context("bob")).has_value());

  Fixture ok;
  EXPECT_FALSE(generate_build_challenge(ok.context("alice")).has_value());
}

TEST(Rejection, RecordsFingerprintAndClass) {
  Fixture f;
  auto ctx = f.context("alice");
  Challenge c = enumerate_targets(ctx, *f.facts.find_class("com.example.Parser"),
                                  ChallengeKind::kClassCoverage)[0];
  store_challenge(f.state, c, f.facts);
  const std::string id = f.state.challenges.back().challenge_id;

  EXPECT_EQ(error_code([&] { reject_challenge(f.state, "nope", "r", 1); }),
            Errc::kUnknownId);
  EXPECT_EQ(error_code([&] { reject_challenge(f.state, id, "  ", 1); }),
            Errc::kEmptyReason);

  const ProjectState next = reject_challenge(f.state, id, "generated code", 5);
  const Challenge& rejected = next.challenges.back();
  EXPECT_EQ(rejected.state, ChallengeState::kRejected);
  EXPECT_EQ(rejected.rejection_reason, "generated code");
  EXPECT_TRUE(next.rejected_fingerprints.contains(fingerprint(c)));
  EXPECT_TRUE(next.rejected_class_fqns.contains("com.example.Parser"));
  EXPECT_EQ(next.event_log.back().type, EventType::kChallengeRejected);
  EXPECT_EQ(next.event_log.back().payload["reason"], "generated code");
  EXPECT_EQ(error_code([&] { reject_challenge(next, id, "again", 6); }),
            Errc::kNotOpen);
}

TEST(Rejection, GenericKindsStayAvailable) {
  Fixture f;
  auto ctx = f.context("alice");
  store_challenge(f.state, make_test_challenge(ctx), f.facts);
  const auto next =
      reject_challenge(f.state, f.state.challenges.back().challenge_id, "meh", 1);
  EXPECT_TRUE(next.rejected_fingerprints.empty());
}

TEST(UserUpdate, TopsUpThenSolvesAndAwards) {
  ProjectState state = testing::project_with_users({"alice"});
  testing::SimulatedBuild build;
  build.reports = testing::demo_reports();
  build.commits = {testing::commit("alice", {kCalculatorFile, kParserFile})};
  state = testing::simulate_build(state, build);

  auto open = [](const ProjectState& s) {
    return std::count_if(s.challenges.begin(), s.challenges.end(), [](const auto& c) {
      return c.state == ChallengeState::kOpen && c.kind != ChallengeKind::kBuild;
    });
  };
  EXPECT_EQ(open(state), 3);
  EXPECT_EQ(state.quests.size(), 1u);
  EXPECT_EQ(state.users["alice"].score, 0);

  // Two more tests solve every Test challenge; the rest stays open.
  build.reports.tests->total = 12;
  int expected = 0;
  for (const auto& c : state.challenges)
    if (c.kind == ChallengeKind::kTest) expected += c.points;
  const ProjectState next = testing::simulate_build(state, build);
  EXPECT_EQ(next.users.at("alice").score, expected);
  EXPECT_EQ(open(next), 3);
  for (const auto& c : next.challenges) {
    if (c.kind == ChallengeKind::kTest && c.created_build == 1) {
      EXPECT_EQ(c.state, ChallengeState::kSolved);
    }
  }
}

TEST(UserUpdate, VanishedTargetsExpire) {
  ProjectState state = testing::project_with_users({"alice"});
  testing::SimulatedBuild build;
  build.reports = testing::demo_reports();
  build.commits = {testing::commit("alice", {kCalculatorFile, kParserFile})};
  state = testing::simulate_build(state, build);

  build.reports.class_rows->clear();
  build.reports.line_details->clear();
  build.reports.mutants->clear();
  const ProjectState next = testing::simulate_build(state, build);
  for (const auto& c : next.challenges) {
    if (c.created_build != 1) continue;
    switch (c.kind) {
      case ChallengeKind::kClassCoverage:
      case ChallengeKind::kMethodCoverage:
      case ChallengeKind::kLineCoverage:
      case ChallengeKind::kMutation:
        EXPECT_EQ(c.state, ChallengeState::kExpired) << c.challenge_id;
        break;
      default:
        break;
    }
  }
}

TEST(UserUpdate, MissingReportIsAWarningNotAnExpiry) {
  ProjectState state = testing::project_with_users({"alice"});
  testing::SimulatedBuild build;
  build.reports = testing::demo_reports();
  build.commits = {testing::commit("alice", {kCalculatorFile, kParserFile})};
  state = testing::simulate_build(state, build);

  build.reports = {};
  std::vector<std::string> warnings;
  const ProjectState next = testing::simulate_build(state, build, &warnings);
  for (std::size_t i = 0; i < state.challenges.size(); ++i)
    EXPECT_EQ(next.challenges[i].state, ChallengeState::kOpen);
  EXPECT_FALSE(warnings.empty());
}

TEST(UserUpdate, FailedBuildIssuesOneBuildChallengePerCommitter) {
  ProjectState state = testing::project_with_users({"alice", "bob"});
  testing::SimulatedBuild build;
  build.reports = testing::demo_reports();
  build.build_succeeded = false;
  build.commits = {testing::commit("alice", {kCalculatorFile})};
  state = testing::simulate_build(state, build);
  state = testing::simulate_build(state, build);
  const auto builds = std::count_if(
      state.challenges.begin(), state.challenges.end(),
      [](const auto& c) { return c.kind == ChallengeKind::kBuild; });
  EXPECT_EQ(builds, 1);
  EXPECT_EQ(state.challenges.front().owner_user_id, "alice");

  build.build_succeeded = true;
  const ProjectState fixed = testing::simulate_build(state, build);
  EXPECT_EQ(fixed.challenges.front().state, ChallengeState::kSolved);
  EXPECT_GE(fixed.users.at("alice").score, 1);
}

}  // namespace
}  // namespace testquest::challenges
