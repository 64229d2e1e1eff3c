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

#include "expect_error.hpp"
#include "support.hpp"
#include "testquest/model.hpp"

namespace testquest {
namespace {

using testing::error_code;

Challenge line_challenge(int line) {
  Challenge c;
  c.challenge_id = "c1";
  c.owner_user_id = "alice";
  c.kind = ChallengeKind::kLineCoverage;
  c.target_class = "com.example.Calculator";
  c.target_method = "divide(II)I";
  c.target_line = line;
  c.points = 2;
  return c;
}

ProjectState played_state() {
  ProjectState state = testing::project_with_users({"alice", "bob"});
  testing::SimulatedBuild build;
  build.reports = testing::demo_reports();
  build.commits = {
      testing::commit("alice", {"src/main/java/com/example/Calculator.java"}),
      testing::commit("bob", {"src/main/java/com/example/Parser.java",
                              "src/main/java/com/example/Calculator.java"})};
  state = testing::simulate_build(state, build);
  build.reports.tests->total += 1;
  build.seed = 2;
  return testing::simulate_build(state, build);
}

TEST(Fingerprint, IdentifiesKindAndTarget) {
  auto a = line_challenge(10);
  auto b = line_challenge(10);
  b.challenge_id = "c9";
  b.owner_user_id = "bob";
  b.points = 3;
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_NE(fingerprint(a), fingerprint(line_challenge(11)));
  EXPECT_FALSE(has_concrete_target(ChallengeKind::kBuild));
  EXPECT_FALSE(has_concrete_target(ChallengeKind::kTest));
  EXPECT_TRUE(has_concrete_target(ChallengeKind::kSmell));
}

TEST(ChallengeValidation, EnforcesFieldsAndPointRanges) {
  EXPECT_NO_THROW(validate_challenge(line_challenge(10)));
  auto no_line = line_challenge(0);
  EXPECT_EQ(error_code([&] { validate_challenge(no_line); }),
            Errc::kInvariantViolation);
  auto rich = line_challenge(10);
  rich.points = 4;
  EXPECT_EQ(error_code([&] { validate_challenge(rich); }),
            Errc::kInvariantViolation);
  Challenge test;
  test.kind = ChallengeKind::kTest;
  test.target_class = "a.B";
  EXPECT_EQ(error_code([&] { validate_challenge(test); }),
            Errc::kInvariantViolation);
  EXPECT_EQ(point_range(ChallengeKind::kSmell), std::make_pair(1, 4));
}

TEST(Quest, ProspectivePointsAddOnePerStep) {
  Quest q;
  q.kind = QuestKind::kLine;
  for (int points : {2, 3, 2}) {
    Challenge step = line_challenge(10 + points);
    step.points = points;
    q.steps.push_back(step);
  }
  EXPECT_EQ(q.prospective_points(), 7 + 3);
}

TEST(State, EventIdsAreDenseAndScoresReplay) {
  const ProjectState state = played_state();
  ASSERT_FALSE(state.event_log.empty());
  for (std::size_t i = 0; i < state.event_log.size(); ++i)
    EXPECT_EQ(state.event_log[i].event_id, static_cast<std::int64_t>(i + 1));
  EXPECT_EQ(state.event_counter,
            static_cast<std::int64_t>(state.event_log.size()));

  const auto ledger = ledger_scores(state);
  const auto replayed = replay_scores(state.event_log);
  EXPECT_EQ(ledger, replayed);
  for (const auto& [id, user] : state.users) {
    const auto it = ledger.find(id);
    EXPECT_EQ(user.score, it == ledger.end() ? 0 : it->second) << id;
  }
  EXPECT_NO_THROW(validate_state(state));
}

TEST(State, DetectsScoreDrift) {
  ProjectState state = played_state();
  state.users["alice"].score += 1;
  EXPECT_EQ(error_code([&] { validate_state(state); }),
            Errc::kInvariantViolation);
}

TEST(Serialization, RoundTripsAPlayedState) {
  const ProjectState state = played_state();
  const ProjectState back = state_from_json(to_json(state));
  EXPECT_EQ(back, state);
  EXPECT_EQ(canonical_text(back), canonical_text(state));
  const auto json = to_json(state.challenges.front());
  EXPECT_TRUE(json.contains("challengeId"));
  EXPECT_TRUE(json.contains("kind"));
}

TEST(Persistence, SavesAndLoads) {
  testing::TempDir dir;
  const ProjectState state = played_state();
  save_state(state, dir / "state.json");
  EXPECT_EQ(load_state(dir / "state.json"), state);
  EXPECT_FALSE(std::filesystem::exists(dir / "state.json.tmp"));
}

TEST(Persistence, DetectsCorruptionAndOldSchemas) {
  testing::TempDir dir;
  EXPECT_EQ(error_code([&] { load_state(dir / "missing.json"); }),
            Errc::kNotFound);

  save_state(played_state(), dir / "state.json");
  std::string text = testing::read_text(dir / "state.json");
  const auto pos = text.find("\"score\": ");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 9, "1");
  testing::write_text(dir / "tampered.json", text);
  EXPECT_EQ(error_code([&] { load_state(dir / "tampered.json"); }),
            Errc::kCorrupt);

  testing::write_text(dir / "truncated.json", text.substr(0, text.size() / 2));
  EXPECT_EQ(error_code([&] { load_state(dir / "truncated.json"); }),
            Errc::kCorrupt);

  EXPECT_EQ(error_code([] {
              load_state(testing::fixture("state/schema_v1.json"));
            }),
            Errc::kSchemaMismatch);
}

TEST(Persistence, RefusesToWriteInvalidState) {
  testing::TempDir dir;
  ProjectState state = played_state();
  save_state(state, dir / "state.json");
  ProjectState broken = state;
  broken.users["bob"].score = -5;
  EXPECT_EQ(error_code([&] { save_state(broken, dir / "state.json"); }),
            Errc::kInvariantViolation);
  EXPECT_EQ(load_state(dir / "state.json"), state);
}

TEST(Reset, KeepsRegistrationsAndClearsGameData) {
  ProjectState state = played_state();
  state.users["alice"].avatar_id = 17;
  state.users["alice"].notifications_enabled = true;
  Team team;
  team.team_id = "t1";
  team.name = "Team";
  team.member_user_ids = {"alice", "bob"};
  state.teams["t1"] = team;

  const ProjectState fresh = reset_project(state);
  EXPECT_TRUE(fresh.challenges.empty());
  EXPECT_TRUE(fresh.quests.empty());
  EXPECT_TRUE(fresh.event_log.empty());
  EXPECT_TRUE(fresh.score_ledger.empty());
  EXPECT_EQ(fresh.build_counter, 0);
  EXPECT_EQ(fresh.users.at("alice").avatar_id, 17);
  EXPECT_TRUE(fresh.users.at("alice").notifications_enabled);
  EXPECT_EQ(fresh.users.at("alice").git_identities, std::set<std::string>{"alice"});
  EXPECT_EQ(fresh.users.at("alice").score, 0);
  EXPECT_EQ(fresh.users.at("alice").pseudonym, state.users.at("alice").pseudonym);
  EXPECT_EQ(fresh.teams, state.teams);
  EXPECT_NO_THROW(validate_state(fresh));
}

TEST(Statistics, GatedAndAnonymized) {
  ProjectState state = played_state();
  EXPECT_EQ(error_code([&] { export_statistics(state); }), Errc::kDisabled);
  state.config.statistics_enabled = true;
  const auto stats = export_statistics(state);
  EXPECT_EQ(stats["builds"].size(), 2u);
  EXPECT_EQ(stats["participants"].size(), 2u);
  const std::string text = stats.dump();
  EXPECT_EQ(text.find("alice"), std::string::npos);
  EXPECT_EQ(text.find("Calculator"), std::string::npos);
  std::int64_t score_sum = 0;
  for (const auto& p : stats["participants"]) score_sum += p["score"].get<std::int64_t>();
  EXPECT_EQ(score_sum, state.users["alice"].score + state.users["bob"].score);
}

TEST(Users, PseudonymsAreUniqueAndStable) {
  ProjectState state = make_project("p");
  const std::string a = ensure_user(state, "alice").pseudonym;
  const std::string b = ensure_user(state, "bob").pseudonym;
  EXPECT_NE(a, b);
  EXPECT_EQ(ensure_user(state, "alice").pseudonym, a);
}

}  // namespace
}  // namespace testquest
