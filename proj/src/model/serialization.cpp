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

#include "testquest/error.hpp"
#include "testquest/model.hpp"

namespace testquest {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

template <typename Enum, typename Parser>
Enum enum_from(const json& doc, const char* key, Parser parse) {
  const auto text = doc.at(key).get<std::string>();
  const auto value = parse(text);
  if (!value) {
    throw Error(Errc::kCorrupt,
                std::string("unknown value '") + text + "' for " + key);
  }
  return *value;
}

json to_json(const Baseline& b) {
  return {{"classCoverage", b.class_coverage},
          {"classCoveredLines", b.class_covered_lines},
          {"methodCoverage", b.method_coverage},
          {"lineCoveredBranches", b.line_covered_branches},
          {"testCount", b.test_count}};
}

Baseline baseline_from_json(const json& doc) {
  Baseline b;
  b.class_coverage = doc.at("classCoverage").get<double>();
  b.class_covered_lines = doc.at("classCoveredLines").get<std::int64_t>();
  b.method_coverage = doc.at("methodCoverage").get<double>();
  b.line_covered_branches = doc.at("lineCoveredBranches").get<std::int64_t>();
  b.test_count = doc.at("testCount").get<std::int64_t>();
  return b;
}

json to_json(const UserProfile& u) {
  return {{"userId", u.user_id},
          {"displayName", u.display_name},
          {"gitIdentities", u.git_identities},
          {"avatarId", u.avatar_id},
          {"notificationsEnabled", u.notifications_enabled},
          {"score", u.score},
          {"completedChallenges", u.completed_challenge_count},
          {"completedQuests", u.completed_quest_count},
          {"completedAchievements", u.completed_achievement_count},
          {"pseudonym", u.pseudonym}};
}

UserProfile user_from_json(const json& doc) {
  UserProfile u;
  u.user_id = doc.at("userId").get<std::string>();
  u.display_name = doc.at("displayName").get<std::string>();
  u.git_identities = doc.at("gitIdentities").get<std::set<std::string>>();
  u.avatar_id = doc.at("avatarId").get<int>();
  u.notifications_enabled = doc.at("notificationsEnabled").get<bool>();
  u.score = doc.at("score").get<std::int64_t>();
  u.completed_challenge_count = doc.at("completedChallenges").get<std::int64_t>();
  u.completed_quest_count = doc.at("completedQuests").get<std::int64_t>();
  u.completed_achievement_count =
      doc.at("completedAchievements").get<std::int64_t>();
  u.pseudonym = doc.at("pseudonym").get<std::string>();
  return u;
}

json to_json(const Team& t) {
  return {{"teamId", t.team_id},
          {"name", t.name},
          {"members", t.member_user_ids}};
}

Team team_from_json(const json& doc) {
  Team t;
  t.team_id = doc.at("teamId").get<std::string>();
  t.name = doc.at("name").get<std::string>();
  t.member_user_ids = doc.at("members").get<std::set<std::string>>();
  return t;
}

Quest quest_from_json(const json& doc) {
  Quest q;
  q.quest_id = doc.at("questId").get<std::string>();
  q.owner_user_id = doc.at("owner").get<std::string>();
  q.kind = enum_from<QuestKind>(doc, "kind", parse_quest_kind);
  q.locus = doc.at("locus").get<std::string>();
  for (const auto& step : doc.at("steps")) {
    q.steps.push_back(challenge_from_json(step));
  }
  q.current_index = doc.at("currentIndex").get<int>();
  q.state = enum_from<QuestState>(doc, "state", parse_quest_state);
  q.created_build = doc.at("createdBuild").get<std::int64_t>();
  q.closed_build = optional_from<std::int64_t>(doc, "closedBuild");
  q.rejection_reason = optional_from<std::string>(doc, "rejectionReason");
  q.awarded_points = doc.at("awardedPoints").get<std::int64_t>();
  return q;
}

json to_json(const LedgerEntry& e) {
  return {{"user", e.user_id},
          {"points", e.points},
          {"source", e.source_id},
          {"build", e.build_id},
          {"timestamp", e.timestamp}};
}

LedgerEntry ledger_from_json(const json& doc) {
  LedgerEntry e;
  e.user_id = doc.at("user").get<std::string>();
  e.points = doc.at("points").get<std::int64_t>();
  e.source_id = doc.at("source").get<std::string>();
  e.build_id = doc.at("build").get<std::int64_t>();
  e.timestamp = doc.at("timestamp").get<std::int64_t>();
  return e;
}

json to_json(const BuildSummary& b) {
  return {{"buildId", b.build_id},
          {"timestamp", b.timestamp},
          {"buildSucceeded", b.build_succeeded},
          {"totalTests", optional_json(b.total_tests)},
          {"failedTests", optional_json(b.failed_tests)},
          {"lineCoverage", optional_json(b.line_coverage)},
          {"branchCoverage", optional_json(b.branch_coverage)},
          {"classCount", b.class_count},
          {"headCommit", b.head_commit}};
}

BuildSummary build_summary_from_json(const json& doc) {
  BuildSummary b;
  b.build_id = doc.at("buildId").get<std::int64_t>();
  b.timestamp = doc.at("timestamp").get<std::int64_t>();
  b.build_succeeded = doc.at("buildSucceeded").get<bool>();
  b.total_tests = optional_from<std::int64_t>(doc, "totalTests");
  b.failed_tests = optional_from<std::int64_t>(doc, "failedTests");
  b.line_coverage = optional_from<double>(doc, "lineCoverage");
  b.branch_coverage = optional_from<double>(doc, "branchCoverage");
  b.class_count = doc.at("classCount").get<std::int64_t>();
  b.head_commit = doc.at("headCommit").get<std::string>();
  return b;
}

}  // namespace

json to_json(const ProjectConfig& c) {
  return {{"projectId", c.project_id},
          {"openChallengeTarget", c.open_challenge_target},
          {"openQuestTarget", c.open_quest_target},
          {"coverageThreshold", c.coverage_threshold},
          {"searchCommitCount", c.search_commit_count},
          {"sourceRoots", c.source_roots},
          {"testRoots", c.test_roots},
          {"testGlobs", c.test_globs},
          {"groupId", optional_json(c.group_id)},
          {"leaderboardEnabled", c.leaderboard_enabled},
          {"statisticsEnabled", c.statistics_enabled},
          {"achievementRegistry", c.achievement_registry},
          {"dashboardUrl", c.dashboard_url}};
}

ProjectConfig config_from_json(const json& doc, ProjectConfig c) {
  auto read = [&doc](const char* key, auto& field) {
    const auto it = doc.find(key);
    if (it != doc.end() && !it->is_null())
      field = it->get<std::decay_t<decltype(field)>>();
  };
  read("projectId", c.project_id);
  read("openChallengeTarget", c.open_challenge_target);
  read("openQuestTarget", c.open_quest_target);
  read("coverageThreshold", c.coverage_threshold);
  read("searchCommitCount", c.search_commit_count);
  read("sourceRoots", c.source_roots);
  read("testRoots", c.test_roots);
  read("testGlobs", c.test_globs);
  if (doc.contains("groupId"))
    c.group_id = optional_from<std::string>(doc, "groupId");
  read("leaderboardEnabled", c.leaderboard_enabled);
  read("statisticsEnabled", c.statistics_enabled);
  read("achievementRegistry", c.achievement_registry);
  read("dashboardUrl", c.dashboard_url);
  return c;
}

json to_json(const Challenge& c) {
  return {{"challengeId", c.challenge_id},
          {"owner", c.owner_user_id},
          {"kind", to_string(c.kind)},
          {"targetClass", c.target_class},
          {"targetMethod", c.target_method},
          {"targetLine", c.target_line},
          {"targetMutantId", c.target_mutant_id},
          {"targetSmellId", c.target_smell_id},
          {"targetFile", c.target_file},
          {"smellRule", c.smell_rule},
          {"points", c.points},
          {"baseline", to_json(c.baseline)},
          {"createdBuild", c.created_build},
          {"state", to_string(c.state)},
          {"solvedBuild", optional_json(c.solved_build)},
          {"closedBuild", optional_json(c.closed_build)},
          {"rejectionReason", optional_json(c.rejection_reason)},
          {"description", c.description},
          {"snippet", c.snippet},
          {"snippetFirstLine", c.snippet_first_line},
          {"mutatedSnippet", c.mutated_snippet}};
}

Challenge challenge_from_json(const json& doc) {
  Challenge c;
  c.challenge_id = doc.at("challengeId").get<std::string>();
  c.owner_user_id = doc.at("owner").get<std::string>();
  c.kind = enum_from<ChallengeKind>(doc, "kind", parse_challenge_kind);
  c.target_class = doc.at("targetClass").get<std::string>();
  c.target_method = doc.at("targetMethod").get<std::string>();
  c.target_line = doc.at("targetLine").get<int>();
  c.target_mutant_id = doc.at("targetMutantId").get<std::string>();
  c.target_smell_id = doc.at("targetSmellId").get<std::string>();
  c.target_file = doc.at("targetFile").get<std::string>();
  c.smell_rule = doc.at("smellRule").get<std::string>();
  c.points = doc.at("points").get<int>();
  c.baseline = baseline_from_json(doc.at("baseline"));
  c.created_build = doc.at("createdBuild").get<std::int64_t>();
  c.state = enum_from<ChallengeState>(doc, "state", parse_challenge_state);
  c.solved_build = optional_from<std::int64_t>(doc, "solvedBuild");
  c.closed_build = optional_from<std::int64_t>(doc, "closedBuild");
  c.rejection_reason = optional_from<std::string>(doc, "rejectionReason");
  c.description = doc.at("description").get<std::string>();
  c.snippet = doc.at("snippet").get<std::string>();
  c.snippet_first_line = doc.at("snippetFirstLine").get<int>();
  c.mutated_snippet = doc.at("mutatedSnippet").get<std::string>();
  return c;
}

json to_json(const Quest& q) {
  json steps = json::array();
  for (const auto& step : q.steps) steps.push_back(to_json(step));
  return {{"questId", q.quest_id},
          {"owner", q.owner_user_id},
          {"kind", to_string(q.kind)},
          {"locus", q.locus},
          {"steps", std::move(steps)},
          {"currentIndex", q.current_index},
          {"state", to_string(q.state)},
          {"createdBuild", q.created_build},
          {"closedBuild", optional_json(q.closed_build)},
          {"rejectionReason", optional_json(q.rejection_reason)},
          {"awardedPoints", q.awarded_points}};
}

json to_json(const EngineEvent& e) {
  return {{"eventId", e.event_id},
          {"buildId", e.build_id},
          {"user", e.user_id},
          {"type", to_string(e.type)},
          {"payload", e.payload},
          {"timestamp", e.timestamp}};
}

EngineEvent event_from_json(const json& doc) {
  EngineEvent e;
  e.event_id = doc.at("eventId").get<std::int64_t>();
  e.build_id = doc.at("buildId").get<std::int64_t>();
  e.user_id = doc.at("user").get<std::string>();
  e.type = enum_from<EventType>(doc, "type", parse_event_type);
  e.payload = doc.at("payload");
  e.timestamp = doc.at("timestamp").get<std::int64_t>();
  return e;
}

json to_json(const ProjectState& s) {
  json users = json::object();
  for (const auto& [id, user] : s.users) users[id] = to_json(user);
  json teams = json::object();
  for (const auto& [id, team] : s.teams) teams[id] = to_json(team);
  json challenges = json::array();
  for (const auto& c : s.challenges) challenges.push_back(to_json(c));
  json quests = json::array();
  for (const auto& q : s.quests) quests.push_back(to_json(q));
  json achievements = json::object();
  for (const auto& [user, completions] : s.achievements) {
    json per_user = json::object();
    for (const auto& [id, done] : completions) {
      per_user[id] = {{"timestamp", done.timestamp}, {"build", done.build_id}};
    }
    achievements[user] = std::move(per_user);
  }
  json history = json::array();
  for (const auto& b : s.build_history) history.push_back(to_json(b));
  json ledger = json::array();
  for (const auto& e : s.score_ledger) ledger.push_back(to_json(e));
  json events = json::array();
  for (const auto& e : s.event_log) events.push_back(to_json(e));

  return {{"config", to_json(s.config)},
          {"users", std::move(users)},
          {"teams", std::move(teams)},
          {"challenges", std::move(challenges)},
          {"quests", std::move(quests)},
          {"achievements", std::move(achievements)},
          {"rejectedClasses", s.rejected_class_fqns},
          {"rejectedFingerprints", s.rejected_fingerprints},
          {"lastSnapshot", s.last_snapshot ? to_json(*s.last_snapshot)
                                           : json(nullptr)},
          {"buildHistory", std::move(history)},
          {"buildCounter", s.build_counter},
          {"challengeCounter", s.challenge_counter},
          {"questCounter", s.quest_counter},
          {"eventCounter", s.event_counter},
          {"pseudonymCounter", s.pseudonym_counter},
          {"scoreLedger", std::move(ledger)},
          {"eventLog", std::move(events)}};
}

ProjectState state_from_json(const json& doc) {
  ProjectState s;
  s.config = config_from_json(doc.at("config"), ProjectConfig{});
  for (const auto& [id, user] : doc.at("users").items())
    s.users.emplace(id, user_from_json(user));
  for (const auto& [id, team] : doc.at("teams").items())
    s.teams.emplace(id, team_from_json(team));
  for (const auto& c : doc.at("challenges"))
    s.challenges.push_back(challenge_from_json(c));
  for (const auto& q : doc.at("quests")) s.quests.push_back(quest_from_json(q));
  for (const auto& [user, completions] : doc.at("achievements").items()) {
    auto& per_user = s.achievements[user];
    for (const auto& [id, done] : completions.items()) {
      per_user[id] = {done.at("timestamp").get<std::int64_t>(),
                      done.at("build").get<std::int64_t>()};
    }
  }
  s.rejected_class_fqns =
      doc.at("rejectedClasses").get<std::set<std::string>>();
  s.rejected_fingerprints =
      doc.at("rejectedFingerprints").get<std::set<std::string>>();
  if (!doc.at("lastSnapshot").is_null())
    s.last_snapshot = build_summary_from_json(doc.at("lastSnapshot"));
  for (const auto& b : doc.at("buildHistory"))
    s.build_history.push_back(build_summary_from_json(b));
  s.build_counter = doc.at("buildCounter").get<std::int64_t>();
  s.challenge_counter = doc.at("challengeCounter").get<std::int64_t>();
  s.quest_counter = doc.at("questCounter").get<std::int64_t>();
  s.event_counter = doc.at("eventCounter").get<std::int64_t>();
  s.pseudonym_counter = doc.at("pseudonymCounter").get<std::int64_t>();
  for (const auto& e : doc.at("scoreLedger"))
    s.score_ledger.push_back(ledger_from_json(e));
  for (const auto& e : doc.at("eventLog"))
    s.event_log.push_back(event_from_json(e));
  return s;
}

std::string canonical_text(const ProjectState& state) {
  return to_json(state).dump(2) + "\n";
}

}  // namespace testquest
