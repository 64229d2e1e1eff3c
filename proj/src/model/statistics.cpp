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

bool is_lifecycle_event(EventType type) {
  switch (type) {
    case EventType::kChallengeGenerated:
    case EventType::kChallengeSolved:
    case EventType::kChallengeExpired:
    case EventType::kChallengeRejected:
    case EventType::kQuestGenerated:
    case EventType::kQuestStepSolved:
    case EventType::kQuestCompleted:
    case EventType::kQuestExpired:
    case EventType::kQuestRejected:
    case EventType::kBuildChallengeIssued:
      return true;
    case EventType::kAchievementCompleted:
    case EventType::kUserUnresolved:
      return false;
  }
  return false;
}

}  // namespace

json export_statistics(const ProjectState& state) {
  if (!state.config.statistics_enabled)
    throw Error(Errc::kDisabled,
                "statistics are disabled for " + state.config.project_id);

  auto pseudonym = [&state](const std::string& user) -> std::string {
    const auto it = state.users.find(user);
    return it == state.users.end() ? "unregistered" : it->second.pseudonym;
  };

  json builds = json::array();
  for (const auto& b : state.build_history) {
    json row = {{"build", b.build_id},
                {"timestamp", b.timestamp},
                {"succeeded", b.build_succeeded},
                {"classes", b.class_count}};
    row["tests"] = b.total_tests ? json(*b.total_tests) : json(nullptr);
    row["failedTests"] = b.failed_tests ? json(*b.failed_tests) : json(nullptr);
    row["lineCoverage"] =
        b.line_coverage ? json(*b.line_coverage) : json(nullptr);
    row["branchCoverage"] =
        b.branch_coverage ? json(*b.branch_coverage) : json(nullptr);
    builds.push_back(std::move(row));
  }

  // Payloads are reduced to kind and points: targets, snippets, reasons
  // and author names never leave the project.
  json events = json::array();
  for (const auto& e : state.event_log) {
    if (!is_lifecycle_event(e.type)) continue;
    json row = {{"build", e.build_id},
                {"type", to_string(e.type)},
                {"participant", pseudonym(e.user_id)},
                {"timestamp", e.timestamp}};
    if (e.payload.contains("kind")) row["kind"] = e.payload["kind"];
    if (e.payload.contains("points")) row["points"] = e.payload["points"];
    events.push_back(std::move(row));
  }

  json participants = json::array();
  std::map<std::string, const UserProfile*> by_pseudonym;
  for (const auto& [id, user] : state.users) by_pseudonym[user.pseudonym] = &user;
  for (const auto& [name, user] : by_pseudonym) {
    participants.push_back(
        {{"participant", name},
         {"score", user->score},
         {"completedChallenges", user->completed_challenge_count},
         {"completedQuests", user->completed_quest_count},
         {"completedAchievements", user->completed_achievement_count}});
  }

  return {{"builds", std::move(builds)},
          {"events", std::move(events)},
          {"participants", std::move(participants)}};
}

}  // namespace testquest
