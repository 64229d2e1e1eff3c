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


#include "httplib.h"
#include "testquest/error.hpp"
#include "testquest/service.hpp"

namespace testquest::service {

namespace {

std::string_view view_of(EventType type) {
  switch (type) {
    case EventType::kChallengeGenerated:
    case EventType::kChallengeSolved:
    case EventType::kChallengeExpired:
    case EventType::kChallengeRejected:
    case EventType::kBuildChallengeIssued:
      return "challenges";
    case EventType::kQuestGenerated:
    case EventType::kQuestStepSolved:
    case EventType::kQuestCompleted:
    case EventType::kQuestExpired:
    case EventType::kQuestRejected:
      return "quests";
    case EventType::kAchievementCompleted:
      return "achievements";
    case EventType::kUserUnresolved:
      return "settings";
  }
  return "challenges";
}

std::string link(const ProjectState& state, const std::string& user,
                 std::string_view view) {
  if (view == "leaderboard")
    return state.config.dashboard_url + "#/projects/" +
           state.config.project_id + "/leaderboard";
  return state.config.dashboard_url + "#/projects/" + state.config.project_id +
         "/users/" + user + "/" + std::string(view);
}

}  // namespace

nlohmann::json notification_digest(const ProjectState& state,
                                   const std::string& user_id,
                                   std::int64_t since_build) {
  const auto it = state.users.find(user_id);
  if (it == state.users.end())
    throw Error(Errc::kUnknownUser, "no user " + user_id);

  nlohmann::json entries = nlohmann::json::array();
  if (it->second.notifications_enabled) {
    for (const auto& e : state.event_log) {
      if (e.user_id != user_id || e.build_id < since_build) continue;
      entries.push_back({{"eventId", e.event_id},
                         {"type", to_string(e.type)},
                         {"build", e.build_id},
                         {"timestamp", e.timestamp},
                         {"payload", e.payload},
                         {"link", link(state, user_id, view_of(e.type))}});
    }
  }
  return {{"project", state.config.project_id},
          {"user", user_id},
          {"sinceBuild", since_build},
          {"entries", std::move(entries)},
          {"links",
           {{"challenges", link(state, user_id, "challenges")},
            {"quests", link(state, user_id, "quests")},
            {"achievements", link(state, user_id, "achievements")},
            {"leaderboard", link(state, user_id, "leaderboard")}}}};
}

std::optional<std::string> post_webhook(const std::string& url,
                                        const nlohmann::json& document) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme)) return "webhook URL must start with http://";
  const auto slash = url.find('/', kScheme.size());
  const std::string origin =
      slash == std::string::npos ? url : url.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : url.substr(slash);

  httplib::Client client(origin);
  client.set_connection_timeout(5);
  client.set_read_timeout(5);
  const auto response =
      client.Post(path, document.dump(), "application/json");
  if (!response) return "webhook " + url + ": " + httplib::to_string(response.error());
  if (response->status < 200 || response->status >= 300)
    return "webhook " + url + " answered " + std::to_string(response->status);
  return std::nullopt;
}

}  // namespace testquest::service
