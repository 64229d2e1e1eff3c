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
#include "testquest/service.hpp"

namespace testquest::service {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(Errc::kValidation, what);
}

void check_state(const ProjectState& state) {
  ingest::validate_registry(identity_registry(state));
  try {
    validate_state(state);
  } catch (const Error& e) {
    if (e.code() != Errc::kInvariantViolation) throw;
    invalid(e.what());
  }
}

void apply_user(ProjectState& state, const json& doc) {
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string())
    invalid("user entry needs a text \"id\"");
  const std::string id = doc["id"].get<std::string>();
  if (id.empty()) invalid("user id is empty");
  UserProfile& user = ensure_user(state, id);
  if (doc.contains("displayName")) user.display_name = doc["displayName"].get<std::string>();
  if (doc.contains("gitNames"))
    user.git_identities = doc["gitNames"].get<std::set<std::string>>();
  if (doc.contains("avatarId")) {
    const int avatar = doc["avatarId"].get<int>();
    if (avatar < 1 || avatar > kAvatarCount)
      invalid("avatar " + std::to_string(avatar) + " is outside 1.." +
              std::to_string(kAvatarCount));
    user.avatar_id = avatar;
  }
  if (doc.contains("notifications"))
    user.notifications_enabled = doc["notifications"].get<bool>();
}

void apply_team(ProjectState& state, const json& doc) {
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string())
    invalid("team entry needs a text \"id\"");
  const std::string id = doc["id"].get<std::string>();
  if (id.empty()) invalid("team id is empty");
  Team& team = state.teams[id];
  team.team_id = id;
  if (doc.contains("name")) team.name = doc["name"].get<std::string>();
  if (team.name.empty()) team.name = id;
  if (doc.contains("members")) {
    team.member_user_ids = doc["members"].get<std::set<std::string>>();
    for (const auto& member : team.member_user_ids) {
      if (!state.users.contains(member))
        invalid("team " + id + " lists unknown user " + member);
    }
  }
}

}  // namespace

ProjectState apply_project_file(const ProjectState& state,
                                const json& document) {
  if (!document.is_object()) invalid("project file is not an object");
  ProjectState next = state;
  try {
    if (document.contains("project")) {
      const json& project = document["project"];
      if (project.contains("projectId") &&
          project["projectId"].get<std::string>() != state.config.project_id)
        invalid("project file names project " +
                project["projectId"].get<std::string>());
      next.config = config_from_json(project, next.config);
    }
    if (document.contains("users")) {
      for (const auto& user : document["users"]) apply_user(next, user);
    }
    if (document.contains("teams")) {
      for (const auto& team : document["teams"]) apply_team(next, team);
    }
  } catch (const json::exception& e) {
    invalid(std::string("project file: ") + e.what());
  }
  check_state(next);
  return next;
}

ProjectState set_identities(const ProjectState& state,
                            const std::string& user_id,
                            const std::set<std::string>& identities) {
  if (user_id.empty()) invalid("user id is empty");
  ProjectState next = state;
  ensure_user(next, user_id).git_identities = identities;
  check_state(next);
  return next;
}

ProjectState set_avatar(const ProjectState& state, const std::string& user_id,
                        int avatar_id) {
  if (!state.users.contains(user_id))
    throw Error(Errc::kUnknownUser, "no user " + user_id);
  if (avatar_id < 1 || avatar_id > kAvatarCount)
    invalid("avatar " + std::to_string(avatar_id) + " is outside 1.." +
            std::to_string(kAvatarCount));
  ProjectState next = state;
  next.users.at(user_id).avatar_id = avatar_id;
  return next;
}

}  // namespace testquest::service
