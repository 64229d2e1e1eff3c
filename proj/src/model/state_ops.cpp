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

#include <algorithm>

#include "testquest/error.hpp"
#include "testquest/model.hpp"

namespace testquest {

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(Errc::kInvariantViolation, what);
}

}  // namespace

ProjectState make_project(const std::string& project_id) {
  ProjectState state;
  state.config.project_id = project_id;
  return state;
}

UserProfile& ensure_user(ProjectState& state, const std::string& user_id) {
  auto [it, inserted] = state.users.try_emplace(user_id);
  if (inserted) {
    it->second.user_id = user_id;
    it->second.display_name = user_id;
    it->second.pseudonym = "p" + std::to_string(++state.pseudonym_counter);
  }
  return it->second;
}

ingest::IdentityRegistry identity_registry(const ProjectState& state) {
  ingest::IdentityRegistry registry;
  for (const auto& [id, user] : state.users) {
    registry.emplace(id, user.git_identities);
  }
  return registry;
}

Challenge* find_challenge(ProjectState& state, std::string_view id) {
  for (auto& c : state.challenges) {
    if (c.challenge_id == id) return &c;
  }
  return nullptr;
}

Quest* find_quest(ProjectState& state, std::string_view id) {
  for (auto& q : state.quests) {
    if (q.quest_id == id) return &q;
  }
  return nullptr;
}

const EngineEvent& append_event(ProjectState& state, EventType type,
                                const std::string& user_id,
                                std::int64_t build_id, std::int64_t timestamp,
                                nlohmann::json payload) {
  EngineEvent event;
  event.event_id = ++state.event_counter;
  event.build_id = build_id;
  event.user_id = user_id;
  event.type = type;
  event.payload = std::move(payload);
  event.timestamp = timestamp;
  state.event_log.push_back(std::move(event));
  return state.event_log.back();
}

void award_points(ProjectState& state, const std::string& user_id,
                  std::int64_t points, const std::string& source_id,
                  std::int64_t build_id, std::int64_t timestamp) {
  state.score_ledger.push_back({user_id, points, source_id, build_id, timestamp});
  ensure_user(state, user_id).score += points;
}

std::map<std::string, std::int64_t> ledger_scores(const ProjectState& state) {
  std::map<std::string, std::int64_t> scores;
  for (const auto& entry : state.score_ledger) {
    scores[entry.user_id] += entry.points;
  }
  return scores;
}

std::map<std::string, std::int64_t> replay_scores(
    std::span<const EngineEvent> events) {
  std::map<std::string, std::int64_t> scores;
  for (const auto& e : events) {
    if (e.type == EventType::kChallengeSolved ||
        e.type == EventType::kQuestCompleted) {
      scores[e.user_id] += e.payload.at("points").get<std::int64_t>();
    }
  }
  return scores;
}

void validate_state(const ProjectState& state) {
  const ProjectConfig& config = state.config;
  if (config.project_id.empty()) violation("project id is empty");
  if (config.open_challenge_target < 1)
    violation("open challenge target must be >= 1");
  if (config.open_quest_target < 1) violation("open quest target must be >= 1");
  if (!(config.coverage_threshold > 0.0 && config.coverage_threshold < 1.0))
    violation("coverage threshold must lie strictly between 0 and 1");
  if (config.search_commit_count < 1)
    violation("search commit count must be >= 1");

  const auto scores = ledger_scores(state);
  for (const auto& [id, user] : state.users) {
    if (id != user.user_id) violation("user key " + id + " differs from id");
    if (user.avatar_id < 1 || user.avatar_id > kAvatarCount)
      violation("user " + id + " has avatar " + std::to_string(user.avatar_id));
    const auto it = scores.find(id);
    const std::int64_t expected = it == scores.end() ? 0 : it->second;
    if (user.score != expected) {
      violation("user " + id + " score " + std::to_string(user.score) +
                " differs from ledger sum " + std::to_string(expected));
    }
  }
  for (const auto& [user, _] : scores) {
    if (!state.users.contains(user))
      violation("ledger names unknown user " + user);
  }

  std::map<std::string, std::string> team_of;
  for (const auto& [id, team] : state.teams) {
    for (const auto& member : team.member_user_ids) {
      if (!state.users.contains(member))
        violation("team " + id + " lists unknown user " + member);
      auto [it, inserted] = team_of.emplace(member, id);
      if (!inserted)
        violation("user " + member + " is in teams " + it->second + " and " + id);
    }
  }

  std::set<std::string> ids;
  for (const auto& c : state.challenges) {
    validate_challenge(c);
    if (c.state == ChallengeState::kDormant)
      violation("stand-alone challenge " + c.challenge_id + " is dormant");
    if (!state.users.contains(c.owner_user_id))
      violation("challenge " + c.challenge_id + " has unknown owner");
    if (!ids.insert(c.challenge_id).second)
      violation("duplicate challenge id " + c.challenge_id);
  }
  for (const auto& q : state.quests) {
    validate_quest(q);
    if (!state.users.contains(q.owner_user_id))
      violation("quest " + q.quest_id + " has unknown owner");
    if (!ids.insert(q.quest_id).second)
      violation("duplicate quest id " + q.quest_id);
  }

  std::int64_t last_event = 0;
  for (const auto& e : state.event_log) {
    if (e.event_id <= last_event) violation("event ids are not increasing");
    last_event = e.event_id;
  }
  if (last_event > state.event_counter)
    violation("event counter is behind the event log");
}

ProjectState reset_project(const ProjectState& state) {
  ProjectState fresh;
  fresh.config = state.config;
  fresh.teams = state.teams;
  fresh.pseudonym_counter = state.pseudonym_counter;
  for (const auto& [id, user] : state.users) {
    UserProfile kept;
    kept.user_id = user.user_id;
    kept.display_name = user.display_name;
    kept.git_identities = user.git_identities;
    kept.avatar_id = user.avatar_id;
    kept.notifications_enabled = user.notifications_enabled;
    kept.pseudonym = user.pseudonym;
    fresh.users.emplace(id, std::move(kept));
  }
  return fresh;
}

}  // namespace testquest
