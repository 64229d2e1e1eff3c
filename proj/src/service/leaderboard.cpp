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
#include <map>

#include "testquest/error.hpp"
#include "testquest/service.hpp"

namespace testquest::service {

namespace {

void check_scores(const ProjectState& state) {
  const auto ledger = ledger_scores(state);
  for (const auto& [id, user] : state.users) {
    const auto it = ledger.find(id);
    const std::int64_t expected = it == ledger.end() ? 0 : it->second;
    if (user.score != expected) {
      throw Error(Errc::kInvariantViolation,
                  "score of " + id + " differs from its ledger sum");
    }
  }
}

LeaderboardRow user_row(const UserProfile& user) {
  return {user.user_id,
          user.display_name,
          user.avatar_id,
          user.completed_challenge_count,
          user.completed_quest_count,
          user.completed_achievement_count,
          user.score};
}

void add_counts(LeaderboardRow& into, const LeaderboardRow& from) {
  into.completed_challenges += from.completed_challenges;
  into.completed_quests += from.completed_quests;
  into.completed_achievements += from.completed_achievements;
  into.score += from.score;
}

std::vector<LeaderboardRow> rows_of(const ProjectState& state,
                                    LeaderboardMode mode) {
  std::vector<LeaderboardRow> rows;
  if (mode == LeaderboardMode::kUser) {
    for (const auto& [_, user] : state.users) rows.push_back(user_row(user));
    return rows;
  }
  for (const auto& [id, team] : state.teams) {
    LeaderboardRow row;
    row.subject = id;
    row.display_name = team.name.empty() ? id : team.name;
    for (const auto& member : team.member_user_ids) {
      const auto it = state.users.find(member);
      if (it != state.users.end()) add_counts(row, user_row(it->second));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::optional<LeaderboardMode> parse_leaderboard_mode(std::string_view text) {
  if (text.empty() || text == "user") return LeaderboardMode::kUser;
  if (text == "team") return LeaderboardMode::kTeam;
  return std::nullopt;
}

nlohmann::json to_json(const LeaderboardRow& row) {
  return {{"subject", row.subject},
          {"displayName", row.display_name},
          {"avatarId", row.avatar_id},
          {"completedChallenges", row.completed_challenges},
          {"completedQuests", row.completed_quests},
          {"completedAchievements", row.completed_achievements},
          {"score", row.score}};
}

void sort_rows(std::vector<LeaderboardRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const LeaderboardRow& a, const LeaderboardRow& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.completed_challenges != b.completed_challenges)
                       return a.completed_challenges > b.completed_challenges;
                     if (a.display_name != b.display_name)
                       return a.display_name < b.display_name;
                     return a.subject < b.subject;
                   });
}

std::vector<LeaderboardRow> leaderboard(const ProjectState& state,
                                        LeaderboardMode mode) {
  if (!state.config.leaderboard_enabled) {
    throw Error(Errc::kDisabled,
                "leaderboard is disabled for " + state.config.project_id);
  }
  check_scores(state);
  auto rows = rows_of(state, mode);
  sort_rows(rows);
  return rows;
}

std::vector<LeaderboardRow> group_leaderboard(
    std::span<const ProjectState> projects, LeaderboardMode mode) {
  std::map<std::string, LeaderboardRow> merged;
  bool any = false;
  for (const auto& state : projects) {
    if (!state.config.leaderboard_enabled) continue;
    any = true;
    check_scores(state);
    for (const auto& row : rows_of(state, mode)) {
      auto [it, inserted] = merged.try_emplace(row.subject, row);
      if (!inserted) add_counts(it->second, row);
    }
  }
  if (!any) throw Error(Errc::kDisabled, "no project in the group has a leaderboard");
  std::vector<LeaderboardRow> rows;
  for (auto& [_, row] : merged) rows.push_back(std::move(row));
  sort_rows(rows);
  return rows;
}

}  // namespace testquest::service
