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


#include "testquest/achievements.hpp"

namespace testquest::achievements {

namespace {

// Solved challenges of the user, quest steps included.
std::int64_t solved_count(const ProjectState& state, const std::string& user,
                          std::optional<ChallengeKind> kind) {
  std::int64_t n = 0;
  auto count = [&](const Challenge& c) {
    if (c.state == ChallengeState::kSolved && (!kind || c.kind == *kind)) ++n;
  };
  for (const auto& c : state.challenges) {
    if (c.owner_user_id == user) count(c);
  }
  for (const auto& q : state.quests) {
    if (q.owner_user_id != user) continue;
    for (const auto& step : q.steps) count(step);
  }
  return n;
}

template <typename T>
std::optional<double> as_double(std::optional<T> value) {
  if (!value) return std::nullopt;
  return static_cast<double>(*value);
}

bool completed(const ProjectState& state, const std::string& user,
               const std::string& id) {
  const auto it = state.achievements.find(user);
  return it != state.achievements.end() && it->second.contains(id);
}

void record(ProjectState& state, const std::string& user,
            const Achievement& a, const challenges::RunFacts& facts) {
  state.achievements[user][a.id] = {facts.timestamp(), facts.build_id()};
  ++ensure_user(state, user).completed_achievement_count;
  append_event(state, EventType::kAchievementCompleted, user,
               facts.build_id(), facts.timestamp(),
               {{"achievementId", a.id},
                {"title", a.title},
                {"secret", a.secret},
                {"scope", to_string(a.scope)}});
}

}  // namespace

std::optional<double> metric_value(const ProjectState& state,
                                   const std::string& user_id,
                                   const challenges::RunFacts& facts,
                                   const Achievement& a) {
  switch (a.metric) {
    case Metric::kChallengesSolvedTotal:
      return static_cast<double>(solved_count(state, user_id, std::nullopt));
    case Metric::kChallengesSolvedOfKind:
      return static_cast<double>(solved_count(state, user_id, a.kind_filter));
    case Metric::kQuestsCompleted: {
      std::int64_t n = 0;
      for (const auto& q : state.quests) {
        if (q.owner_user_id == user_id && q.state == QuestState::kCompleted)
          ++n;
      }
      return static_cast<double>(n);
    }
    case Metric::kProjectLineCoverage:
      return facts.line_coverage();
    case Metric::kProjectBranchCoverage:
      return facts.branch_coverage();
    case Metric::kProjectTestCount:
      return as_double(facts.current_test_count());
    case Metric::kClassFullyCoveredCount:
      return as_double(facts.fully_covered_class_count());
    case Metric::kMutantsKilledTotal:
      return static_cast<double>(
          solved_count(state, user_id, ChallengeKind::kMutation));
    case Metric::kSmellsRemovedTotal:
      return static_cast<double>(
          solved_count(state, user_id, ChallengeKind::kSmell));
    case Metric::kBuildsFixedTotal:
      return static_cast<double>(
          solved_count(state, user_id, ChallengeKind::kBuild));
    case Metric::kScoreTotal: {
      const auto it = state.users.find(user_id);
      if (it == state.users.end()) return 0.0;
      return static_cast<double>(it->second.score);
    }
  }
  return std::nullopt;
}

bool satisfied(const Achievement& a, double value) {
  return a.comparator == Comparator::kEqual ? value == a.threshold
                                            : value >= a.threshold;
}

std::vector<std::string> evaluate_achievements(
    ProjectState& state, const std::string& user_id,
    const challenges::RunFacts& facts, const Registry& registry) {
  std::vector<std::string> fresh;
  // Evaluate everything first, then record.
  std::vector<const Achievement*> due;
  for (const auto& a : registry.entries()) {
    if (a.scope == AchievementScope::kIndividual) {
      if (completed(state, user_id, a.id)) continue;
    } else {
      bool anyone_missing = false;
      for (const auto& [user, _] : state.users)
        anyone_missing = anyone_missing || !completed(state, user, a.id);
      if (!anyone_missing) continue;
    }
    const auto value = metric_value(state, user_id, facts, a);
    if (value && satisfied(a, *value)) due.push_back(&a);
  }

  for (const Achievement* a : due) {
    if (a->scope == AchievementScope::kIndividual) {
      record(state, user_id, *a, facts);
      fresh.push_back(a->id);
      continue;
    }
    std::vector<std::string> recipients;
    for (const auto& [user, _] : state.users) {
      if (!completed(state, user, a->id)) recipients.push_back(user);
    }
    for (const auto& user : recipients) {
      record(state, user, *a, facts);
      if (user == user_id) fresh.push_back(a->id);
    }
  }
  return fresh;
}

}  // namespace testquest::achievements
