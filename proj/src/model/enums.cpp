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

#include <array>
#include <utility>

#include "testquest/model.hpp"

namespace testquest {

namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<ChallengeKind, 7> kChallengeKinds = {{
    {ChallengeKind::kBuild, "Build"},
    {ChallengeKind::kTest, "Test"},
    {ChallengeKind::kClassCoverage, "ClassCoverage"},
    {ChallengeKind::kMethodCoverage, "MethodCoverage"},
    {ChallengeKind::kLineCoverage, "LineCoverage"},
    {ChallengeKind::kMutation, "Mutation"},
    {ChallengeKind::kSmell, "Smell"},
}};

constexpr NameTable<ChallengeState, 5> kChallengeStates = {{
    {ChallengeState::kOpen, "Open"},
    {ChallengeState::kSolved, "Solved"},
    {ChallengeState::kRejected, "Rejected"},
    {ChallengeState::kExpired, "Expired"},
    {ChallengeState::kDormant, "Dormant"},
}};

constexpr NameTable<QuestKind, 9> kQuestKinds = {{
    {QuestKind::kTest, "Test"},
    {QuestKind::kPackage, "Package"},
    {QuestKind::kClass, "Class"},
    {QuestKind::kMethod, "Method"},
    {QuestKind::kLine, "Line"},
    {QuestKind::kExpanding, "Expanding"},
    {QuestKind::kDecreasing, "Decreasing"},
    {QuestKind::kMutation, "Mutation"},
    {QuestKind::kSmell, "Smell"},
}};

constexpr NameTable<QuestState, 4> kQuestStates = {{
    {QuestState::kActive, "Active"},
    {QuestState::kCompleted, "Completed"},
    {QuestState::kRejected, "Rejected"},
    {QuestState::kExpired, "Expired"},
}};

constexpr NameTable<AchievementScope, 2> kScopes = {{
    {AchievementScope::kIndividual, "Individual"},
    {AchievementScope::kProject, "Project"},
}};

constexpr NameTable<EventType, 12> kEventTypes = {{
    {EventType::kChallengeGenerated, "ChallengeGenerated"},
    {EventType::kChallengeSolved, "ChallengeSolved"},
    {EventType::kChallengeExpired, "ChallengeExpired"},
    {EventType::kChallengeRejected, "ChallengeRejected"},
    {EventType::kQuestGenerated, "QuestGenerated"},
    {EventType::kQuestStepSolved, "QuestStepSolved"},
    {EventType::kQuestCompleted, "QuestCompleted"},
    {EventType::kQuestExpired, "QuestExpired"},
    {EventType::kQuestRejected, "QuestRejected"},
    {EventType::kAchievementCompleted, "AchievementCompleted"},
    {EventType::kBuildChallengeIssued, "BuildChallengeIssued"},
    {EventType::kUserUnresolved, "UserUnresolved"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const NameTable<Enum, N>& table,
                             std::string_view text) {
  for (const auto& [e, name] : table) {
    if (name == text) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ChallengeKind kind) {
  return name_of(kChallengeKinds, kind);
}
std::string_view to_string(ChallengeState state) {
  return name_of(kChallengeStates, state);
}
std::string_view to_string(QuestKind kind) { return name_of(kQuestKinds, kind); }
std::string_view to_string(QuestState state) {
  return name_of(kQuestStates, state);
}
std::string_view to_string(AchievementScope scope) {
  return name_of(kScopes, scope);
}
std::string_view to_string(EventType type) {
  return name_of(kEventTypes, type);
}

std::optional<ChallengeKind> parse_challenge_kind(std::string_view text) {
  return value_of(kChallengeKinds, text);
}
std::optional<ChallengeState> parse_challenge_state(std::string_view text) {
  return value_of(kChallengeStates, text);
}
std::optional<QuestKind> parse_quest_kind(std::string_view text) {
  return value_of(kQuestKinds, text);
}
std::optional<QuestState> parse_quest_state(std::string_view text) {
  return value_of(kQuestStates, text);
}
std::optional<AchievementScope> parse_achievement_scope(std::string_view text) {
  return value_of(kScopes, text);
}
std::optional<EventType> parse_event_type(std::string_view text) {
  return value_of(kEventTypes, text);
}

}  // namespace testquest
