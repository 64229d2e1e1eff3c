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

namespace {

enum Field : unsigned {
  kClass = 1u << 0,
  kMethod = 1u << 1,
  kLine = 1u << 2,
  kMutant = 1u << 3,
  kSmell = 1u << 4,
  kFile = 1u << 5,
};

struct FieldRule {
  unsigned required;
  unsigned allowed;  // superset of required
};

FieldRule field_rule(ChallengeKind kind) {
  switch (kind) {
    case ChallengeKind::kBuild:
    case ChallengeKind::kTest:
      return {0, 0};
    case ChallengeKind::kClassCoverage:
      return {kClass, kClass};
    case ChallengeKind::kMethodCoverage:
      return {kClass | kMethod, kClass | kMethod};
    case ChallengeKind::kLineCoverage:
      return {kClass | kLine, kClass | kLine | kMethod};
    case ChallengeKind::kMutation:
      return {kClass | kMutant, kClass | kMutant | kMethod | kLine};
    case ChallengeKind::kSmell:
      return {kSmell | kFile | kLine, kSmell | kFile | kLine | kClass};
  }
  return {0, 0};
}

unsigned set_fields(const Challenge& c) {
  unsigned fields = 0;
  if (!c.target_class.empty()) fields |= kClass;
  if (!c.target_method.empty()) fields |= kMethod;
  if (c.target_line != 0) fields |= kLine;
  if (!c.target_mutant_id.empty()) fields |= kMutant;
  if (!c.target_smell_id.empty()) fields |= kSmell;
  if (!c.target_file.empty()) fields |= kFile;
  return fields;
}

[[noreturn]] void violation(const std::string& what) {
  throw Error(Errc::kInvariantViolation, what);
}

}  // namespace

std::string fingerprint(const Challenge& c) {
  return std::string(to_string(c.kind)) + "|" + c.target_class + "|" +
         c.target_method + "|" + std::to_string(c.target_line) + "|" +
         c.target_mutant_id + "|" + c.target_smell_id;
}

bool has_concrete_target(ChallengeKind kind) {
  return kind != ChallengeKind::kBuild && kind != ChallengeKind::kTest;
}

std::pair<int, int> point_range(ChallengeKind kind) {
  switch (kind) {
    case ChallengeKind::kBuild: return {1, 1};
    case ChallengeKind::kTest: return {1, 1};
    case ChallengeKind::kClassCoverage: return {1, 2};
    case ChallengeKind::kMethodCoverage: return {1, 2};
    case ChallengeKind::kLineCoverage: return {2, 3};
    case ChallengeKind::kMutation: return {4, 4};
    case ChallengeKind::kSmell: return {1, 4};
  }
  return {0, 0};
}

void validate_challenge(const Challenge& c) {
  const std::string who = "challenge " + c.challenge_id + " (" +
                          std::string(to_string(c.kind)) + ")";
  const FieldRule rule = field_rule(c.kind);
  const unsigned fields = set_fields(c);
  if ((fields & rule.required) != rule.required)
    violation(who + ": a required target field is unset");
  if ((fields & ~rule.allowed) != 0)
    violation(who + ": a target field foreign to the kind is set");
  if (c.kind == ChallengeKind::kSmell && c.smell_rule.empty())
    violation(who + ": smell rule is unset");
  const auto [low, high] = point_range(c.kind);
  if (c.points < low || c.points > high) {
    violation(who + ": " + std::to_string(c.points) + " points outside [" +
              std::to_string(low) + "," + std::to_string(high) + "]");
  }
  if (c.state == ChallengeState::kSolved && !c.solved_build)
    violation(who + ": solved without a solving build");
  if (c.state == ChallengeState::kRejected &&
      (!c.rejection_reason || c.rejection_reason->empty()))
    violation(who + ": rejected without a reason");
}

std::int64_t Quest::prospective_points() const {
  std::int64_t sum = 0;
  for (const auto& step : steps) sum += step.points;
  return sum + static_cast<std::int64_t>(steps.size());
}

void validate_quest(const Quest& q) {
  const std::string who = "quest " + q.quest_id;
  if (q.steps.size() != kQuestSteps)
    violation(who + ": has " + std::to_string(q.steps.size()) + " steps");
  if (q.current_index < 0 || q.current_index > kQuestSteps)
    violation(who + ": current index out of range");
  for (const auto& step : q.steps) validate_challenge(step);

  const bool completed = q.state == QuestState::kCompleted;
  if (completed != (q.current_index == kQuestSteps))
    violation(who + ": index and completion disagree");
  if (completed && q.awarded_points != q.prospective_points())
    violation(who + ": completed award differs from step sum + steps");
  if (!completed && q.awarded_points != 0)
    violation(who + ": unfinished quest carries an award");

  for (int i = 0; i < kQuestSteps; ++i) {
    const ChallengeState s = q.steps[static_cast<std::size_t>(i)].state;
    ChallengeState expected = ChallengeState::kDormant;
    if (i < q.current_index) {
      expected = ChallengeState::kSolved;
    } else if (i == q.current_index) {
      switch (q.state) {
        case QuestState::kActive: expected = ChallengeState::kOpen; break;
        case QuestState::kRejected: expected = ChallengeState::kRejected; break;
        case QuestState::kExpired: expected = ChallengeState::kExpired; break;
        case QuestState::kCompleted: break;
      }
    }
    if (s != expected) {
      violation(who + ": step " + std::to_string(i) + " is " +
                std::string(to_string(s)) + ", expected " +
                std::string(to_string(expected)));
    }
  }
}

}  // namespace testquest
