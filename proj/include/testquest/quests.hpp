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


#ifndef TESTQUEST_QUESTS_HPP_
#define TESTQUEST_QUESTS_HPP_

/// @file
/// Three-step quests built from the challenge generator and solved
/// strictly in order.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "testquest/challenges.hpp"
#include "testquest/model.hpp"

namespace testquest::quests {

/// Quest kinds whose three steps can all be generated for the context user
/// right now. Always contains kTest.
std::set<QuestKind> feasible_quest_kinds(const challenges::GenerationContext& ctx);

/// Builds a quest of one kind, or nullopt when the kind is infeasible.
/// Steps have no ids yet; step 0 is open, the rest dormant.
std::optional<Quest> try_generate_quest(challenges::GenerationContext& ctx,
                                        QuestKind kind);

/// Uniform choice among feasible kinds; a Test quest when nothing else is.
Quest generate_quest(challenges::GenerationContext& ctx);

struct Advance {
  Quest quest;
  bool step_solved = false;
  // Set when the quest completed by this advance.
  std::optional<std::int64_t> award;
  // Set when the report for the current step was missing.
  std::optional<std::string> warning;
};

/// Checks only the current step. A solved step opens the next one with a
/// fresh baseline; an unsolvable current step expires the whole quest.
Advance advance_quest(const Quest& quest, const challenges::RunFacts& facts);

/// Rejects the whole quest and records every step fingerprint. Throws
/// kUnknownId, kNotActive, kEmptyReason.
ProjectState reject_quest(const ProjectState& state,
                          const std::string& quest_id,
                          const std::string& reason, std::int64_t timestamp);

/// Advances the user's active quests and tops them up to the configured
/// target. Returns warnings.
std::vector<std::string> update_quests(ProjectState& state,
                                       const std::string& user_id,
                                       challenges::GenerationContext& ctx);

/// Assigns ids to the quest and its steps, stores it and logs it.
Quest& store_quest(ProjectState& state, Quest quest,
                   const challenges::RunFacts& facts);

}  // namespace testquest::quests

#endif  // TESTQUEST_QUESTS_HPP_
