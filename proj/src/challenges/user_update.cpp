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
#include "testquest/challenges.hpp"
#include "testquest/error.hpp"
#include "testquest/quests.hpp"

namespace testquest::challenges {

namespace {

int open_regular_count(const ProjectState& state, const std::string& user) {
  int n = 0;
  for (const auto& c : state.challenges) {
    if (c.owner_user_id == user && c.state == ChallengeState::kOpen &&
        c.kind != ChallengeKind::kBuild)
      ++n;
  }
  return n;
}

}  // namespace

nlohmann::json challenge_event_payload(const Challenge& c) {
  nlohmann::json payload = {{"challengeId", c.challenge_id},
                            {"kind", to_string(c.kind)},
                            {"points", c.points}};
  if (!c.target_class.empty()) payload["targetClass"] = c.target_class;
  if (!c.target_method.empty()) payload["targetMethod"] = c.target_method;
  if (c.target_line != 0) payload["targetLine"] = c.target_line;
  if (!c.target_mutant_id.empty()) payload["targetMutant"] = c.target_mutant_id;
  if (!c.target_smell_id.empty()) payload["targetSmell"] = c.target_smell_id;
  return payload;
}

Challenge& store_challenge(ProjectState& state, Challenge challenge,
                           const RunFacts& facts) {
  challenge.challenge_id = "c" + std::to_string(++state.challenge_counter);
  const EventType type = challenge.kind == ChallengeKind::kBuild
                             ? EventType::kBuildChallengeIssued
                             : EventType::kChallengeGenerated;
  append_event(state, type, challenge.owner_user_id, facts.build_id(),
               facts.timestamp(), challenge_event_payload(challenge));
  state.challenges.push_back(std::move(challenge));
  return state.challenges.back();
}

UserUpdateResult run_user_update(const ProjectState& state,
                                 const std::string& user_id,
                                 GenerationContext& ctx,
                                 const achievements::Registry& registry) {
  const RunFacts& facts = ctx.facts;
  UserUpdateResult result{state, {}};
  ProjectState& next = result.state;
  ensure_user(next, user_id);

  for (std::size_t i = 0; i < next.challenges.size(); ++i) {
    Challenge& c = next.challenges[i];
    if (c.owner_user_id != user_id || c.state != ChallengeState::kOpen)
      continue;
    bool solved = false;
    try {
      solved = check_solved(c, facts);
    } catch (const Error& e) {
      if (e.code() != Errc::kMissingReport) throw;
      result.warnings.push_back(e.what());
      continue;
    }
    if (solved) {
      c.state = ChallengeState::kSolved;
      c.solved_build = facts.build_id();
      const Challenge snapshot = c;
      award_points(next, user_id, snapshot.points, snapshot.challenge_id,
                   facts.build_id(), facts.timestamp());
      ++next.users.at(user_id).completed_challenge_count;
      append_event(next, EventType::kChallengeSolved, user_id,
                   facts.build_id(), facts.timestamp(),
                   challenge_event_payload(snapshot));
    } else if (!check_solvable(c, facts)) {
      c.state = ChallengeState::kExpired;
      c.closed_build = facts.build_id();
      const Challenge snapshot = c;
      append_event(next, EventType::kChallengeExpired, user_id,
                   facts.build_id(), facts.timestamp(),
                   challenge_event_payload(snapshot));
    }
  }
  ctx.taken_fingerprints = held_fingerprints(next, user_id);

  if (auto build = generate_build_challenge(ctx)) {
    ctx.taken_fingerprints.insert(fingerprint(*build));
    store_challenge(next, *std::move(build), facts);
  }

  if (!facts.build_succeeded() && !facts.has_any_coverage()) return result;

  for (int open = open_regular_count(next, user_id);
       open < next.config.open_challenge_target; ++open) {
    Challenge c = generate_challenge(ctx);
    ctx.taken_fingerprints.insert(fingerprint(c));
    store_challenge(next, std::move(c), facts);
  }

  auto quest_warnings = quests::update_quests(next, user_id, ctx);
  result.warnings.insert(result.warnings.end(), quest_warnings.begin(),
                         quest_warnings.end());

  achievements::evaluate_achievements(next, user_id, facts, registry);
  return result;
}

}  // namespace testquest::challenges
