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

#include "testquest/quests.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "testquest/error.hpp"

namespace testquest::quests {

using challenges::Binding;
using challenges::Candidate;
using challenges::ClassFacts;
using challenges::GenerationContext;
using challenges::RunFacts;

namespace {

constexpr std::size_t kSteps = kQuestSteps;

std::size_t target_count(const GenerationContext& ctx, const ClassFacts& facts,
                         ChallengeKind kind) {
  return challenges::enumerate_targets(ctx, facts, kind).size();
}

// Whether one class can carry a quest of a class-bound kind.
bool class_supports(const GenerationContext& ctx, const ClassFacts& facts,
                    QuestKind kind) {
  switch (kind) {
    case QuestKind::kClass:
      return target_count(ctx, facts, ChallengeKind::kClassCoverage) >= 1;
    case QuestKind::kMethod:
      return target_count(ctx, facts, ChallengeKind::kMethodCoverage) >= kSteps;
    case QuestKind::kLine:
      return target_count(ctx, facts, ChallengeKind::kLineCoverage) >= kSteps;
    case QuestKind::kExpanding:
    case QuestKind::kDecreasing:
      return target_count(ctx, facts, ChallengeKind::kLineCoverage) >= 1 &&
             target_count(ctx, facts, ChallengeKind::kMethodCoverage) >= 1 &&
             target_count(ctx, facts, ChallengeKind::kClassCoverage) >= 1;
    case QuestKind::kMutation:
      return target_count(ctx, facts, ChallengeKind::kMutation) >= kSteps;
    case QuestKind::kSmell:
      return target_count(ctx, facts, ChallengeKind::kSmell) >= kSteps;
    case QuestKind::kTest:
    case QuestKind::kPackage:
      return false;
  }
  return false;
}

std::size_t all_target_count(const GenerationContext& ctx,
                             const ClassFacts& facts) {
  std::size_t n = 0;
  for (ChallengeKind kind :
       {ChallengeKind::kClassCoverage, ChallengeKind::kMethodCoverage,
        ChallengeKind::kLineCoverage, ChallengeKind::kMutation,
        ChallengeKind::kSmell})
    n += target_count(ctx, facts, kind);
  return n;
}

// Candidate classes whose package offers at least three distinct targets.
std::vector<Candidate> package_candidates(const GenerationContext& ctx,
                                          std::span<const Candidate> all) {
  std::map<std::string, std::size_t> per_package;
  for (const auto& [fqn, _] : all) {
    const ClassFacts& facts = *ctx.facts.find_class(fqn);
    per_package[facts.package()] += all_target_count(ctx, facts);
  }
  std::vector<Candidate> out;
  for (const auto& candidate : all) {
    if (per_package[ctx.facts.find_class(candidate.first)->package()] >= kSteps)
      out.push_back(candidate);
  }
  return out;
}

std::vector<Candidate> eligible(const GenerationContext& ctx, QuestKind kind,
                                std::span<const Candidate> all) {
  if (kind == QuestKind::kPackage) return package_candidates(ctx, all);
  std::vector<Candidate> out;
  for (const auto& candidate : all) {
    if (class_supports(ctx, *ctx.facts.find_class(candidate.first), kind))
      out.push_back(candidate);
  }
  return out;
}

// `count` distinct targets drawn uniformly without replacement.
std::vector<Challenge> draw(GenerationContext& ctx, std::vector<Challenge> pool,
                            std::size_t count) {
  std::vector<Challenge> out;
  while (out.size() < count && !pool.empty()) {
    const std::size_t i = ctx.rng.index(pool.size());
    out.push_back(std::move(pool[i]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

Challenge one_of(GenerationContext& ctx, const ClassFacts& facts,
                 ChallengeKind kind) {
  return draw(ctx, challenges::enumerate_targets(ctx, facts, kind), 1).front();
}

std::optional<std::vector<Challenge>> package_steps(GenerationContext& ctx,
                                                    const std::string& package) {
  const std::set<std::string> saved = ctx.taken_fingerprints;
  std::vector<Challenge> steps;
  Binding binding;
  binding.package = package;
  for (std::size_t i = 0; i < kSteps; ++i) {
    auto step = challenges::try_generate(ctx, binding);
    if (!step) break;
    ctx.taken_fingerprints.insert(fingerprint(*step));
    steps.push_back(*std::move(step));
  }
  ctx.taken_fingerprints = saved;
  if (steps.size() != kSteps) return std::nullopt;
  return steps;
}

bool blank_text(const std::string& text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char ch) {
    return std::isspace(ch) != 0;
  });
}

nlohmann::json quest_payload(const Quest& quest) {
  return {{"questId", quest.quest_id},
          {"questKind", to_string(quest.kind)},
          {"locus", quest.locus}};
}

}  // namespace

std::set<QuestKind> feasible_quest_kinds(const GenerationContext& ctx) {
  std::set<QuestKind> kinds = {QuestKind::kTest};
  const auto all = challenges::candidate_classes(ctx);
  for (QuestKind kind :
       {QuestKind::kPackage, QuestKind::kClass, QuestKind::kMethod,
        QuestKind::kLine, QuestKind::kExpanding, QuestKind::kDecreasing,
        QuestKind::kMutation, QuestKind::kSmell}) {
    if (!eligible(ctx, kind, all).empty()) kinds.insert(kind);
  }
  return kinds;
}

std::optional<Quest> try_generate_quest(GenerationContext& ctx,
                                        QuestKind kind) {
  Quest quest;
  quest.owner_user_id = ctx.user_id;
  quest.kind = kind;
  quest.created_build = ctx.facts.build_id();

  if (kind == QuestKind::kTest) {
    for (std::size_t i = 0; i < kSteps; ++i)
      quest.steps.push_back(challenges::make_test_challenge(ctx));
  } else {
    const auto candidates =
        eligible(ctx, kind, challenges::candidate_classes(ctx));
    if (candidates.empty()) return std::nullopt;
    const std::string fqn = challenges::select_weighted(candidates, ctx.rng);
    const ClassFacts& facts = *ctx.facts.find_class(fqn);
    quest.locus = fqn;
    switch (kind) {
      case QuestKind::kPackage: {
        quest.locus = facts.package();
        auto steps = package_steps(ctx, quest.locus);
        if (!steps) return std::nullopt;
        quest.steps = *std::move(steps);
        break;
      }
      case QuestKind::kClass: {
        const Challenge step =
            one_of(ctx, facts, ChallengeKind::kClassCoverage);
        quest.steps.assign(kSteps, step);
        break;
      }
      case QuestKind::kMethod:
        quest.steps = draw(ctx,
                           challenges::enumerate_targets(
                               ctx, facts, ChallengeKind::kMethodCoverage),
                           kSteps);
        break;
      case QuestKind::kLine:
        quest.steps = draw(ctx,
                           challenges::enumerate_targets(
                               ctx, facts, ChallengeKind::kLineCoverage),
                           kSteps);
        break;
      case QuestKind::kExpanding:
        quest.steps.push_back(one_of(ctx, facts, ChallengeKind::kLineCoverage));
        quest.steps.push_back(
            one_of(ctx, facts, ChallengeKind::kMethodCoverage));
        quest.steps.push_back(
            one_of(ctx, facts, ChallengeKind::kClassCoverage));
        break;
      case QuestKind::kDecreasing:
        quest.steps.push_back(
            one_of(ctx, facts, ChallengeKind::kClassCoverage));
        quest.steps.push_back(
            one_of(ctx, facts, ChallengeKind::kMethodCoverage));
        quest.steps.push_back(one_of(ctx, facts, ChallengeKind::kLineCoverage));
        break;
      case QuestKind::kMutation:
        quest.steps = draw(
            ctx,
            challenges::enumerate_targets(ctx, facts, ChallengeKind::kMutation),
            kSteps);
        break;
      case QuestKind::kSmell:
        quest.steps = draw(
            ctx,
            challenges::enumerate_targets(ctx, facts, ChallengeKind::kSmell),
            kSteps);
        break;
      case QuestKind::kTest:
        break;
    }
    if (quest.steps.size() != kSteps) return std::nullopt;
  }

  for (std::size_t i = 0; i < kSteps; ++i) {
    Challenge& step = quest.steps[i];
    if (step.description.empty()) challenges::attach_presentation(ctx, step);
    step.state = i == 0 ? ChallengeState::kOpen : ChallengeState::kDormant;
  }
  return quest;
}

Quest generate_quest(GenerationContext& ctx) {
  const std::set<QuestKind> feasible = feasible_quest_kinds(ctx);
  const std::vector<QuestKind> kinds(feasible.begin(), feasible.end());
  const QuestKind kind = kinds[ctx.rng.index(kinds.size())];
  if (auto quest = try_generate_quest(ctx, kind)) return *std::move(quest);
  return *try_generate_quest(ctx, QuestKind::kTest);
}

Advance advance_quest(const Quest& quest, const RunFacts& facts) {
  Advance result{quest, false, std::nullopt, std::nullopt};
  Quest& q = result.quest;
  if (q.state != QuestState::kActive) return result;
  Challenge& current = q.steps[static_cast<std::size_t>(q.current_index)];

  bool solved = false;
  try {
    solved = challenges::check_solved(current, facts);
  } catch (const Error& e) {
    if (e.code() != Errc::kMissingReport) throw;
    result.warning = e.what();
    return result;
  }
  if (solved) {
    current.state = ChallengeState::kSolved;
    current.solved_build = facts.build_id();
    result.step_solved = true;
    ++q.current_index;
    if (q.current_index == kQuestSteps) {
      q.state = QuestState::kCompleted;
      q.closed_build = facts.build_id();
      q.awarded_points = q.prospective_points();
      result.award = q.awarded_points;
    } else {
      Challenge& next = q.steps[static_cast<std::size_t>(q.current_index)];
      next.state = ChallengeState::kOpen;
      challenges::refresh_baseline(next, facts);
    }
    return result;
  }
  if (!challenges::check_solvable(current, facts)) {
    current.state = ChallengeState::kExpired;
    current.closed_build = facts.build_id();
    q.state = QuestState::kExpired;
    q.closed_build = facts.build_id();
  }
  return result;
}

ProjectState reject_quest(const ProjectState& state,
                          const std::string& quest_id,
                          const std::string& reason, std::int64_t timestamp) {
  ProjectState next = state;
  Quest* quest = find_quest(next, quest_id);
  if (quest == nullptr) throw Error(Errc::kUnknownId, "no quest " + quest_id);
  if (quest->state != QuestState::kActive) {
    throw Error(Errc::kNotActive, "quest " + quest_id + " is " +
                                      std::string(to_string(quest->state)));
  }
  if (blank_text(reason))
    throw Error(Errc::kEmptyReason, "a rejection needs a reason");

  Challenge& current =
      quest->steps[static_cast<std::size_t>(quest->current_index)];
  current.state = ChallengeState::kRejected;
  current.rejection_reason = reason;
  current.closed_build = next.build_counter;
  quest->state = QuestState::kRejected;
  quest->rejection_reason = reason;
  quest->closed_build = next.build_counter;
  for (const auto& step : quest->steps) {
    if (has_concrete_target(step.kind))
      next.rejected_fingerprints.insert(fingerprint(step));
  }

  nlohmann::json payload = quest_payload(*quest);
  payload["kind"] = to_string(quest->kind);
  payload["reason"] = reason;
  append_event(next, EventType::kQuestRejected, quest->owner_user_id,
               next.build_counter, timestamp, std::move(payload));
  return next;
}

Quest& store_quest(ProjectState& state, Quest quest, const RunFacts& facts) {
  quest.quest_id = "q" + std::to_string(++state.quest_counter);
  for (std::size_t i = 0; i < quest.steps.size(); ++i) {
    quest.steps[i].challenge_id = quest.quest_id + "." + std::to_string(i + 1);
  }
  nlohmann::json payload = quest_payload(quest);
  payload["kind"] = to_string(quest.kind);
  payload["prospectivePoints"] = quest.prospective_points();
  append_event(state, EventType::kQuestGenerated, quest.owner_user_id,
               facts.build_id(), facts.timestamp(), std::move(payload));
  state.quests.push_back(std::move(quest));
  return state.quests.back();
}

std::vector<std::string> update_quests(ProjectState& state,
                                       const std::string& user_id,
                                       GenerationContext& ctx) {
  const RunFacts& facts = ctx.facts;
  std::vector<std::string> warnings;
  int active = 0;
  for (Quest& quest : state.quests) {
    if (quest.owner_user_id != user_id || quest.state != QuestState::kActive)
      continue;
    const int solved_index = quest.current_index;
    Advance advance = advance_quest(quest, facts);
    if (advance.warning) warnings.push_back(*advance.warning);
    quest = std::move(advance.quest);

    if (advance.step_solved) {
      nlohmann::json payload = quest_payload(quest);
      payload["step"] = solved_index + 1;
      payload["stepKind"] =
          to_string(quest.steps[static_cast<std::size_t>(solved_index)].kind);
      append_event(state, EventType::kQuestStepSolved, user_id,
                   facts.build_id(), facts.timestamp(), std::move(payload));
    }
    if (advance.award) {
      award_points(state, user_id, *advance.award, quest.quest_id,
                   facts.build_id(), facts.timestamp());
      ++ensure_user(state, user_id).completed_quest_count;
      nlohmann::json payload = quest_payload(quest);
      payload["kind"] = to_string(quest.kind);
      payload["points"] = *advance.award;
      append_event(state, EventType::kQuestCompleted, user_id,
                   facts.build_id(), facts.timestamp(), std::move(payload));
    } else if (quest.state == QuestState::kExpired) {
      nlohmann::json payload = quest_payload(quest);
      payload["kind"] = to_string(quest.kind);
      append_event(state, EventType::kQuestExpired, user_id, facts.build_id(),
                   facts.timestamp(), std::move(payload));
    }
    if (quest.state == QuestState::kActive) ++active;
  }

  while (active < state.config.open_quest_target) {
    Quest& quest = store_quest(state, generate_quest(ctx), facts);
    for (const auto& step : quest.steps)
      ctx.taken_fingerprints.insert(fingerprint(step));
    ++active;
  }
  return warnings;
}

}  // namespace testquest::quests
