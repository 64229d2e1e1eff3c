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
#include <array>

#include "testquest/challenges.hpp"

namespace testquest::challenges {

namespace {

constexpr std::array<ChallengeKind, 5> kConcreteKinds = {
    ChallengeKind::kClassCoverage, ChallengeKind::kMethodCoverage,
    ChallengeKind::kLineCoverage, ChallengeKind::kMutation,
    ChallengeKind::kSmell};

std::vector<Candidate> bound_candidates(const GenerationContext& ctx,
                                        const Binding& binding) {
  if (binding.class_fqn) {
    const ClassFacts* facts = ctx.facts.find_class(*binding.class_fqn);
    if (facts == nullptr || ctx.rejected_classes.contains(*binding.class_fqn))
      return {};
    return {{*binding.class_fqn, facts->row.coverage_ratio()}};
  }
  std::vector<Candidate> candidates = candidate_classes(ctx);
  if (binding.package) {
    std::erase_if(candidates, [&](const Candidate& c) {
      return ctx.facts.find_class(c.first)->package() != *binding.package;
    });
  }
  return candidates;
}

}  // namespace

std::optional<Challenge> try_generate(GenerationContext& ctx,
                                      const Binding& binding) {
  std::vector<Candidate> candidates = bound_candidates(ctx, binding);
  while (!candidates.empty()) {
    const std::string fqn = select_weighted(candidates, ctx.rng);
    const ClassFacts& facts = *ctx.facts.find_class(fqn);

    std::vector<std::vector<Challenge>> per_kind;
    for (ChallengeKind kind : kConcreteKinds) {
      if (binding.kind && *binding.kind != kind) continue;
      auto targets = enumerate_targets(ctx, facts, kind);
      if (!targets.empty()) per_kind.push_back(std::move(targets));
    }
    if (per_kind.empty()) {
      std::erase_if(candidates,
                    [&](const Candidate& c) { return c.first == fqn; });
      continue;
    }
    auto& targets = per_kind[ctx.rng.index(per_kind.size())];
    Challenge challenge = std::move(targets[ctx.rng.index(targets.size())]);
    attach_presentation(ctx, challenge);
    return challenge;
  }
  return std::nullopt;
}

Challenge make_test_challenge(const GenerationContext& ctx) {
  Challenge c;
  c.owner_user_id = ctx.user_id;
  c.kind = ChallengeKind::kTest;
  c.points = compute_points(c.kind, 0.0, ctx.facts.config().coverage_threshold);
  c.created_build = ctx.facts.build_id();
  c.baseline = freeze_baseline(c, ctx.facts);
  attach_presentation(ctx, c);
  return c;
}

Challenge generate_challenge(GenerationContext& ctx) {
  if (auto challenge = try_generate(ctx, {})) return *std::move(challenge);
  return make_test_challenge(ctx);
}

std::optional<Challenge> generate_build_challenge(
    const GenerationContext& ctx) {
  if (ctx.facts.build_succeeded()) return std::nullopt;
  if (!ctx.facts.build_window_users().contains(ctx.user_id))
    return std::nullopt;
  Challenge c;
  c.owner_user_id = ctx.user_id;
  c.kind = ChallengeKind::kBuild;
  c.points = compute_points(c.kind, 0.0, ctx.facts.config().coverage_threshold);
  c.created_build = ctx.facts.build_id();
  if (ctx.taken_fingerprints.contains(fingerprint(c))) return std::nullopt;
  attach_presentation(ctx, c);
  return c;
}

}  // namespace testquest::challenges
