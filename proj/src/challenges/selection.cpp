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

#include "testquest/challenges.hpp"
#include "testquest/error.hpp"

namespace testquest::challenges {

double selection_weight(double coverage) {
  return (1.0 - coverage) + kSelectionFloor;
}

std::vector<Candidate> candidate_classes(const GenerationContext& ctx) {
  const RunFacts& facts = ctx.facts;
  std::set<std::string> touched;
  for (const auto& commit : facts.commits()) {
    std::optional<std::string> author;
    try {
      author = ingest::resolve_user(commit, ctx.identities);
    } catch (const Error&) {
      continue;
    }
    if (author != ctx.user_id) continue;
    for (const auto& file : commit.changed_files) {
      if (auto fqn = ingest::path_to_class(file, facts.config().source_roots))
        touched.insert(*std::move(fqn));
    }
  }

  std::vector<Candidate> candidates;
  for (const auto& fqn : touched) {
    if (ctx.rejected_classes.contains(fqn)) continue;
    const ClassFacts* facts_of = facts.find_class(fqn);
    if (facts_of == nullptr) continue;
    const double coverage = facts_of->row.coverage_ratio();
    if (coverage >= 1.0) continue;
    candidates.emplace_back(fqn, coverage);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.second < b.second;
                   });
  return candidates;
}

std::string select_weighted(std::span<const Candidate> candidates, Rng& rng) {
  if (candidates.empty())
    throw Error(Errc::kEmptyCandidates, "no candidate classes to select from");
  double total = 0.0;
  for (const auto& [_, coverage] : candidates) total += selection_weight(coverage);
  const double point = rng.uniform() * total;
  double cumulative = 0.0;
  for (const auto& [fqn, coverage] : candidates) {
    cumulative += selection_weight(coverage);
    if (point < cumulative) return fqn;
  }
  return candidates.back().first;
}

}  // namespace testquest::challenges
