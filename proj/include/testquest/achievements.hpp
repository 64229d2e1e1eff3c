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


#ifndef TESTQUEST_ACHIEVEMENTS_HPP_
#define TESTQUEST_ACHIEVEMENTS_HPP_

/// @file
/// Declarative achievement registry and its evaluation after each build.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testquest/challenges.hpp"
#include "testquest/model.hpp"

namespace testquest::achievements {

enum class Metric {
  kChallengesSolvedTotal,
  kChallengesSolvedOfKind,
  kQuestsCompleted,
  kProjectLineCoverage,
  kProjectBranchCoverage,
  kProjectTestCount,
  kClassFullyCoveredCount,
  kMutantsKilledTotal,
  kSmellsRemovedTotal,
  kBuildsFixedTotal,
  kScoreTotal,
};

enum class Comparator { kAtLeast, kEqual };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);
std::string_view to_string(Comparator comparator);
std::optional<Comparator> parse_comparator(std::string_view text);

struct Achievement {
  std::string id;
  std::string title;
  std::string description;
  bool secret = false;
  AchievementScope scope = AchievementScope::kIndividual;
  Metric metric = Metric::kChallengesSolvedTotal;
  std::optional<ChallengeKind> kind_filter;
  Comparator comparator = Comparator::kAtLeast;
  double threshold = 0.0;

  bool operator==(const Achievement&) const = default;
};

nlohmann::json to_json(const Achievement& achievement);

class Registry {
 public:
  Registry() = default;

  /// Parses a registry document: a list of entries, or an object with an
  /// "achievements" list. Throws kDuplicateId, kUnknownMetric,
  /// kMalformedDocument or kValidation.
  static Registry parse(std::string_view document);

  /// The registry compiled into the engine.
  static const Registry& bundled();

  const std::vector<Achievement>& entries() const { return entries_; }
  const Achievement* find(std::string_view id) const;

 private:
  std::vector<Achievement> entries_;
};

/// Loads a project's override registry from disk, or the bundled one when
/// `path` is empty.
Registry load_registry(const std::string& path);

/// Current value of an achievement's metric for a user; nullopt when the
/// build lacks the report the metric needs.
std::optional<double> metric_value(const ProjectState& state,
                                   const std::string& user_id,
                                   const challenges::RunFacts& facts,
                                   const Achievement& achievement);

bool satisfied(const Achievement& achievement, double value);

/// Records every newly satisfied achievement. Individual ones go to the
/// user, project ones to every registered user, all dated with the build's
/// timestamp. Completions are never removed. Returns the ids newly
/// completed by the triggering user.
std::vector<std::string> evaluate_achievements(
    ProjectState& state, const std::string& user_id,
    const challenges::RunFacts& facts, const Registry& registry);

}  // namespace testquest::achievements

#endif  // TESTQUEST_ACHIEVEMENTS_HPP_
