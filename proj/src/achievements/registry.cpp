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
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "testquest/achievements.hpp"
#include "testquest/error.hpp"

namespace testquest::achievements {

namespace detail {
extern const char kDefaultRegistryJson[];
}  // namespace detail

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 11> kMetrics = {{
    {Metric::kChallengesSolvedTotal, "challenges_solved_total"},
    {Metric::kChallengesSolvedOfKind, "challenges_solved_of_kind"},
    {Metric::kQuestsCompleted, "quests_completed"},
    {Metric::kProjectLineCoverage, "project_line_coverage"},
    {Metric::kProjectBranchCoverage, "project_branch_coverage"},
    {Metric::kProjectTestCount, "project_test_count"},
    {Metric::kClassFullyCoveredCount, "class_fully_covered_count"},
    {Metric::kMutantsKilledTotal, "mutants_killed_total"},
    {Metric::kSmellsRemovedTotal, "smells_removed_total"},
    {Metric::kBuildsFixedTotal, "builds_fixed_total"},
    {Metric::kScoreTotal, "score_total"},
}};

[[noreturn]] void malformed(std::size_t index, const std::string& what) {
  throw Error(Errc::kMalformedDocument,
              "registry entry " + std::to_string(index) + ": " + what);
}

std::string text_field(const json& entry, std::size_t index, const char* key) {
  if (!entry.contains(key) || !entry[key].is_string())
    malformed(index, std::string("missing text field \"") + key + "\"");
  return entry[key].get<std::string>();
}

Achievement parse_entry(const json& entry, std::size_t index) {
  if (!entry.is_object()) malformed(index, "not an object");
  Achievement a;
  a.id = text_field(entry, index, "id");
  if (a.id.empty()) malformed(index, "empty id");
  a.title = text_field(entry, index, "title");
  a.description = text_field(entry, index, "description");

  if (entry.contains("secret")) {
    if (!entry["secret"].is_boolean()) malformed(index, "secret is not a boolean");
    a.secret = entry["secret"].get<bool>();
  }
  if (entry.contains("scope")) {
    const auto scope = text_field(entry, index, "scope");
    auto parsed = parse_achievement_scope(scope);
    if (!parsed) malformed(index, "unknown scope \"" + scope + "\"");
    a.scope = *parsed;
  }

  const std::string metric = text_field(entry, index, "metric");
  const auto parsed_metric = parse_metric(metric);
  if (!parsed_metric) {
    throw Error(Errc::kUnknownMetric, "registry entry " + a.id +
                                          ": unknown metric \"" + metric + "\"");
  }
  a.metric = *parsed_metric;

  if (entry.contains("kindFilter") && !entry["kindFilter"].is_null()) {
    const std::string kind = text_field(entry, index, "kindFilter");
    a.kind_filter = parse_challenge_kind(kind);
    if (!a.kind_filter) malformed(index, "unknown kind \"" + kind + "\"");
  }
  if (a.kind_filter.has_value() != (a.metric == Metric::kChallengesSolvedOfKind))
    throw Error(Errc::kValidation,
                "registry entry " + a.id +
                    ": kindFilter goes with challenges_solved_of_kind only");

  const std::string comparator = text_field(entry, index, "comparator");
  const auto parsed_comparator = parse_comparator(comparator);
  if (!parsed_comparator)
    malformed(index, "unknown comparator \"" + comparator + "\"");
  a.comparator = *parsed_comparator;

  if (!entry.contains("threshold") || !entry["threshold"].is_number())
    malformed(index, "missing numeric threshold");
  a.threshold = entry["threshold"].get<double>();
  if (a.threshold < 0.0)
    throw Error(Errc::kValidation,
                "registry entry " + a.id + ": negative threshold");
  return a;
}

}  // namespace

std::string_view to_string(Metric metric) {
  for (const auto& [m, name] : kMetrics) {
    if (m == metric) return name;
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (const auto& [m, name] : kMetrics) {
    if (name == text) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Comparator comparator) {
  return comparator == Comparator::kEqual ? "=" : ">=";
}

std::optional<Comparator> parse_comparator(std::string_view text) {
  if (text == ">=") return Comparator::kAtLeast;
  if (text == "=" || text == "==") return Comparator::kEqual;
  return std::nullopt;
}

json to_json(const Achievement& a) {
  json out = {{"id", a.id},
              {"title", a.title},
              {"description", a.description},
              {"secret", a.secret},
              {"scope", to_string(a.scope)},
              {"metric", to_string(a.metric)},
              {"comparator", to_string(a.comparator)},
              {"threshold", a.threshold}};
  if (a.kind_filter) out["kindFilter"] = to_string(*a.kind_filter);
  return out;
}

Registry Registry::parse(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kMalformedDocument, e.what());
  }
  if (root.is_object() && root.contains("achievements"))
    root = root["achievements"];
  if (!root.is_array())
    throw Error(Errc::kMalformedDocument, "registry is not a list");

  Registry registry;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < root.size(); ++i) {
    Achievement a = parse_entry(root[i], i);
    if (!ids.insert(a.id).second)
      throw Error(Errc::kDuplicateId, "achievement id " + a.id + " repeats");
    registry.entries_.push_back(std::move(a));
  }
  return registry;
}

const Registry& Registry::bundled() {
  static const Registry registry = parse(detail::kDefaultRegistryJson);
  return registry;
}

const Achievement* Registry::find(std::string_view id) const {
  for (const auto& a : entries_) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

Registry load_registry(const std::string& path) {
  if (path.empty()) return Registry::bundled();
  std::ifstream in(path);
  if (!in) throw Error(Errc::kNotFound, "achievement registry " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Registry::parse(buffer.str());
}

}  // namespace testquest::achievements
