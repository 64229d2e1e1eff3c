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
#include <fstream>

#include "testquest/challenges.hpp"

namespace testquest::challenges {

namespace {

constexpr std::array<std::string_view, 3> kTestClassSuffixes = {"Tests", "Test",
                                                                "IT"};

// Test sources map to the class they exercise by naming convention:
// com.ex.FooTest -> com.ex.Foo.
std::optional<std::string> subject_of_test_class(const std::string& fqn) {
  for (auto suffix : kTestClassSuffixes) {
    if (fqn.size() > suffix.size() && fqn.ends_with(suffix)) {
      return fqn.substr(0, fqn.size() - suffix.size());
    }
  }
  return std::nullopt;
}

}  // namespace

double MethodFacts::ratio() const {
  if (coverable_lines == 0) return 1.0;
  return static_cast<double>(covered_lines) /
         static_cast<double>(coverable_lines);
}

RunFacts::RunFacts(Inputs inputs, ProjectConfig config)
    : inputs_(std::move(inputs)), config_(std::move(config)) {
  index_classes();
  attach_mutants();
  attach_smells();
}

void RunFacts::index_classes() {
  const auto& reports = inputs_.reports;
  if (reports.class_rows) {
    class_rows_ = *reports.class_rows;
  } else if (reports.line_details) {
    class_rows_ = ingest::aggregate_class_rows(*reports.line_details);
  }
  if (class_rows_) {
    for (const auto& row : *class_rows_) {
      classes_[row.fqn()].row = row;
    }
  }
  if (!reports.line_details) return;

  std::map<std::string, ingest::ClassCoverageRow> aggregated;
  for (auto& row : ingest::aggregate_class_rows(*reports.line_details)) {
    aggregated.emplace(row.fqn(), std::move(row));
  }
  for (const auto& line : *reports.line_details) {
    auto [it, inserted] = classes_.try_emplace(line.class_fqn);
    ClassFacts& facts = it->second;
    if (inserted) facts.row = aggregated[line.class_fqn];
    if (facts.source_file.empty()) facts.source_file = line.source_file;
    facts.lines.emplace(line.line_number, line);
    if (line.owning_method.empty()) continue;
    MethodFacts& method = facts.methods[line.owning_method];
    method.signature = line.owning_method;
    method.lines.push_back(line.line_number);
    if (line.coverable()) {
      ++method.coverable_lines;
      if (line.covered()) ++method.covered_lines;
    }
  }
}

void RunFacts::attach_mutants() {
  if (!inputs_.reports.mutants) return;
  for (const auto& mutant : *inputs_.reports.mutants) {
    mutants_by_id_.emplace(mutant.mutant_id, mutant);
    const auto it = classes_.find(mutant.class_fqn);
    if (it != classes_.end()) it->second.mutants.push_back(mutant);
  }
}

void RunFacts::attach_smells() {
  if (!inputs_.reports.smells) return;
  for (const auto& smell : *inputs_.reports.smells) {
    std::optional<std::string> fqn =
        ingest::path_to_class(smell.file, config_.source_roots);
    if (!fqn || !classes_.contains(*fqn)) {
      if (auto test_class =
              ingest::path_to_class(smell.file, config_.test_roots)) {
        fqn = subject_of_test_class(*test_class);
      }
    }
    if (!fqn) continue;
    const auto it = classes_.find(*fqn);
    if (it != classes_.end()) it->second.smells.push_back(smell);
  }
}

bool RunFacts::has_report_for(ChallengeKind kind) const {
  switch (kind) {
    case ChallengeKind::kBuild: return true;
    case ChallengeKind::kTest: return has_test_results();
    case ChallengeKind::kClassCoverage: return has_class_coverage();
    case ChallengeKind::kMethodCoverage:
    case ChallengeKind::kLineCoverage: return has_line_coverage();
    case ChallengeKind::kMutation: return has_mutation_report();
    case ChallengeKind::kSmell: return has_smell_report();
  }
  return false;
}

const ClassFacts* RunFacts::find_class(std::string_view fqn) const {
  const auto it = classes_.find(std::string(fqn));
  return it == classes_.end() ? nullptr : &it->second;
}

const ingest::MutantRecord* RunFacts::find_mutant(std::string_view id) const {
  const auto it = mutants_by_id_.find(id);
  return it == mutants_by_id_.end() ? nullptr : &it->second;
}

std::span<const ingest::SmellRecord> RunFacts::smells() const {
  if (!inputs_.reports.smells) return {};
  return *inputs_.reports.smells;
}

std::int64_t RunFacts::test_count() const {
  if (inputs_.reports.tests)
    return static_cast<std::int64_t>(inputs_.reports.tests->total);
  return inputs_.previous_test_count.value_or(0);
}

std::optional<std::int64_t> RunFacts::current_test_count() const {
  if (!inputs_.reports.tests) return std::nullopt;
  return static_cast<std::int64_t>(inputs_.reports.tests->total);
}

std::optional<double> RunFacts::line_coverage() const {
  if (!class_rows_) return std::nullopt;
  std::uint64_t covered = 0, total = 0;
  for (const auto& row : *class_rows_) {
    covered += row.lines_covered;
    total += row.lines_covered + row.lines_missed;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(covered) / static_cast<double>(total);
}

std::optional<double> RunFacts::branch_coverage() const {
  if (!class_rows_) return std::nullopt;
  std::uint64_t covered = 0, total = 0;
  for (const auto& row : *class_rows_) {
    covered += row.branches_covered;
    total += row.branches_covered + row.branches_missed;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(covered) / static_cast<double>(total);
}

std::optional<std::int64_t> RunFacts::fully_covered_class_count() const {
  if (!class_rows_) return std::nullopt;
  std::int64_t count = 0;
  for (const auto& row : *class_rows_) {
    if (row.lines_covered > 0 && row.lines_missed == 0) ++count;
  }
  return count;
}

bool RunFacts::file_exists(const std::string& relative_path) const {
  if (inputs_.repo_root.empty()) return true;
  std::error_code ec;
  return std::filesystem::is_regular_file(inputs_.repo_root / relative_path,
                                          ec);
}

std::string RunFacts::read_lines(const std::string& relative_path, int first,
                                 int last) const {
  if (inputs_.repo_root.empty() || relative_path.empty()) return {};
  std::ifstream in(inputs_.repo_root / relative_path);
  if (!in) return {};
  std::string text;
  std::string line;
  for (int number = 1; std::getline(in, line) && number <= last; ++number) {
    if (number < first) continue;
    text += line;
    text += '\n';
  }
  return text;
}

std::string RunFacts::locate_source(const ClassFacts& facts) const {
  if (inputs_.repo_root.empty()) return {};
  std::vector<std::string> relative;
  if (!facts.source_file.empty()) {
    relative.push_back(facts.source_file);
  } else {
    // Top-level class of a possibly nested name: com.ex.Foo.Inner has no
    // reliable split, so try every prefix from the longest.
    std::string path = facts.fqn();
    std::replace(path.begin(), path.end(), '.', '/');
    for (auto ext : {".java", ".kt"}) relative.push_back(path + ext);
  }
  std::vector<std::string> roots = config_.source_roots;
  roots.insert(roots.end(), config_.test_roots.begin(), config_.test_roots.end());
  for (const auto& root : roots) {
    for (const auto& file : relative) {
      const std::string candidate = root.empty() ? file : root + "/" + file;
      if (file_exists(candidate)) return candidate;
    }
  }
  return {};
}

BuildSummary RunFacts::summary(const std::string& head_commit) const {
  BuildSummary s;
  s.build_id = inputs_.build_id;
  s.timestamp = inputs_.timestamp;
  s.build_succeeded = inputs_.build_succeeded;
  if (inputs_.reports.tests) {
    s.total_tests = static_cast<std::int64_t>(inputs_.reports.tests->total);
    s.failed_tests = static_cast<std::int64_t>(inputs_.reports.tests->failed);
  }
  s.line_coverage = line_coverage();
  s.branch_coverage = branch_coverage();
  s.class_count =
      class_rows_ ? static_cast<std::int64_t>(class_rows_->size()) : 0;
  s.head_commit = head_commit;
  return s;
}

ingest::CoverageSnapshot RunFacts::snapshot() const {
  ingest::CoverageSnapshot snapshot;
  snapshot.build_id = inputs_.build_id;
  if (class_rows_) snapshot.class_rows = *class_rows_;
  if (inputs_.reports.line_details)
    snapshot.line_details = *inputs_.reports.line_details;
  if (inputs_.reports.tests) {
    snapshot.total_test_count = inputs_.reports.tests->total;
    snapshot.failed_test_count = inputs_.reports.tests->failed;
  }
  snapshot.build_succeeded = inputs_.build_succeeded;
  return snapshot;
}

std::set<std::string> held_fingerprints(const ProjectState& state,
                                        const std::string& user_id) {
  std::set<std::string> held;
  for (const auto& c : state.challenges) {
    if (c.owner_user_id == user_id && c.state == ChallengeState::kOpen)
      held.insert(fingerprint(c));
  }
  for (const auto& q : state.quests) {
    if (q.owner_user_id != user_id || q.state != QuestState::kActive) continue;
    for (const auto& step : q.steps) {
      if (step.state == ChallengeState::kOpen ||
          step.state == ChallengeState::kDormant)
        held.insert(fingerprint(step));
    }
  }
  return held;
}

GenerationContext make_context(const RunFacts& facts,
                               const ProjectState& state,
                               const std::string& user_id,
                               std::uint64_t seed) {
  return GenerationContext{facts,
                           user_id,
                           identity_registry(state),
                           state.rejected_class_fqns,
                           state.rejected_fingerprints,
                           held_fingerprints(state, user_id),
                           Rng(seed)};
}

}  // namespace testquest::challenges
