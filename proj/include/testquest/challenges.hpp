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

#ifndef TESTQUEST_CHALLENGES_HPP_
#define TESTQUEST_CHALLENGES_HPP_

/// @file
/// Challenge generation, scoring, verification and rejection, plus the
/// per-user update pass that drives one build through challenges, quests
/// and achievements.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "testquest/ingest.hpp"
#include "testquest/model.hpp"
#include "testquest/rng.hpp"

namespace testquest::achievements {
class Registry;
}

namespace testquest::challenges {

struct MethodFacts {
  std::string signature;
  std::int64_t covered_lines = 0;
  std::int64_t coverable_lines = 0;
  std::vector<int> lines;

  // 1.0 for a method without coverable lines.
  double ratio() const;
  bool under_covered() const { return covered_lines < coverable_lines; }
};

/// Everything one build reports about one class.
struct ClassFacts {
  ingest::ClassCoverageRow row;
  std::string source_file;  // relative to a source root, may be empty
  std::map<int, ingest::LineCoverageDetail> lines;
  std::map<std::string, MethodFacts> methods;
  std::vector<ingest::MutantRecord> mutants;
  std::vector<ingest::SmellRecord> smells;

  std::string fqn() const { return row.fqn(); }
  std::string package() const { return row.package_name; }
};

/// Parsed reports of one build. A report that was not supplied (or could
/// not be parsed) stays nullopt so verification can tell "absent" from
/// "empty".
struct BuildReports {
  std::optional<std::vector<ingest::ClassCoverageRow>> class_rows;
  std::optional<std::vector<ingest::LineCoverageDetail>> line_details;
  std::optional<ingest::TestTotals> tests;
  std::optional<std::vector<ingest::MutantRecord>> mutants;
  std::optional<std::vector<ingest::SmellRecord>> smells;
};

/// Read-only facts about the current build, shared by every user's pass.
class RunFacts {
 public:
  struct Inputs {
    std::int64_t build_id = 0;
    std::int64_t timestamp = 0;
    bool build_succeeded = true;
    BuildReports reports;
    std::vector<ingest::CommitRecord> commits;
    // Users whose commits entered this build; they own a failure.
    std::set<std::string> build_window_users;
    // Working copy for snippets and file-existence checks; empty disables
    // both (snippets stay empty, files are assumed present).
    std::filesystem::path repo_root;
    // Test count of the previous build, used as baseline when this build
    // has no test results.
    std::optional<std::int64_t> previous_test_count;
  };

  RunFacts(Inputs inputs, ProjectConfig config);

  std::int64_t build_id() const { return inputs_.build_id; }
  std::int64_t timestamp() const { return inputs_.timestamp; }
  bool build_succeeded() const { return inputs_.build_succeeded; }
  const ProjectConfig& config() const { return config_; }
  std::span<const ingest::CommitRecord> commits() const {
    return inputs_.commits;
  }
  const std::set<std::string>& build_window_users() const {
    return inputs_.build_window_users;
  }

  bool has_class_coverage() const { return class_rows_.has_value(); }
  bool has_line_coverage() const {
    return inputs_.reports.line_details.has_value();
  }
  bool has_test_results() const { return inputs_.reports.tests.has_value(); }
  bool has_mutation_report() const {
    return inputs_.reports.mutants.has_value();
  }
  bool has_smell_report() const { return inputs_.reports.smells.has_value(); }
  /// Whether this build carries the report needed to verify `kind`.
  bool has_report_for(ChallengeKind kind) const;
  bool has_any_coverage() const {
    return has_class_coverage() || has_line_coverage();
  }

  const std::map<std::string, ClassFacts>& classes() const { return classes_; }
  const ClassFacts* find_class(std::string_view fqn) const;
  const ingest::MutantRecord* find_mutant(std::string_view id) const;
  std::span<const ingest::SmellRecord> smells() const;

  /// Current test count, or the previous build's when absent.
  std::int64_t test_count() const;

  // Project-wide metrics; nullopt when the report is absent or empty.
  std::optional<double> line_coverage() const;
  std::optional<double> branch_coverage() const;
  std::optional<std::int64_t> fully_covered_class_count() const;
  std::optional<std::int64_t> current_test_count() const;

  bool file_exists(const std::string& relative_path) const;

  /// Lines [first, last] of a repository-relative file, clamped to the
  /// file. Empty when the file cannot be read.
  std::string read_lines(const std::string& relative_path, int first,
                         int last) const;

  /// Repository-relative path of a class's source file, or empty.
  std::string locate_source(const ClassFacts& facts) const;

  /// Summary persisted for the next run and for statistics.
  BuildSummary summary(const std::string& head_commit) const;

  /// Normalized snapshot of this build.
  ingest::CoverageSnapshot snapshot() const;

 private:
  void index_classes();
  void attach_mutants();
  void attach_smells();

  Inputs inputs_;
  ProjectConfig config_;
  std::optional<std::vector<ingest::ClassCoverageRow>> class_rows_;
  std::map<std::string, ClassFacts> classes_;
  std::map<std::string, ingest::MutantRecord, std::less<>> mutants_by_id_;
};

/// Per-user view of a build: who is generating, which targets are off
/// limits, and the seeded random source.
struct GenerationContext {
  const RunFacts& facts;
  std::string user_id;
  ingest::IdentityRegistry identities;
  std::set<std::string> rejected_classes;
  std::set<std::string> rejected_fingerprints;
  // Fingerprints the user already holds (open challenges, live quest
  // steps); never handed out twice.
  std::set<std::string> taken_fingerprints;
  Rng rng;
};

/// Fingerprints of the user's open challenges and live quest steps.
std::set<std::string> held_fingerprints(const ProjectState& state,
                                        const std::string& user_id);

GenerationContext make_context(const RunFacts& facts,
                               const ProjectState& state,
                               const std::string& user_id, std::uint64_t seed);

// --- selection -----------------------------------------------------------

/// Floor added to every selection weight so fully covered-looking classes
/// stay reachable.
inline constexpr double kSelectionFloor = 0.01;

/// w = (1 - coverage) + kSelectionFloor.
double selection_weight(double coverage);

using Candidate = std::pair<std::string, double>;  // (class fqn, coverage)

/// Classes the user changed within the commit window that the current
/// build reports, minus rejected and fully covered ones, ordered by
/// ascending coverage (ties by name).
std::vector<Candidate> candidate_classes(const GenerationContext& ctx);

/// Draws one class with probability proportional to selection_weight.
/// Throws kEmptyCandidates.
std::string select_weighted(std::span<const Candidate> candidates, Rng& rng);

// --- scoring -------------------------------------------------------------

/// Points for a challenge kind given the class coverage frozen at
/// generation. Smell requires a severity (kMissingArgument otherwise).
int compute_points(ChallengeKind kind, double baseline_class_coverage,
                   double threshold,
                   std::optional<ingest::Severity> smell_severity = {});

int smell_points(ingest::Severity severity);

// --- generation ----------------------------------------------------------

/// Every still-available concrete target of `kind` in one class, with
/// baseline and points frozen. Rejected and taken fingerprints are left
/// out. Description and snippet are not attached yet.
std::vector<Challenge> enumerate_targets(const GenerationContext& ctx,
                                         const ClassFacts& facts,
                                         ChallengeKind kind);

/// Baseline metrics of a challenge's target in one build.
Baseline freeze_baseline(const Challenge& challenge, const RunFacts& facts);

/// Fills description and display snippet.
void attach_presentation(const GenerationContext& ctx, Challenge& challenge);

/// Restricts generation to a class, a package and/or a kind.
struct Binding {
  std::optional<std::string> class_fqn;
  std::optional<std::string> package;
  std::optional<ChallengeKind> kind;
};

/// Weighted class choice, uniform kind among kinds with targets, uniform
/// target. nullopt when the binding leaves nothing to generate.
std::optional<Challenge> try_generate(GenerationContext& ctx,
                                      const Binding& binding);

/// try_generate without a binding, falling back to a Test challenge.
/// The result has no id yet; the caller assigns one.
Challenge generate_challenge(GenerationContext& ctx);

Challenge make_test_challenge(const GenerationContext& ctx);

/// A Build challenge for the context user when the build failed, the user
/// committed to it, and the user holds no open Build challenge.
std::optional<Challenge> generate_build_challenge(
    const GenerationContext& ctx);

// --- verification --------------------------------------------------------

/// Throws kMissingReport when the build lacks the report the kind needs.
bool check_solved(const Challenge& challenge, const RunFacts& facts);

/// False when the challenge's target has disappeared.
bool check_solvable(const Challenge& challenge, const RunFacts& facts);

/// Re-freezes the baseline metrics (not the points) against this build.
/// Used when a dormant quest step becomes current.
void refresh_baseline(Challenge& challenge, const RunFacts& facts);

// --- rejection -----------------------------------------------------------

/// Marks an open challenge rejected, records its fingerprint and, for
/// class coverage challenges, excludes the class. Throws kUnknownId,
/// kNotOpen, kEmptyReason.
ProjectState reject_challenge(const ProjectState& state,
                              const std::string& challenge_id,
                              const std::string& reason,
                              std::int64_t timestamp);

/// Adds a fingerprint to the rejected set unless the kind has no concrete
/// target.
void record_rejection(ProjectState& state, const Challenge& challenge);

// --- per-user pass -------------------------------------------------------

struct UserUpdateResult {
  ProjectState state;
  std::vector<std::string> warnings;
};

/// One user's pass over a build: verify open challenges, issue a Build
/// challenge if due, top up challenges, progress and top up quests, then
/// evaluate achievements. The input state is never modified.
UserUpdateResult run_user_update(const ProjectState& state,
                                 const std::string& user_id,
                                 GenerationContext& ctx,
                                 const achievements::Registry& registry);

/// Stores a freshly generated challenge with the next id and logs it.
Challenge& store_challenge(ProjectState& state, Challenge challenge,
                           const RunFacts& facts);

nlohmann::json challenge_event_payload(const Challenge& challenge);

}  // namespace testquest::challenges

#endif  // TESTQUEST_CHALLENGES_HPP_
