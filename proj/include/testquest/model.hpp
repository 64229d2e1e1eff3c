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

#ifndef TESTQUEST_MODEL_HPP_
#define TESTQUEST_MODEL_HPP_

/// @file
/// Persistent game state of one project. Everything a build run or an API
/// call changes lives in ProjectState; it is saved as one checksummed JSON
/// document per project.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "testquest/ingest.hpp"

namespace testquest {

inline constexpr int kAvatarCount = 50;

enum class ChallengeKind {
  kBuild,
  kTest,
  kClassCoverage,
  kMethodCoverage,
  kLineCoverage,
  kMutation,
  kSmell,
};

// kDormant marks quest steps that are not yet current. Stand-alone
// challenges are never dormant.
enum class ChallengeState { kOpen, kSolved, kRejected, kExpired, kDormant };

enum class QuestKind {
  kTest,
  kPackage,
  kClass,
  kMethod,
  kLine,
  kExpanding,
  kDecreasing,
  kMutation,
  kSmell,
};

enum class QuestState { kActive, kCompleted, kRejected, kExpired };

enum class AchievementScope { kIndividual, kProject };

enum class EventType {
  kChallengeGenerated,
  kChallengeSolved,
  kChallengeExpired,
  kChallengeRejected,
  kQuestGenerated,
  kQuestStepSolved,
  kQuestCompleted,
  kQuestExpired,
  kQuestRejected,
  kAchievementCompleted,
  kBuildChallengeIssued,
  kUserUnresolved,
};

std::string_view to_string(ChallengeKind kind);
std::string_view to_string(ChallengeState state);
std::string_view to_string(QuestKind kind);
std::string_view to_string(QuestState state);
std::string_view to_string(AchievementScope scope);
std::string_view to_string(EventType type);

std::optional<ChallengeKind> parse_challenge_kind(std::string_view text);
std::optional<ChallengeState> parse_challenge_state(std::string_view text);
std::optional<QuestKind> parse_quest_kind(std::string_view text);
std::optional<QuestState> parse_quest_state(std::string_view text);
std::optional<AchievementScope> parse_achievement_scope(std::string_view text);
std::optional<EventType> parse_event_type(std::string_view text);

struct ProjectConfig {
  std::string project_id;
  int open_challenge_target = 3;
  int open_quest_target = 1;
  double coverage_threshold = 0.80;
  int search_commit_count = 50;
  std::vector<std::string> source_roots = ingest::default_source_roots();
  std::vector<std::string> test_roots = ingest::default_test_roots();
  std::vector<std::string> test_globs = ingest::default_test_globs();
  std::optional<std::string> group_id;
  bool leaderboard_enabled = true;
  bool statistics_enabled = false;
  // Optional achievement registry override; the bundled one otherwise.
  std::string achievement_registry;
  // Prefix for links in notification digests.
  std::string dashboard_url;

  bool operator==(const ProjectConfig&) const = default;
};

struct UserProfile {
  std::string user_id;
  std::string display_name;
  std::set<std::string> git_identities;
  int avatar_id = 1;
  bool notifications_enabled = false;
  std::int64_t score = 0;
  std::int64_t completed_challenge_count = 0;
  std::int64_t completed_quest_count = 0;
  std::int64_t completed_achievement_count = 0;
  // Stable anonymous name for statistics exports, assigned at registration.
  std::string pseudonym;

  bool operator==(const UserProfile&) const = default;
};

struct Team {
  std::string team_id;
  std::string name;
  std::set<std::string> member_user_ids;

  bool operator==(const Team&) const = default;
};

// Metrics frozen when a challenge is created (or, for quest steps, when the
// step becomes current). Only the fields relevant to the kind are used.
struct Baseline {
  double class_coverage = 0.0;
  std::int64_t class_covered_lines = 0;
  double method_coverage = 0.0;
  std::int64_t line_covered_branches = 0;
  std::int64_t test_count = 0;

  bool operator==(const Baseline&) const = default;
};

struct Challenge {
  std::string challenge_id;
  std::string owner_user_id;
  ChallengeKind kind = ChallengeKind::kTest;
  std::string target_class;
  std::string target_method;
  int target_line = 0;
  std::string target_mutant_id;
  std::string target_smell_id;
  std::string target_file;  // Smell: file of the finding
  std::string smell_rule;   // Smell: rule id of the finding
  int points = 1;
  Baseline baseline;
  std::int64_t created_build = 0;
  ChallengeState state = ChallengeState::kOpen;
  std::optional<std::int64_t> solved_build;
  std::optional<std::int64_t> closed_build;  // Expired / Rejected
  std::optional<std::string> rejection_reason;
  std::string description;
  std::string snippet;
  std::string mutated_snippet;
  int snippet_first_line = 0;

  bool operator==(const Challenge&) const = default;
};

/// Identity of a challenge's (kind, target) pair. Survives regeneration, so
/// it is what rejection permanence is enforced on.
std::string fingerprint(const Challenge& challenge);

/// Build and Test challenges have no concrete target; every instance shares
/// one fingerprint, so rejecting one must not block the generic kinds.
bool has_concrete_target(ChallengeKind kind);

/// Inclusive legal point range for a kind.
std::pair<int, int> point_range(ChallengeKind kind);

/// Throws kInvariantViolation when the challenge's set target fields or
/// points do not match its kind.
void validate_challenge(const Challenge& challenge);

inline constexpr int kQuestSteps = 3;

struct Quest {
  std::string quest_id;
  std::string owner_user_id;
  QuestKind kind = QuestKind::kTest;
  // Shared class (or package, for package quests); empty for test quests.
  std::string locus;
  std::vector<Challenge> steps;
  int current_index = 0;
  QuestState state = QuestState::kActive;
  std::int64_t created_build = 0;
  std::optional<std::int64_t> closed_build;
  std::optional<std::string> rejection_reason;
  std::int64_t awarded_points = 0;

  /// Sum of step points plus one point per step.
  std::int64_t prospective_points() const;

  bool operator==(const Quest&) const = default;
};

void validate_quest(const Quest& quest);

struct LedgerEntry {
  std::string user_id;
  std::int64_t points = 0;
  std::string source_id;  // challenge or quest id
  std::int64_t build_id = 0;
  std::int64_t timestamp = 0;

  bool operator==(const LedgerEntry&) const = default;
};

struct EngineEvent {
  std::int64_t event_id = 0;
  std::int64_t build_id = 0;
  std::string user_id;
  EventType type = EventType::kChallengeGenerated;
  nlohmann::json payload = nlohmann::json::object();
  std::int64_t timestamp = 0;

  bool operator==(const EngineEvent&) const = default;
};

struct AchievementCompletion {
  std::int64_t timestamp = 0;
  std::int64_t build_id = 0;

  bool operator==(const AchievementCompletion&) const = default;
};

/// Per-build metrics kept for statistics and for the next run's baselines.
struct BuildSummary {
  std::int64_t build_id = 0;
  std::int64_t timestamp = 0;
  bool build_succeeded = true;
  std::optional<std::int64_t> total_tests;
  std::optional<std::int64_t> failed_tests;
  std::optional<double> line_coverage;
  std::optional<double> branch_coverage;
  std::int64_t class_count = 0;
  std::string head_commit;

  bool operator==(const BuildSummary&) const = default;
};

inline constexpr int kStateSchemaVersion = 2;

struct ProjectState {
  ProjectConfig config;
  std::map<std::string, UserProfile> users;
  std::map<std::string, Team> teams;
  std::vector<Challenge> challenges;
  std::vector<Quest> quests;
  // user -> achievement id -> completion
  std::map<std::string, std::map<std::string, AchievementCompletion>>
      achievements;
  std::set<std::string> rejected_class_fqns;
  std::set<std::string> rejected_fingerprints;
  std::optional<BuildSummary> last_snapshot;
  std::vector<BuildSummary> build_history;
  std::int64_t build_counter = 0;
  std::int64_t challenge_counter = 0;
  std::int64_t quest_counter = 0;
  std::int64_t event_counter = 0;
  std::int64_t pseudonym_counter = 0;
  std::vector<LedgerEntry> score_ledger;
  std::vector<EngineEvent> event_log;

  bool operator==(const ProjectState&) const = default;
};

// --- state helpers -------------------------------------------------------

ProjectState make_project(const std::string& project_id);

/// Registers a user (or returns the existing profile). New users get the
/// next pseudonym.
UserProfile& ensure_user(ProjectState& state, const std::string& user_id);

ingest::IdentityRegistry identity_registry(const ProjectState& state);

Challenge* find_challenge(ProjectState& state, std::string_view id);
Quest* find_quest(ProjectState& state, std::string_view id);

/// Appends an event with the next dense event id.
const EngineEvent& append_event(ProjectState& state, EventType type,
                                const std::string& user_id,
                                std::int64_t build_id, std::int64_t timestamp,
                                nlohmann::json payload);

/// Records points for a user: one ledger entry plus the score update.
void award_points(ProjectState& state, const std::string& user_id,
                  std::int64_t points, const std::string& source_id,
                  std::int64_t build_id, std::int64_t timestamp);

/// Sum of ledger entries per user.
std::map<std::string, std::int64_t> ledger_scores(const ProjectState& state);

/// Sum of ChallengeSolved and QuestCompleted payload points per user.
std::map<std::string, std::int64_t> replay_scores(
    std::span<const EngineEvent> events);

/// Throws kInvariantViolation describing the first broken invariant.
void validate_state(const ProjectState& state);

/// Clears everything collected by runs; keeps config, user registrations
/// (identities, avatars, notification choice) and teams.
ProjectState reset_project(const ProjectState& state);

/// Anonymized dump of per-build metrics, challenge and quest lifecycle
/// events and scores. Throws kDisabled unless statistics are enabled.
nlohmann::json export_statistics(const ProjectState& state);

// --- serialization -------------------------------------------------------

nlohmann::json to_json(const ProjectState& state);
ProjectState state_from_json(const nlohmann::json& document);
nlohmann::json to_json(const Challenge& challenge);
Challenge challenge_from_json(const nlohmann::json& document);
nlohmann::json to_json(const Quest& quest);
nlohmann::json to_json(const EngineEvent& event);
EngineEvent event_from_json(const nlohmann::json& document);
nlohmann::json to_json(const ProjectConfig& config);
/// Reads config keys present in `document` over `base`.
ProjectConfig config_from_json(const nlohmann::json& document,
                               ProjectConfig base);

/// Canonical text of a state: sorted keys, fixed indentation. Two equal
/// states always serialize to identical bytes.
std::string canonical_text(const ProjectState& state);

// --- persistence ---------------------------------------------------------

struct SaveHooks {
  // Called after the temporary file is complete and synced, right before
  // the rename that publishes it. Tests throw from here to simulate a crash.
  std::function<void()> before_rename;
};

/// Throws kNotFound, kSchemaMismatch, kCorrupt.
ProjectState load_state(const std::filesystem::path& path);

/// Writes to a temporary file, syncs it, then renames it over `path`.
/// Throws kInvariantViolation (nothing written) or kIoFailure (old file
/// untouched).
void save_state(const ProjectState& state, const std::filesystem::path& path,
                const SaveHooks& hooks = {});

}  // namespace testquest

#endif  // TESTQUEST_MODEL_HPP_
