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


#ifndef TESTQUEST_SERVICE_HPP_
#define TESTQUEST_SERVICE_HPP_

/// @file
/// Project storage, the per-build run, leaderboards, notification digests
/// and the HTTP API.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "testquest/model.hpp"

namespace testquest::service {

// --- storage -------------------------------------------------------------

/// Exclusive advisory lock on a project's lock file, held for the lifetime
/// of the object.
class ProjectLock {
 public:
  /// Non-blocking mode throws kStateLocked when another holder exists.
  ProjectLock(const std::filesystem::path& lock_file, bool blocking);
  ~ProjectLock();
  ProjectLock(const ProjectLock&) = delete;
  ProjectLock& operator=(const ProjectLock&) = delete;

 private:
  int fd_ = -1;
};

/// Layout: <data_dir>/<project>/{state.json, events.ndjson, lock}.
class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const { return data_dir_; }
  std::filesystem::path project_dir(const std::string& project_id) const;
  std::filesystem::path state_path(const std::string& project_id) const;
  std::filesystem::path events_path(const std::string& project_id) const;
  std::filesystem::path lock_path(const std::string& project_id) const;

  bool exists(const std::string& project_id) const;
  /// Project ids with a state file, sorted.
  std::vector<std::string> project_ids() const;

  /// Throws kNotFound, kSchemaMismatch, kCorrupt.
  ProjectState load(const std::string& project_id) const;
  /// A fresh project when none is stored yet.
  ProjectState load_or_create(const std::string& project_id) const;

  /// Saves the state and appends its events newer than
  /// `last_logged_event` to the event log. A state whose event log was
  /// cleared (reset) truncates the event log file.
  void save(const ProjectState& state, std::int64_t last_logged_event,
            const SaveHooks& hooks = {}) const;

  std::unique_ptr<ProjectLock> lock(const std::string& project_id,
                                    bool blocking) const;

 private:
  std::filesystem::path data_dir_;
};

/// Project ids must be usable as directory names.
void validate_project_id(const std::string& project_id);

// --- project file --------------------------------------------------------

/// Applies a project description over a state:
///   {"project": {config keys}, "users": [{"id", "displayName",
///    "gitNames", "avatarId", "notifications"}], "teams": [{"id", "name",
///    "members"}]}
/// Users and teams are upserted. Throws kValidation, kAmbiguousIdentity.
ProjectState apply_project_file(const ProjectState& state,
                                const nlohmann::json& document);

/// Replaces a user's git identities, registering the user if needed.
/// Throws kValidation, kAmbiguousIdentity.
ProjectState set_identities(const ProjectState& state,
                            const std::string& user_id,
                            const std::set<std::string>& identities);

/// Throws kUnknownUser, kValidation (outside 1..kAvatarCount).
ProjectState set_avatar(const ProjectState& state, const std::string& user_id,
                        int avatar_id);

// --- leaderboard ---------------------------------------------------------

enum class LeaderboardMode { kUser, kTeam };

std::optional<LeaderboardMode> parse_leaderboard_mode(std::string_view text);

struct LeaderboardRow {
  std::string subject;
  std::string display_name;
  int avatar_id = 0;  // 0 for teams
  std::int64_t completed_challenges = 0;
  std::int64_t completed_quests = 0;
  std::int64_t completed_achievements = 0;
  std::int64_t score = 0;

  bool operator==(const LeaderboardRow&) const = default;
};

nlohmann::json to_json(const LeaderboardRow& row);

/// Score descending, then completed challenges descending, then display
/// name ascending.
void sort_rows(std::vector<LeaderboardRow>& rows);

/// Throws kDisabled, or kInvariantViolation when a score differs from the
/// ledger.
std::vector<LeaderboardRow> leaderboard(const ProjectState& state,
                                        LeaderboardMode mode);

/// Merges rows of every project with leaderboards enabled, summing entries
/// of the same subject. Throws kDisabled when no project qualifies.
std::vector<LeaderboardRow> group_leaderboard(
    std::span<const ProjectState> projects, LeaderboardMode mode);

// --- notifications -------------------------------------------------------

/// The user's events from builds >= since_build with dashboard links.
/// Empty entries when the user has not opted in. Throws kUnknownUser.
nlohmann::json notification_digest(const ProjectState& state,
                                   const std::string& user_id,
                                   std::int64_t since_build);

/// POSTs a JSON document to an http:// URL. Returns an error message, or
/// nullopt on a 2xx response.
std::optional<std::string> post_webhook(const std::string& url,
                                        const nlohmann::json& document);

// --- build run -----------------------------------------------------------

struct RunOptions {
  std::string project_id;
  std::filesystem::path data_dir;
  std::filesystem::path repo;
  bool build_succeeded = true;
  std::optional<std::string> coverage_csv;
  std::optional<std::string> coverage_xml;
  std::optional<std::string> mutation_report;
  std::optional<std::string> smell_report;
  // Files or glob patterns.
  std::vector<std::string> test_results;
  std::optional<int> commit_count;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> timestamp;
  std::optional<std::filesystem::path> config;
  bool print_digests = false;
  std::optional<std::string> webhook;
  SaveHooks save_hooks;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParseFailure = 3;
inline constexpr int kExitLocked = 4;
inline constexpr int kExitCorrupt = 5;

struct RunOutcome {
  int exit_code = kExitOk;
  std::int64_t build_id = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> generated;  // one line per generated item
  std::string summary;
};

/// Loads the project, ingests reports and commits, runs every
/// participant's update, and persists. Never throws; failures map to exit
/// codes and the summary says why.
RunOutcome run_build(const RunOptions& options, std::ostream& out);

// --- HTTP API ------------------------------------------------------------

class ApiServer {
 public:
  /// `static_dir` is served at / when non-empty.
  ApiServer(std::filesystem::path data_dir, std::string token,
            std::filesystem::path static_dir = {});
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds and serves until stop(). Returns false when binding fails.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port, returns it (or -1); call serve() next.
  int bind_any_port(const std::string& host);
  bool serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace testquest::service

#endif  // TESTQUEST_SERVICE_HPP_
