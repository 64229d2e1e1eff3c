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


#include <glob.h>

#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "testquest/achievements.hpp"
#include "testquest/challenges.hpp"
#include "testquest/error.hpp"
#include "testquest/service.hpp"

namespace testquest::service {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kNotFound, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> expand(const std::string& pattern) {
  std::vector<std::string> paths;
  glob_t matches{};
  if (::glob(pattern.c_str(), 0, nullptr, &matches) == 0) {
    for (std::size_t i = 0; i < matches.gl_pathc; ++i)
      paths.emplace_back(matches.gl_pathv[i]);
  }
  ::globfree(&matches);
  return paths;
}

struct ParsedReports {
  challenges::BuildReports reports;
  int supplied = 0;
  int failed = 0;
};

template <typename Parse>
void parse_report(const std::optional<std::string>& path, const char* label,
                  ParsedReports& parsed, RunOutcome& outcome, Parse parse) {
  if (!path) return;
  ++parsed.supplied;
  try {
    parse(read_file(*path));
  } catch (const Error& e) {
    ++parsed.failed;
    outcome.warnings.push_back(std::string("ParseFailure: ") + label + " " +
                               *path + ": " + e.what());
  }
}

ParsedReports parse_reports(const RunOptions& options,
                            const ProjectConfig& config, RunOutcome& outcome) {
  ParsedReports parsed;
  auto& r = parsed.reports;
  parse_report(options.coverage_csv, "class coverage", parsed, outcome,
               [&](const std::string& text) {
                 r.class_rows = ingest::parse_class_coverage(text);
               });
  parse_report(options.coverage_xml, "line coverage", parsed, outcome,
               [&](const std::string& text) {
                 r.line_details = ingest::parse_line_coverage(text);
               });
  parse_report(options.mutation_report, "mutation report", parsed, outcome,
               [&](const std::string& text) {
                 r.mutants = ingest::parse_mutation_report(text);
               });
  parse_report(options.smell_report, "smell report", parsed, outcome,
               [&](const std::string& text) {
                 r.smells = ingest::parse_smell_report(text, config.test_globs);
               });

  if (!options.test_results.empty()) {
    ++parsed.supplied;
    std::vector<std::string> documents;
    for (const auto& pattern : options.test_results) {
      auto paths = expand(pattern);
      if (paths.empty()) {
        outcome.warnings.push_back("ParseFailure: no test results match " +
                                   pattern);
      }
      for (const auto& path : paths) documents.push_back(read_file(path));
    }
    ingest::TestTotals totals = ingest::parse_test_results(documents);
    for (const auto& w : totals.warnings)
      outcome.warnings.push_back("ParseFailure: test results: " + w);
    if (documents.empty() || totals.warnings.size() == documents.size()) {
      ++parsed.failed;
    } else {
      r.tests = std::move(totals);
    }
  }

  if (r.class_rows && r.line_details) {
    for (const auto& problem :
         ingest::check_report_agreement(*r.class_rows, *r.line_details))
      outcome.warnings.push_back("coverage reports disagree: " + problem);
  }
  return parsed;
}

std::string describe_item(const EngineEvent& e) {
  std::ostringstream line;
  line << e.user_id << ": ";
  const auto& p = e.payload;
  if (e.type == EventType::kQuestGenerated) {
    line << "quest " << p.value("questId", "") << " "
         << p.value("questKind", "");
    if (!p.value("locus", std::string()).empty())
      line << " on " << p.value("locus", "");
    line << " (" << p.value("prospectivePoints", 0) << " points)";
    return line.str();
  }
  line << "challenge " << p.value("challengeId", "") << " "
       << p.value("kind", "");
  if (p.contains("targetClass")) line << " " << p["targetClass"].get<std::string>();
  if (p.contains("targetMethod"))
    line << "#" << p["targetMethod"].get<std::string>();
  if (p.contains("targetLine")) line << ":" << p["targetLine"].get<int>();
  line << " (" << p.value("points", 0) << " points)";
  return line.str();
}

std::string summarize(const ProjectState& state, const RunOutcome& outcome,
                      const std::set<std::string>& participants,
                      bool succeeded) {
  std::map<EventType, int> counts;
  for (const auto& e : state.event_log) {
    if (e.build_id == outcome.build_id) ++counts[e.type];
  }
  std::ostringstream out;
  out << "project " << state.config.project_id << " build " << outcome.build_id
      << " (" << (succeeded ? "success" : "failure") << ")\n";
  out << "participants:";
  if (participants.empty()) out << " none";
  for (const auto& p : participants) out << " " << p;
  out << "\n";
  out << "generated " << outcome.generated.size() << ":\n";
  for (const auto& line : outcome.generated) out << "  " << line << "\n";
  out << "solved " << counts[EventType::kChallengeSolved]
      << ", expired " << counts[EventType::kChallengeExpired]
      << ", quest steps " << counts[EventType::kQuestStepSolved]
      << ", quests completed " << counts[EventType::kQuestCompleted]
      << ", quests expired " << counts[EventType::kQuestExpired]
      << ", achievements " << counts[EventType::kAchievementCompleted] << "\n";
  if (participants.empty())
    out << "warning: no challenges generated; check the users' git names\n";
  for (const auto& w : outcome.warnings) out << "warning: " << w << "\n";
  out << "scores:";
  for (const auto& [id, user] : state.users) out << " " << id << "=" << user.score;
  out << "\n";
  return out.str();
}

int run(const RunOptions& options, std::ostream& out, RunOutcome& outcome) {
  const ProjectStore store(options.data_dir);
  validate_project_id(options.project_id);
  const auto lock = store.lock(options.project_id, /*blocking=*/false);

  ProjectState state = store.load_or_create(options.project_id);
  const std::int64_t last_logged = state.event_counter;
  if (options.config) {
    nlohmann::json document;
    try {
      document = nlohmann::json::parse(read_file(options.config->string()));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kValidation, "config " + options.config->string() + ": " + e.what());
    }
    state = apply_project_file(state, document);
  }
  const ProjectConfig& config = state.config;
  const achievements::Registry registry =
      achievements::load_registry(config.achievement_registry);

  ParsedReports parsed = parse_reports(options, config, outcome);
  if (parsed.supplied > 0 && parsed.failed == parsed.supplied) {
    outcome.summary = "every supplied report failed to parse; state unchanged\n";
    for (const auto& w : outcome.warnings) outcome.summary += "warning: " + w + "\n";
    return kExitParseFailure;
  }

  const auto commits = ingest::collect_commits(
      options.repo, options.commit_count.value_or(config.search_commit_count));
  const auto identities = identity_registry(state);
  ingest::validate_registry(identities);

  // Commits since the previous build; only the newest one on a first run.
  std::vector<const ingest::CommitRecord*> build_window;
  const std::string previous_head =
      state.last_snapshot ? state.last_snapshot->head_commit : std::string();
  for (const auto& commit : commits) {
    if (commit.hash == previous_head) break;
    build_window.push_back(&commit);
    if (previous_head.empty()) break;
  }

  const std::int64_t build_id = ++state.build_counter;
  outcome.build_id = build_id;
  const std::int64_t timestamp =
      options.timestamp.value_or(std::chrono::duration_cast<std::chrono::seconds>(
                                     std::chrono::system_clock::now().time_since_epoch())
                                     .count());

  std::set<std::string> participants;
  std::set<std::string> window_users;
  std::map<std::string, nlohmann::json> unresolved;
  for (const auto& commit : commits) {
    if (auto user = ingest::resolve_user(commit, identities)) {
      participants.insert(*user);
    } else {
      unresolved.try_emplace(commit.author_name + " <" + commit.author_email + ">",
                             nlohmann::json{{"authorName", commit.author_name},
                                            {"authorEmail", commit.author_email},
                                            {"commit", commit.hash}});
    }
  }
  for (const auto* commit : build_window) {
    if (auto user = ingest::resolve_user(*commit, identities))
      window_users.insert(*user);
  }
  for (const auto& c : state.challenges) {
    if (c.state == ChallengeState::kOpen) participants.insert(c.owner_user_id);
  }
  for (const auto& q : state.quests) {
    if (q.state == QuestState::kActive) participants.insert(q.owner_user_id);
  }
  for (auto& [author, payload] : unresolved) {
    outcome.warnings.push_back("UserUnresolved: no user claims " + author);
    append_event(state, EventType::kUserUnresolved, "", build_id, timestamp,
                 std::move(payload));
  }

  challenges::RunFacts::Inputs inputs;
  inputs.build_id = build_id;
  inputs.timestamp = timestamp;
  inputs.build_succeeded = options.build_succeeded;
  inputs.reports = std::move(parsed.reports);
  inputs.commits = commits;
  inputs.build_window_users = window_users;
  inputs.repo_root = options.repo;
  if (state.last_snapshot) inputs.previous_test_count = state.last_snapshot->total_tests;
  const challenges::RunFacts facts(std::move(inputs), config);

  const std::uint64_t run_seed = options.seed.value_or(
      derive_seed(stable_hash(config.project_id), std::to_string(build_id)));
  for (const auto& user : participants) {
    auto ctx = challenges::make_context(facts, state, user,
                                        derive_seed(run_seed, user));
    auto result = challenges::run_user_update(state, user, ctx, registry);
    state = std::move(result.state);
    for (auto& w : result.warnings) outcome.warnings.push_back(std::move(w));
  }

  const BuildSummary summary =
      facts.summary(commits.empty() ? std::string() : commits.front().hash);
  state.last_snapshot = summary;
  state.build_history.push_back(summary);

  store.save(state, last_logged, options.save_hooks);

  for (const auto& e : state.event_log) {
    if (e.build_id == build_id &&
        (e.type == EventType::kChallengeGenerated ||
         e.type == EventType::kBuildChallengeIssued ||
         e.type == EventType::kQuestGenerated))
      outcome.generated.push_back(describe_item(e));
  }

  if (options.print_digests || options.webhook) {
    nlohmann::json digests = nlohmann::json::array();
    for (const auto& [id, user] : state.users) {
      if (user.notifications_enabled)
        digests.push_back(notification_digest(state, id, build_id));
    }
    if (options.print_digests) {
      for (const auto& d : digests) out << d.dump() << "\n";
    }
    if (options.webhook && !digests.empty()) {
      if (auto error = post_webhook(*options.webhook,
                                    {{"project", config.project_id},
                                     {"build", build_id},
                                     {"digests", digests}}))
        outcome.warnings.push_back(*error);
    }
  }

  outcome.summary = summarize(state, outcome, participants, options.build_succeeded);
  return kExitOk;
}

}  // namespace

RunOutcome run_build(const RunOptions& options, std::ostream& out) {
  RunOutcome outcome;
  try {
    outcome.exit_code = run(options, out, outcome);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::kStateLocked:
        outcome.exit_code = kExitLocked;
        break;
      case Errc::kCorrupt:
      case Errc::kSchemaMismatch:
        outcome.exit_code = kExitCorrupt;
        break;
      case Errc::kValidation:
      case Errc::kAmbiguousIdentity:
        outcome.exit_code = kExitUsage;
        break;
      default:
        outcome.exit_code = kExitFailure;
        break;
    }
    outcome.summary = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    outcome.exit_code = kExitFailure;
    outcome.summary = std::string("error: ") + e.what() + "\n";
  }
  out << outcome.summary;
  return outcome;
}

}  // namespace testquest::service
