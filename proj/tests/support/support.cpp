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

#include "support.hpp"

#include <sys/wait.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "testquest/achievements.hpp"
#include "testquest/ingest.hpp"
#include "testquest/rng.hpp"

#ifndef TESTQUEST_FIXTURE_DIR
#error "TESTQUEST_FIXTURE_DIR must be defined"
#endif

namespace testquest::testing {

fs::path fixture_dir() { return TESTQUEST_FIXTURE_DIR; }

fs::path fixture(const std::string& relative) {
  return fixture_dir() / relative;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  std::random_device device;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto candidate = fs::temp_directory_path() /
                           ("testquest-" + std::to_string(device()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

challenges::BuildReports demo_reports() {
  challenges::BuildReports reports;
  reports.class_rows =
      ingest::parse_class_coverage(read_text(fixture("reports/coverage.csv")));
  reports.line_details =
      ingest::parse_line_coverage(read_text(fixture("reports/coverage.xml")));
  const std::vector<std::string> tests = {
      read_text(fixture("reports/TEST-com.example.CalculatorTest.xml")),
      read_text(fixture("reports/TEST-com.example.ParserTest.xml"))};
  reports.tests = ingest::parse_test_results(tests);
  reports.mutants = ingest::parse_mutation_report(
      read_text(fixture("reports/mutations.json")));
  reports.smells = ingest::parse_smell_report(
      read_text(fixture("reports/smells.json")), ingest::default_test_globs());
  return reports;
}

challenges::RunFacts make_facts(challenges::BuildReports reports,
                                const FactsSpec& spec, ProjectConfig config) {
  challenges::RunFacts::Inputs inputs;
  inputs.build_id = spec.build_id;
  inputs.timestamp = 1700000000 + spec.build_id;
  inputs.build_succeeded = spec.build_succeeded;
  inputs.reports = std::move(reports);
  inputs.commits = spec.commits;
  inputs.build_window_users = spec.build_window_users;
  inputs.repo_root = spec.repo_root;
  inputs.previous_test_count = spec.previous_test_count;
  return challenges::RunFacts(std::move(inputs), std::move(config));
}

ingest::CommitRecord commit(const std::string& author,
                            std::vector<std::string> files,
                            const std::string& hash) {
  ingest::CommitRecord record;
  record.hash = hash;
  record.author_name = author;
  record.author_email = author + "@example.com";
  record.timestamp = 1700000000;
  record.changed_files = std::move(files);
  return record;
}

ProjectState project_with_users(const std::vector<std::string>& users) {
  ProjectState state = make_project("demo");
  for (const auto& id : users) {
    UserProfile& user = ensure_user(state, id);
    user.display_name = id;
    user.git_identities = {id};
  }
  return state;
}

ProjectState simulate_build(const ProjectState& state,
                            const SimulatedBuild& build,
                            std::vector<std::string>* warnings) {
  ProjectState next = state;
  const std::int64_t build_id = ++next.build_counter;
  const auto identities = identity_registry(next);

  std::set<std::string> participants;
  for (const auto& c : build.commits) {
    if (auto user = ingest::resolve_user(c, identities)) participants.insert(*user);
  }
  const std::set<std::string> window = participants;
  for (const auto& c : next.challenges)
    if (c.state == ChallengeState::kOpen) participants.insert(c.owner_user_id);
  for (const auto& q : next.quests)
    if (q.state == QuestState::kActive) participants.insert(q.owner_user_id);

  FactsSpec spec;
  spec.build_id = build_id;
  spec.build_succeeded = build.build_succeeded;
  spec.repo_root = build.repo_root;
  spec.commits = build.commits;
  spec.build_window_users = window;
  if (next.last_snapshot) spec.previous_test_count = next.last_snapshot->total_tests;
  const auto facts = make_facts(build.reports, spec, next.config);

  for (const auto& user : participants) {
    auto ctx = challenges::make_context(facts, next, user,
                                        derive_seed(build.seed, user));
    auto result = challenges::run_user_update(
        next, user, ctx, achievements::Registry::bundled());
    next = std::move(result.state);
    if (warnings != nullptr)
      warnings->insert(warnings->end(), result.warnings.begin(),
                       result.warnings.end());
  }
  next.last_snapshot = facts.summary("");
  next.build_history.push_back(*next.last_snapshot);
  return next;
}

namespace {

std::string quote(const std::string& text) {
  std::string quoted = "'";
  for (char c : text) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  return quoted + "'";
}

}  // namespace

int run_command(const std::string& command, std::string* output) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return -1;
  std::array<char, 4096> buffer;
  std::string text;
  std::size_t n;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    text.append(buffer.data(), n);
  const int status = ::pclose(pipe);
  if (output != nullptr) *output = std::move(text);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string git(const fs::path& repo, const std::vector<std::string>& args) {
  std::string command = "git -C " + quote(repo.string());
  for (const auto& arg : args) command += " " + quote(arg);
  command += " 2>&1";
  std::string output;
  if (run_command(command, &output) != 0)
    throw std::runtime_error(command + " failed: " + output);
  return output;
}

void init_repo(const fs::path& repo) {
  fs::create_directories(repo);
  git(repo, {"init", "-q", "-b", "main"});
}

void commit_all(const fs::path& repo, const std::string& author,
                const std::string& message) {
  std::string email;
  for (char c : author) email += c == ' ' ? '.' : static_cast<char>(std::tolower(c));
  git(repo, {"add", "-A"});
  git(repo, {"-c", "user.name=" + author,
             "-c", "user.email=" + email + "@example.com",
             "-c", "commit.gpgsign=false", "commit", "-q", "--allow-empty",
             "-m", message});
}

}  // namespace testquest::testing
