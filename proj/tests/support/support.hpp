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

#ifndef TESTQUEST_TESTS_SUPPORT_HPP_
#define TESTQUEST_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "testquest/challenges.hpp"
#include "testquest/model.hpp"

namespace testquest::testing {

namespace fs = std::filesystem;

fs::path fixture_dir();
fs::path fixture(const std::string& relative);
std::string read_text(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

/// The parsed report set in fixtures/reports.
challenges::BuildReports demo_reports();

struct FactsSpec {
  std::int64_t build_id = 1;
  bool build_succeeded = true;
  fs::path repo_root;
  std::vector<ingest::CommitRecord> commits;
  std::set<std::string> build_window_users;
  std::optional<std::int64_t> previous_test_count;
};

challenges::RunFacts make_facts(challenges::BuildReports reports,
                                const FactsSpec& spec = {},
                                ProjectConfig config = {});

ingest::CommitRecord commit(const std::string& author,
                            std::vector<std::string> files,
                            const std::string& hash = "0000000");

/// A project with users registered under their own id as git name.
ProjectState project_with_users(const std::vector<std::string>& users);

/// Engine-level build without git or storage: the same steps the runner
/// takes, with every commit in the build window.
struct SimulatedBuild {
  challenges::BuildReports reports;
  std::vector<ingest::CommitRecord> commits;
  bool build_succeeded = true;
  std::uint64_t seed = 1;
  fs::path repo_root;
};

ProjectState simulate_build(const ProjectState& state,
                            const SimulatedBuild& build,
                            std::vector<std::string>* warnings = nullptr);

/// Runs git in `repo`; throws on failure. Returns stdout.
std::string git(const fs::path& repo, const std::vector<std::string>& args);

void init_repo(const fs::path& repo);

/// Stages everything and commits as `author` <author@example.com>.
void commit_all(const fs::path& repo, const std::string& author,
                const std::string& message);

/// Runs a command line through the shell, returns its exit status and
/// captures stdout.
int run_command(const std::string& command, std::string* output = nullptr);

}  // namespace testquest::testing

#endif  // TESTQUEST_TESTS_SUPPORT_HPP_
