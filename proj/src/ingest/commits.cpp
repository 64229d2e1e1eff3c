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

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <map>

#include "testquest/error.hpp"
#include "testquest/ingest.hpp"

extern char** environ;

namespace testquest::ingest {

namespace {

struct ProcessResult {
  int exit_code = 0;
  std::string out;
};

// Runs argv[0] from PATH with stdout captured and stderr discarded.
// Throws kVcsUnavailable when the program cannot be started.
ProcessResult run_process(const std::vector<std::string>& args) {
  int fds[2];
  if (::pipe(fds) != 0)
    throw Error(Errc::kVcsUnavailable, std::strerror(errno));

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addclose(&actions, fds[0]);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, fds[1]);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null",
                                   O_WRONLY, 0);

  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc =
      ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(fds[1]);
  if (rc != 0) {
    ::close(fds[0]);
    throw Error(Errc::kVcsUnavailable,
                "cannot start " + args.front() + ": " + std::strerror(rc));
  }

  ProcessResult result;
  char buffer[8192];
  for (;;) {
    const ssize_t n = ::read(fds[0], buffer, sizeof buffer);
    if (n > 0) {
      result.out.append(buffer, static_cast<std::size_t>(n));
    } else if (n == 0 || errno != EINTR) {
      break;
    }
  }
  ::close(fds[0]);

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  if (result.exit_code == 127)
    throw Error(Errc::kVcsUnavailable, args.front() + " is not runnable");
  return result;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<CommitRecord> collect_commits(const std::filesystem::path& repo,
                                          int count) {
  if (count < 1) throw Error(Errc::kValidation, "commit count must be >= 1");
  const std::string dir = repo.string();

  if (!std::filesystem::is_directory(repo) ||
      run_process({"git", "-C", dir, "rev-parse", "--is-inside-work-tree"})
              .exit_code != 0) {
    throw Error(Errc::kNotARepository, dir);
  }
  // A repository without commits has an empty history, not an error.
  if (run_process({"git", "-C", dir, "rev-parse", "--verify", "-q", "HEAD"})
          .exit_code != 0) {
    return {};
  }

  const ProcessResult log = run_process(
      {"git", "-C", dir, "-c", "core.quotepath=off", "log",
       "-n", std::to_string(count), "--name-only", "--no-renames",
       "--format=%x1e%H%x1f%an%x1f%ae%x1f%ct"});
  if (log.exit_code != 0)
    throw Error(Errc::kNotARepository, "git log failed in " + dir);

  std::vector<CommitRecord> commits;
  for (std::string_view record : split(log.out, '\x1e')) {
    if (record.empty()) continue;
    const auto lines = split(record, '\n');
    const auto header = split(lines.front(), '\x1f');
    if (header.size() != 4) continue;
    CommitRecord commit;
    commit.hash = std::string(header[0]);
    commit.author_name = std::string(header[1]);
    commit.author_email = std::string(header[2]);
    std::from_chars(header[3].data(), header[3].data() + header[3].size(),
                    commit.timestamp);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (!lines[i].empty()) commit.changed_files.emplace_back(lines[i]);
    }
    commits.push_back(std::move(commit));
  }
  std::stable_sort(commits.begin(), commits.end(),
                   [](const CommitRecord& a, const CommitRecord& b) {
                     return a.timestamp > b.timestamp;
                   });
  return commits;
}

void validate_registry(const IdentityRegistry& registry) {
  std::map<std::string, std::string> owner;
  for (const auto& [user, identities] : registry) {
    for (const auto& identity : identities) {
      if (identity.empty())
        throw Error(Errc::kValidation, "empty git identity for " + user);
      auto [it, inserted] = owner.emplace(identity, user);
      if (!inserted && it->second != user) {
        throw Error(Errc::kAmbiguousIdentity,
                    "'" + identity + "' is claimed by " + it->second +
                        " and " + user);
      }
    }
  }
}

std::optional<std::string> resolve_user(const CommitRecord& commit,
                                        const IdentityRegistry& registry) {
  std::optional<std::string> match;
  for (const auto& [user, identities] : registry) {
    if (identities.contains(commit.author_name) ||
        identities.contains(commit.author_email)) {
      if (match) {
        throw Error(Errc::kAmbiguousIdentity,
                    "commit " + commit.hash + " matches " + *match + " and " +
                        user);
      }
      match = user;
    }
  }
  return match;
}

}  // namespace testquest::ingest
