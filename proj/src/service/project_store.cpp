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
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>

#include "testquest/error.hpp"
#include "testquest/service.hpp"

namespace testquest::service {

namespace fs = std::filesystem;

ProjectLock::ProjectLock(const fs::path& lock_file, bool blocking) {
  fd_ = ::open(lock_file.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(Errc::kIoFailure,
                "open " + lock_file.string() + ": " + std::strerror(errno));
  }
  int rc;
  do {
    rc = ::flock(fd_, LOCK_EX | (blocking ? 0 : LOCK_NB));
  } while (rc != 0 && errno == EINTR);
  if (rc != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK)
      throw Error(Errc::kStateLocked,
                  "another run holds " + lock_file.string());
    throw Error(Errc::kIoFailure,
                "lock " + lock_file.string() + ": " + std::strerror(err));
  }
}

ProjectLock::~ProjectLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

void validate_project_id(const std::string& id) {
  const bool ok =
      !id.empty() && id != "." && id != ".." &&
      std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) != 0 || c == '-' || c == '_' || c == '.';
      });
  if (!ok) throw Error(Errc::kValidation, "invalid project id \"" + id + "\"");
}

ProjectStore::ProjectStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {}

fs::path ProjectStore::project_dir(const std::string& project_id) const {
  validate_project_id(project_id);
  return data_dir_ / project_id;
}

fs::path ProjectStore::state_path(const std::string& project_id) const {
  return project_dir(project_id) / "state.json";
}

fs::path ProjectStore::events_path(const std::string& project_id) const {
  return project_dir(project_id) / "events.ndjson";
}

fs::path ProjectStore::lock_path(const std::string& project_id) const {
  return project_dir(project_id) / "lock";
}

bool ProjectStore::exists(const std::string& project_id) const {
  std::error_code ec;
  return fs::is_regular_file(state_path(project_id), ec);
}

std::vector<std::string> ProjectStore::project_ids() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_dir_, ec)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (fs::is_regular_file(entry.path() / "state.json")) ids.push_back(name);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

ProjectState ProjectStore::load(const std::string& project_id) const {
  return load_state(state_path(project_id));
}

ProjectState ProjectStore::load_or_create(const std::string& project_id) const {
  if (!exists(project_id)) return make_project(project_id);
  return load(project_id);
}

void ProjectStore::save(const ProjectState& state,
                        std::int64_t last_logged_event,
                        const SaveHooks& hooks) const {
  const std::string& id = state.config.project_id;
  fs::create_directories(project_dir(id));
  save_state(state, state_path(id), hooks);

  const bool cleared = state.event_log.empty() && state.event_counter == 0;
  std::ofstream log(events_path(id), cleared ? std::ios::trunc : std::ios::app);
  if (!log) throw Error(Errc::kIoFailure, "open " + events_path(id).string());
  for (const auto& event : state.event_log) {
    if (event.event_id > last_logged_event)
      log << to_json(event).dump() << '\n';
  }
  log.flush();
  if (!log) throw Error(Errc::kIoFailure, "write " + events_path(id).string());
}

std::unique_ptr<ProjectLock> ProjectStore::lock(const std::string& project_id,
                                                bool blocking) const {
  fs::create_directories(project_dir(project_id));
  return std::make_unique<ProjectLock>(lock_path(project_id), blocking);
}

}  // namespace testquest::service
