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
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "testquest/error.hpp"
#include "testquest/model.hpp"

namespace testquest {

using nlohmann::json;

namespace {

std::string checksum_of(const std::string& text) {
  const uLong crc =
      ::crc32(0L, reinterpret_cast<const Bytef*>(text.data()),
              static_cast<uInt>(text.size()));
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%08lx", crc);
  return buffer;
}

[[noreturn]] void io_failure(const std::string& what) {
  throw Error(Errc::kIoFailure, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& data, const std::string& path) {
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_failure("write " + path);
    }
    written += static_cast<std::size_t>(n);
  }
}

void sync_directory(const std::filesystem::path& dir) {
  const int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

ProjectState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kNotFound, path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  json envelope;
  try {
    envelope = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(Errc::kCorrupt, path.string() + ": " + e.what());
  }
  if (!envelope.is_object() || !envelope.contains("schemaVersion") ||
      !envelope["schemaVersion"].is_number_integer()) {
    throw Error(Errc::kCorrupt, path.string() + ": no schema version");
  }
  const int version = envelope["schemaVersion"].get<int>();
  if (version != kStateSchemaVersion) {
    throw Error(Errc::kSchemaMismatch,
                path.string() + " has schema version " +
                    std::to_string(version) + ", this build reads version " +
                    std::to_string(kStateSchemaVersion) +
                    "; re-create the project with `testquest reset` or run "
                    "the release that wrote it to export its data");
  }
  if (!envelope.contains("state") || !envelope.contains("checksum"))
    throw Error(Errc::kCorrupt, path.string() + ": missing state or checksum");
  const json& state = envelope["state"];
  if (checksum_of(state.dump()) != envelope["checksum"].get<std::string>())
    throw Error(Errc::kCorrupt, path.string() + ": checksum mismatch");
  try {
    return state_from_json(state);
  } catch (const json::exception& e) {
    throw Error(Errc::kCorrupt, path.string() + ": " + e.what());
  }
}

void save_state(const ProjectState& state, const std::filesystem::path& path,
                const SaveHooks& hooks) {
  validate_state(state);

  json payload = to_json(state);
  json envelope = {{"schemaVersion", kStateSchemaVersion},
                   {"checksum", checksum_of(payload.dump())},
                   {"state", std::move(payload)}};
  const std::string text = envelope.dump(2) + "\n";

  std::filesystem::path temp = path;
  temp += ".tmp";
  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC,
                        0644);
  if (fd < 0) io_failure("open " + temp.string());
  try {
    write_all(fd, text, temp.string());
    if (::fsync(fd) != 0) io_failure("fsync " + temp.string());
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(temp);
    throw;
  }
  if (::close(fd) != 0) io_failure("close " + temp.string());

  if (hooks.before_rename) hooks.before_rename();

  if (::rename(temp.c_str(), path.c_str()) != 0)
    io_failure("rename " + temp.string());
  sync_directory(path.parent_path());
}

}  // namespace testquest
