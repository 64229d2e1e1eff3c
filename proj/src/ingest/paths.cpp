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

#include "testquest/ingest.hpp"

namespace testquest::ingest {

namespace {

constexpr std::array<std::string_view, 5> kSourceExtensions = {
    ".java", ".kt", ".kts", ".groovy", ".scala"};

std::string_view strip_trailing_slashes(std::string_view text) {
  while (!text.empty() && text.back() == '/') text.remove_suffix(1);
  return text;
}

}  // namespace

std::vector<std::string> default_source_roots() {
  return {"src/main/java", "src/main/kotlin"};
}

std::vector<std::string> default_test_roots() {
  return {"src/test/java", "src/test/kotlin"};
}

std::optional<std::string> path_to_class(
    std::string_view path, std::span<const std::string> source_roots) {
  while (path.starts_with("./")) path.remove_prefix(2);

  std::string_view best;
  bool found = false;
  for (const auto& root_text : source_roots) {
    const std::string_view root = strip_trailing_slashes(root_text);
    const bool matches =
        root.empty() ||
        (path.size() > root.size() && path.starts_with(root) &&
         path[root.size()] == '/');
    if (matches && (!found || root.size() > best.size())) {
      best = root;
      found = true;
    }
  }
  if (!found) return std::nullopt;

  std::string_view rest = best.empty() ? path : path.substr(best.size() + 1);
  const auto dot = rest.rfind('.');
  const auto slash = rest.rfind('/');
  if (dot == std::string_view::npos ||
      (slash != std::string_view::npos && dot < slash)) {
    return std::nullopt;
  }
  const std::string_view extension = rest.substr(dot);
  if (std::find(kSourceExtensions.begin(), kSourceExtensions.end(),
                extension) == kSourceExtensions.end()) {
    return std::nullopt;
  }
  std::string fqn(rest.substr(0, dot));
  if (fqn.empty()) return std::nullopt;
  std::replace(fqn.begin(), fqn.end(), '/', '.');
  return fqn;
}

}  // namespace testquest::ingest
