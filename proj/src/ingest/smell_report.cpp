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

#include <fnmatch.h>

#include <algorithm>
#include <set>

#include "json.hpp"
#include "testquest/error.hpp"
#include "testquest/ingest.hpp"

namespace testquest::ingest {

using nlohmann::json;

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::kLow: return "LOW";
    case Severity::kMedium: return "MEDIUM";
    case Severity::kHigh: return "HIGH";
    case Severity::kCritical: return "CRITICAL";
  }
  return "LOW";
}

std::optional<Severity> parse_severity(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "LOW") return Severity::kLow;
  if (upper == "MEDIUM") return Severity::kMedium;
  if (upper == "HIGH") return Severity::kHigh;
  if (upper == "CRITICAL") return Severity::kCritical;
  return std::nullopt;
}

std::vector<std::string> default_test_globs() {
  return {"test/*", "*/test/*"};
}

bool matches_any_glob(std::string_view path,
                      std::span<const std::string> globs) {
  const std::string subject(path);
  return std::any_of(globs.begin(), globs.end(), [&](const std::string& g) {
    return ::fnmatch(g.c_str(), subject.c_str(), 0) == 0;
  });
}

std::vector<SmellRecord> parse_smell_report(
    std::string_view document, std::span<const std::string> test_globs) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kMalformedDocument, e.what());
  }
  if (!root.is_object() || !root.contains("smells") ||
      !root["smells"].is_array()) {
    throw Error(Errc::kMalformedDocument,
                "smell report needs a top-level \"smells\" array");
  }

  std::vector<SmellRecord> smells;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const json& entry : root["smells"]) {
    ++index;
    const std::string where = "smell " + std::to_string(index);
    try {
      SmellRecord s;
      s.rule_id = entry.at("rule").get<std::string>();
      s.file = entry.at("file").get<std::string>();
      s.start_line = entry.at("startLine").get<int>();
      s.end_line = entry.value("endLine", s.start_line);
      s.message = entry.value("message", "");
      const auto severity = entry.at("severity").get<std::string>();
      const auto parsed = parse_severity(severity);
      if (!parsed) {
        throw Error(Errc::kUnknownSeverity,
                    where + ": '" + severity + "'");
      }
      s.severity = *parsed;
      if (s.rule_id.empty() || s.file.empty() || s.start_line <= 0 ||
          s.end_line < s.start_line) {
        throw Error(Errc::kMalformedDocument,
                    where + ": rule, file and 0 < startLine <= endLine "
                            "are required");
      }
      s.kind = matches_any_glob(s.file, test_globs) ? SmellKind::kTest
                                                    : SmellKind::kCode;
      s.smell_id =
          s.rule_id + ":" + s.file + ":" + std::to_string(s.start_line);
      // Two findings of one rule on one line are the same smell for
      // challenge purposes.
      if (!ids.insert(s.smell_id).second) continue;
      smells.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Error(Errc::kMalformedDocument, where + ": " + e.what());
    }
  }
  return smells;
}

}  // namespace testquest::ingest
