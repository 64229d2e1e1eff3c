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

#include <set>

#include "json.hpp"
#include "testquest/error.hpp"
#include "testquest/ingest.hpp"

namespace testquest::ingest {

using nlohmann::json;

std::string_view to_string(MutantStatus status) {
  switch (status) {
    case MutantStatus::kKilled: return "KILLED";
    case MutantStatus::kSurvived: return "SURVIVED";
    case MutantStatus::kNoCoverage: return "NO_COVERAGE";
  }
  return "SURVIVED";
}

std::optional<MutantStatus> parse_mutant_status(std::string_view text) {
  if (text == "KILLED") return MutantStatus::kKilled;
  if (text == "SURVIVED") return MutantStatus::kSurvived;
  if (text == "NO_COVERAGE") return MutantStatus::kNoCoverage;
  return std::nullopt;
}

std::vector<MutantRecord> parse_mutation_report(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kMalformedDocument, e.what());
  }
  if (!root.is_object() || !root.contains("mutants") ||
      !root["mutants"].is_array()) {
    throw Error(Errc::kMalformedDocument,
                "mutation report needs a top-level \"mutants\" array");
  }

  std::vector<MutantRecord> mutants;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const json& entry : root["mutants"]) {
    ++index;
    const std::string where = "mutant " + std::to_string(index);
    try {
      MutantRecord m;
      m.class_fqn = entry.at("class").get<std::string>();
      m.method_signature = entry.value("method", "");
      m.line_number = entry.at("line").get<int>();
      m.mutation_operator = entry.value("operator", "");
      const auto status = entry.at("status").get<std::string>();
      const auto parsed = parse_mutant_status(status);
      if (!parsed) {
        throw Error(Errc::kMalformedDocument,
                    where + ": unknown status '" + status + "'");
      }
      m.status = *parsed;
      m.original_snippet = entry.value("original", "");
      m.mutated_snippet = entry.value("mutated", "");
      if (m.class_fqn.empty() || m.line_number <= 0) {
        throw Error(Errc::kMalformedDocument,
                    where + ": class and a positive line are required");
      }
      m.mutant_id = entry.value("id", "");
      if (m.mutant_id.empty()) {
        m.mutant_id = m.class_fqn + "#" + m.method_signature + ":" +
                      std::to_string(m.line_number) + ":" +
                      m.mutation_operator;
      }
      if (!ids.insert(m.mutant_id).second)
        throw Error(Errc::kDuplicateMutantId, where + ": " + m.mutant_id);
      mutants.push_back(std::move(m));
    } catch (const json::exception& e) {
      throw Error(Errc::kMalformedDocument, where + ": " + e.what());
    }
  }
  return mutants;
}

}  // namespace testquest::ingest
