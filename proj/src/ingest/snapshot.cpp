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

#include <map>
#include <set>

#include "testquest/ingest.hpp"

namespace testquest::ingest {

std::vector<ClassCoverageRow> aggregate_class_rows(
    std::span<const LineCoverageDetail> lines) {
  struct Accumulator {
    ClassCoverageRow row;
    std::map<std::string, bool> methods;  // signature -> any line covered
  };
  std::map<std::string, Accumulator> by_class;
  for (const auto& line : lines) {
    auto& acc = by_class[line.class_fqn];
    if (line.coverable()) {
      if (line.covered()) {
        ++acc.row.lines_covered;
      } else {
        ++acc.row.lines_missed;
      }
    }
    acc.row.branches_covered += line.covered_branches;
    acc.row.branches_missed += line.missed_branches;
    if (!line.owning_method.empty()) {
      acc.methods[line.owning_method] |= line.covered();
    }
  }

  std::vector<ClassCoverageRow> rows;
  for (auto& [fqn, acc] : by_class) {
    const auto dot = fqn.rfind('.');
    acc.row.package_name = dot == std::string::npos ? "" : fqn.substr(0, dot);
    acc.row.class_name = dot == std::string::npos ? fqn : fqn.substr(dot + 1);
    for (const auto& [signature, covered] : acc.methods) {
      if (covered) {
        ++acc.row.methods_covered;
      } else {
        ++acc.row.methods_missed;
      }
    }
    rows.push_back(std::move(acc.row));
  }
  return rows;
}

std::vector<std::string> check_report_agreement(
    std::span<const ClassCoverageRow> rows,
    std::span<const LineCoverageDetail> lines) {
  std::map<std::string, ClassCoverageRow> aggregated;
  for (auto& row : aggregate_class_rows(lines)) {
    aggregated.emplace(row.fqn(), std::move(row));
  }

  std::vector<std::string> problems;
  std::set<std::string> listed;
  for (const auto& row : rows) {
    const std::string fqn = row.fqn();
    listed.insert(fqn);
    const auto it = aggregated.find(fqn);
    const std::uint64_t covered = it == aggregated.end() ? 0
                                                         : it->second.lines_covered;
    const std::uint64_t missed = it == aggregated.end() ? 0
                                                        : it->second.lines_missed;
    if (covered != row.lines_covered || missed != row.lines_missed) {
      problems.push_back(fqn + ": class report says " +
                         std::to_string(row.lines_covered) + " covered/" +
                         std::to_string(row.lines_missed) +
                         " missed lines, line report says " +
                         std::to_string(covered) + "/" +
                         std::to_string(missed));
    }
  }
  for (const auto& [fqn, row] : aggregated) {
    if (!listed.contains(fqn))
      problems.push_back(fqn + ": has line details but no class row");
  }
  return problems;
}

}  // namespace testquest::ingest
