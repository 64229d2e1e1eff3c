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
#include <charconv>
#include <map>
#include <set>

#include "testquest/error.hpp"
#include "testquest/ingest.hpp"

namespace testquest::ingest {

namespace {

constexpr std::array<std::string_view, 9> kRequiredColumns = {
    "GROUP",        "PACKAGE",        "CLASS",
    "BRANCH_MISSED", "BRANCH_COVERED", "LINE_MISSED",
    "LINE_COVERED", "METHOD_MISSED",  "METHOD_COVERED"};

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas; a doubled
// quote inside a quoted field is a literal quote.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::string(trim(current)));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::string(trim(current)));
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view document) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    lines.push_back(document.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::string ClassCoverageRow::fqn() const {
  return package_name.empty() ? class_name : package_name + "." + class_name;
}

double ClassCoverageRow::coverage_ratio() const {
  const std::uint64_t total = lines_covered + lines_missed;
  if (total == 0) return 1.0;
  return static_cast<double>(lines_covered) / static_cast<double>(total);
}

std::vector<ClassCoverageRow> parse_class_coverage(std::string_view document) {
  const auto lines = split_lines(document);

  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty())
    ++header_line;
  if (header_line == lines.size())
    throw Error(Errc::kMissingHeader, "class coverage document is empty");

  std::map<std::string, std::size_t, std::less<>> columns;
  const auto header = split_record(lines[header_line]);
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = header[i];
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    columns.emplace(std::move(name), i);
  }
  for (auto required : kRequiredColumns) {
    if (!columns.contains(required)) {
      throw Error(Errc::kMissingHeader,
                  "header row lacks column " + std::string(required));
    }
  }

  std::vector<ClassCoverageRow> rows;
  std::set<std::string> seen;
  std::size_t row_index = 0;
  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++row_index;
    const auto fields = split_record(lines[i]);
    const auto where = "row " + std::to_string(row_index) + " (line " +
                       std::to_string(i + 1) + ")";
    if (fields.size() < header.size()) {
      throw Error(Errc::kMalformedRow,
                  where + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(fields.size()));
    }

    auto count = [&](std::string_view column) -> std::uint64_t {
      const std::string& text = fields[columns.find(column)->second];
      std::uint64_t value = 0;
      const auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size() ||
          text.empty()) {
        throw Error(Errc::kMalformedRow, where + ": column " +
                                             std::string(column) +
                                             " is not a count: '" + text + "'");
      }
      return value;
    };

    ClassCoverageRow row;
    row.package_name = fields[columns.find("PACKAGE")->second];
    row.class_name = fields[columns.find("CLASS")->second];
    if (row.class_name.empty())
      throw Error(Errc::kMalformedRow, where + ": empty CLASS");
    row.branches_missed = count("BRANCH_MISSED");
    row.branches_covered = count("BRANCH_COVERED");
    row.lines_missed = count("LINE_MISSED");
    row.lines_covered = count("LINE_COVERED");
    row.methods_missed = count("METHOD_MISSED");
    row.methods_covered = count("METHOD_COVERED");
    if (!seen.insert(row.fqn()).second) {
      throw Error(Errc::kMalformedRow,
                  where + ": duplicate class " + row.fqn());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace testquest::ingest
