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
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "testquest/error.hpp"
#include "testquest/ingest.hpp"
#include "xml_util.hpp"

namespace testquest::ingest {

namespace {

using boost::property_tree::ptree;

struct MethodStart {
  int line = 0;
  std::string class_fqn;
  std::string signature;
};

std::string slashes_to_dots(std::string name) {
  std::replace(name.begin(), name.end(), '/', '.');
  std::replace(name.begin(), name.end(), '$', '.');
  return name;
}

std::string file_stem(const std::string& file) {
  const auto dot = file.rfind('.');
  return dot == std::string::npos ? file : file.substr(0, dot);
}

class LineCollector {
 public:
  void walk(const ptree& node) {
    for (const auto& [name, child] : node) {
      if (name == "package") {
        package(child);
      } else if (name == "report" || name == "group") {
        walk(child);
      }
    }
  }

  std::vector<LineCoverageDetail> take() { return std::move(lines_); }

 private:
  void package(const ptree& node) {
    const std::string package_path = xml::attribute(node, "name");
    const std::string package_prefix =
        package_path.empty() ? "" : package_path + "/";

    std::map<std::string, std::vector<MethodStart>> starts_by_file;
    std::map<std::string, std::vector<std::string>> classes_by_file;

    for (const auto& [name, cls] : node) {
      if (name != "class") continue;
      const std::string fqn = slashes_to_dots(xml::attribute(cls, "name"));
      const std::string file = xml::attribute(cls, "sourcefilename");
      classes_by_file[file].push_back(fqn);
      for (const auto& [method_name, method] : cls) {
        if (method_name != "method") continue;
        const std::string signature = xml::attribute(method, "name") +
                                      xml::attribute(method, "desc");
        if (auto start = xml::optional_count(method, "line")) {
          starts_by_file[file].push_back(
              {static_cast<int>(*start), fqn, signature});
        }
        // Some producers nest line elements inside their method.
        for (const auto& [line_name, line] : method) {
          if (line_name != "line") continue;
          emit(line, fqn, package_prefix + file, signature);
        }
      }
    }

    for (auto& [file, starts] : starts_by_file) {
      std::stable_sort(starts.begin(), starts.end(),
                       [](const MethodStart& a, const MethodStart& b) {
                         return a.line < b.line;
                       });
    }

    for (const auto& [name, source] : node) {
      if (name != "sourcefile") continue;
      const std::string file = xml::attribute(source, "name");
      const auto& starts = starts_by_file[file];
      const std::string fallback_class =
          fallback_class_for(package_path, file, classes_by_file[file]);
      for (const auto& [line_name, line] : source) {
        if (line_name != "line") continue;
        const int nr = line_number(line);
        // Owning method: greatest start line not after this line.
        auto it = std::upper_bound(
            starts.begin(), starts.end(), nr,
            [](int value, const MethodStart& s) { return value < s.line; });
        if (it == starts.begin()) {
          emit(line, fallback_class, package_prefix + file, "");
        } else {
          --it;
          emit(line, it->class_fqn, package_prefix + file, it->signature);
        }
      }
    }
  }

  static std::string fallback_class_for(
      const std::string& package_path, const std::string& file,
      const std::vector<std::string>& classes) {
    const std::string primary = slashes_to_dots(
        package_path.empty() ? file_stem(file)
                             : package_path + "/" + file_stem(file));
    if (classes.empty() ||
        std::find(classes.begin(), classes.end(), primary) != classes.end())
      return primary;
    return classes.front();
  }

  static int line_number(const ptree& line) {
    const auto nr = xml::optional_count(line, "nr");
    if (!nr || *nr == 0)
      throw Error(Errc::kMalformedDocument,
                  "line element without a positive nr attribute");
    return static_cast<int>(*nr);
  }

  void emit(const ptree& line, const std::string& class_fqn,
            const std::string& source_file, const std::string& method) {
    LineCoverageDetail detail;
    detail.class_fqn = class_fqn;
    detail.source_file = source_file;
    detail.line_number = line_number(line);
    detail.missed_instructions = xml::optional_count(line, "mi").value_or(0);
    detail.covered_instructions = xml::optional_count(line, "ci").value_or(0);
    detail.missed_branches = xml::optional_count(line, "mb").value_or(0);
    detail.covered_branches = xml::optional_count(line, "cb").value_or(0);
    detail.owning_method = method;
    if (!seen_.emplace(detail.class_fqn, detail.line_number).second) return;
    lines_.push_back(std::move(detail));
  }

  std::vector<LineCoverageDetail> lines_;
  std::set<std::pair<std::string, int>> seen_;
};

}  // namespace

std::vector<LineCoverageDetail> parse_line_coverage(std::string_view document) {
  const ptree tree = xml::parse(document);
  if (tree.find("report") == tree.not_found())
    throw Error(Errc::kMalformedDocument, "coverage XML root is not <report>");
  LineCollector collector;
  collector.walk(tree);
  return collector.take();
}

}  // namespace testquest::ingest
