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

#include "testquest/error.hpp"
#include "testquest/ingest.hpp"
#include "xml_util.hpp"

namespace testquest::ingest {

namespace {

using boost::property_tree::ptree;

struct SuiteCounts {
  std::uint64_t tests = 0;
  std::uint64_t failed = 0;
};

SuiteCounts own_counts(const ptree& node) {
  return {xml::optional_count(node, "tests").value_or(0),
          xml::optional_count(node, "failures").value_or(0) +
              xml::optional_count(node, "errors").value_or(0)};
}

// Sums leaf testsuite elements. A testsuites (or nested testsuite) wrapper
// only contributes its own attributes when it has no child suites.
SuiteCounts sum_suites(const ptree& node) {
  SuiteCounts sum;
  bool has_children = false;
  for (const auto& [name, child] : node) {
    if (name == "testsuite" || name == "testsuites") {
      has_children = true;
      const SuiteCounts counts = sum_suites(child);
      sum.tests += counts.tests;
      sum.failed += counts.failed;
    }
  }
  return has_children ? sum : own_counts(node);
}

}  // namespace

TestTotals parse_test_results(std::span<const std::string> documents) {
  TestTotals totals;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    try {
      const ptree tree = xml::parse(documents[i]);
      auto root = tree.begin();
      while (root != tree.end() && root->first == "<xmlcomment>") ++root;
      if (root == tree.end() ||
          (root->first != "testsuite" && root->first != "testsuites")) {
        throw Error(Errc::kMalformedDocument,
                    "root element is not testsuite or testsuites");
      }
      const SuiteCounts counts = sum_suites(root->second);
      totals.total += counts.tests;
      totals.failed += counts.failed;
    } catch (const Error& e) {
      totals.warnings.push_back("document " + std::to_string(i + 1) + ": " +
                                e.what());
    }
  }
  return totals;
}

}  // namespace testquest::ingest
