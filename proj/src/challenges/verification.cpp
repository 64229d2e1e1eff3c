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


#include <cstdlib>

#include "testquest/challenges.hpp"
#include "testquest/error.hpp"

namespace testquest::challenges {

namespace {

constexpr int kSmellLineWindow = 3;

const MethodFacts* find_method(const ClassFacts* facts,
                               const std::string& signature) {
  if (facts == nullptr) return nullptr;
  const auto it = facts->methods.find(signature);
  return it == facts->methods.end() ? nullptr : &it->second;
}

const ingest::LineCoverageDetail* find_line(const ClassFacts* facts,
                                            int number) {
  if (facts == nullptr) return nullptr;
  const auto it = facts->lines.find(number);
  return it == facts->lines.end() ? nullptr : &it->second;
}

}  // namespace

bool check_solved(const Challenge& c, const RunFacts& facts) {
  if (!facts.has_report_for(c.kind)) {
    throw Error(Errc::kMissingReport,
                "no report to verify " + std::string(to_string(c.kind)) +
                    " challenge " + c.challenge_id);
  }
  const ClassFacts* cls = facts.find_class(c.target_class);
  switch (c.kind) {
    case ChallengeKind::kBuild:
      return facts.build_succeeded();
    case ChallengeKind::kTest:
      return *facts.current_test_count() > c.baseline.test_count;
    case ChallengeKind::kClassCoverage:
      return cls != nullptr && static_cast<std::int64_t>(
                                   cls->row.lines_covered) >
                                   c.baseline.class_covered_lines;
    case ChallengeKind::kMethodCoverage: {
      const MethodFacts* method = find_method(cls, c.target_method);
      return method != nullptr &&
             method->ratio() > c.baseline.method_coverage;
    }
    case ChallengeKind::kLineCoverage: {
      const auto* line = find_line(cls, c.target_line);
      return line != nullptr &&
             (line->fully_covered() ||
              static_cast<std::int64_t>(line->covered_branches) >
                  c.baseline.line_covered_branches);
    }
    case ChallengeKind::kMutation: {
      const auto* mutant = facts.find_mutant(c.target_mutant_id);
      return mutant != nullptr && !mutant->live();
    }
    case ChallengeKind::kSmell:
      // A deleted file removes the smell too, but that is an expiry, not a
      // fix.
      if (!facts.file_exists(c.target_file)) return false;
      for (const auto& smell : facts.smells()) {
        if (smell.rule_id == c.smell_rule && smell.file == c.target_file &&
            std::abs(smell.start_line - c.target_line) <= kSmellLineWindow)
          return false;
      }
      return true;
  }
  return false;
}

bool check_solvable(const Challenge& c, const RunFacts& facts) {
  // Without the report nothing can be concluded; keep the challenge.
  if (!facts.has_report_for(c.kind)) return true;
  const ClassFacts* cls = facts.find_class(c.target_class);
  switch (c.kind) {
    case ChallengeKind::kBuild:
    case ChallengeKind::kTest:
      return true;
    case ChallengeKind::kClassCoverage:
      return cls != nullptr && cls->row.lines_missed > 0;
    case ChallengeKind::kMethodCoverage: {
      const MethodFacts* method = find_method(cls, c.target_method);
      return method != nullptr && method->under_covered();
    }
    case ChallengeKind::kLineCoverage:
      return find_line(cls, c.target_line) != nullptr;
    case ChallengeKind::kMutation:
      return facts.find_mutant(c.target_mutant_id) != nullptr;
    case ChallengeKind::kSmell:
      return facts.file_exists(c.target_file);
  }
  return true;
}

}  // namespace testquest::challenges
