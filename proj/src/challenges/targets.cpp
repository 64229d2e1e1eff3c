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

#include "testquest/challenges.hpp"

namespace testquest::challenges {

namespace {

constexpr int kSnippetContext = 2;

Challenge blank(const GenerationContext& ctx, ChallengeKind kind) {
  Challenge c;
  c.owner_user_id = ctx.user_id;
  c.kind = kind;
  c.created_build = ctx.facts.build_id();
  return c;
}

bool available(const GenerationContext& ctx, const Challenge& c) {
  const std::string fp = fingerprint(c);
  return !ctx.rejected_fingerprints.contains(fp) &&
         !ctx.taken_fingerprints.contains(fp);
}

std::string method_name(const std::string& signature) {
  const auto paren = signature.find('(');
  return paren == std::string::npos ? signature : signature.substr(0, paren);
}

std::string simple_name(const std::string& fqn) {
  const auto dot = fqn.rfind('.');
  return dot == std::string::npos ? fqn : fqn.substr(dot + 1);
}

std::string describe(const GenerationContext& ctx, const Challenge& c) {
  const ClassFacts* facts = ctx.facts.find_class(c.target_class);
  const std::string cls = simple_name(c.target_class);
  switch (c.kind) {
    case ChallengeKind::kBuild:
      return "Fix the failing build.";
    case ChallengeKind::kTest:
      return "Write a new test.";
    case ChallengeKind::kClassCoverage: {
      std::string text = "Cover more lines of class " + cls + ".";
      if (facts != nullptr) {
        text += " " + std::to_string(facts->row.lines_covered) + " of " +
                std::to_string(facts->row.lines_covered +
                               facts->row.lines_missed) +
                " lines are covered.";
      }
      return text;
    }
    case ChallengeKind::kMethodCoverage:
      return "Improve the coverage of method " + method_name(c.target_method) +
             " in class " + cls + ".";
    case ChallengeKind::kLineCoverage: {
      if (facts != nullptr) {
        const auto it = facts->lines.find(c.target_line);
        if (it != facts->lines.end() && it->second.covered()) {
          const auto& line = it->second;
          return "Cover more branches of line " +
                 std::to_string(c.target_line) + " in class " + cls + " (" +
                 std::to_string(line.covered_branches) + " of " +
                 std::to_string(line.covered_branches + line.missed_branches) +
                 " covered).";
        }
      }
      return "Cover line " + std::to_string(c.target_line) + " of class " +
             cls + ".";
    }
    case ChallengeKind::kMutation: {
      std::string text = "Kill the mutant on line " +
                         std::to_string(c.target_line) + " of class " + cls;
      if (const auto* m = ctx.facts.find_mutant(c.target_mutant_id);
          m != nullptr && !m->mutation_operator.empty()) {
        text += " (" + m->mutation_operator + ")";
      }
      return text + ".";
    }
    case ChallengeKind::kSmell: {
      std::string text = "Remove the " + c.smell_rule + " smell in " +
                         c.target_file + " at line " +
                         std::to_string(c.target_line) + ".";
      for (const auto& smell : ctx.facts.smells()) {
        if (smell.smell_id == c.target_smell_id && !smell.message.empty())
          return text + " " + smell.message;
      }
      return text;
    }
  }
  return {};
}

}  // namespace

Baseline freeze_baseline(const Challenge& c, const RunFacts& facts) {
  Baseline b;
  if (c.kind == ChallengeKind::kTest) b.test_count = facts.test_count();
  const ClassFacts* cls = facts.find_class(c.target_class);
  if (cls == nullptr) return b;
  b.class_coverage = cls->row.coverage_ratio();
  b.class_covered_lines = static_cast<std::int64_t>(cls->row.lines_covered);
  if (c.kind == ChallengeKind::kMethodCoverage) {
    const auto it = cls->methods.find(c.target_method);
    if (it != cls->methods.end()) b.method_coverage = it->second.ratio();
  }
  if (c.kind == ChallengeKind::kLineCoverage) {
    const auto it = cls->lines.find(c.target_line);
    if (it != cls->lines.end())
      b.line_covered_branches =
          static_cast<std::int64_t>(it->second.covered_branches);
  }
  return b;
}

std::vector<Challenge> enumerate_targets(const GenerationContext& ctx,
                                         const ClassFacts& facts,
                                         ChallengeKind kind) {
  const RunFacts& run = ctx.facts;
  const double threshold = run.config().coverage_threshold;
  std::vector<Challenge> out;
  auto emit = [&](Challenge c,
                  std::optional<ingest::Severity> severity = std::nullopt) {
    if (!available(ctx, c)) return;
    c.baseline = freeze_baseline(c, run);
    c.points = compute_points(c.kind, facts.row.coverage_ratio(), threshold,
                              severity);
    out.push_back(std::move(c));
  };

  switch (kind) {
    case ChallengeKind::kClassCoverage: {
      const auto& row = facts.row;
      if (!run.has_class_coverage() || row.lines_missed == 0) break;
      Challenge c = blank(ctx, kind);
      c.target_class = facts.fqn();
      emit(std::move(c));
      break;
    }
    case ChallengeKind::kMethodCoverage:
      if (!run.has_line_coverage()) break;
      for (const auto& [signature, method] : facts.methods) {
        if (!method.under_covered()) continue;
        Challenge c = blank(ctx, kind);
        c.target_class = facts.fqn();
        c.target_method = signature;
        emit(std::move(c));
      }
      break;
    case ChallengeKind::kLineCoverage:
      if (!run.has_line_coverage()) break;
      for (const auto& [number, line] : facts.lines) {
        if (line.fully_covered()) continue;
        Challenge c = blank(ctx, kind);
        c.target_class = facts.fqn();
        c.target_line = number;
        emit(std::move(c));
      }
      break;
    case ChallengeKind::kMutation:
      for (const auto& mutant : facts.mutants) {
        if (!mutant.live()) continue;
        Challenge c = blank(ctx, kind);
        c.target_class = facts.fqn();
        c.target_mutant_id = mutant.mutant_id;
        c.target_method = mutant.method_signature;
        c.target_line = mutant.line_number;
        emit(std::move(c));
      }
      break;
    case ChallengeKind::kSmell:
      for (const auto& smell : facts.smells) {
        Challenge c = blank(ctx, kind);
        c.target_class = facts.fqn();
        c.target_smell_id = smell.smell_id;
        c.target_file = smell.file;
        c.target_line = smell.start_line;
        c.smell_rule = smell.rule_id;
        emit(std::move(c), smell.severity);
      }
      break;
    case ChallengeKind::kBuild:
    case ChallengeKind::kTest:
      break;
  }
  return out;
}

void attach_presentation(const GenerationContext& ctx, Challenge& c) {
  const RunFacts& run = ctx.facts;
  c.description = describe(ctx, c);

  std::string file;
  int line = 0;
  const ClassFacts* facts = run.find_class(c.target_class);
  switch (c.kind) {
    case ChallengeKind::kMethodCoverage:
      if (facts != nullptr) {
        const auto it = facts->methods.find(c.target_method);
        if (it != facts->methods.end() && !it->second.lines.empty())
          line = *std::min_element(it->second.lines.begin(),
                                   it->second.lines.end());
      }
      break;
    case ChallengeKind::kLineCoverage:
      line = c.target_line;
      break;
    case ChallengeKind::kMutation:
      if (const auto* m = run.find_mutant(c.target_mutant_id)) {
        c.snippet = m->original_snippet;
        c.mutated_snippet = m->mutated_snippet;
        c.snippet_first_line = m->line_number;
        if (!c.snippet.empty()) return;
      }
      line = c.target_line;
      break;
    case ChallengeKind::kSmell:
      file = c.target_file;
      line = c.target_line;
      break;
    default:
      return;
  }
  if (line <= 0) return;
  if (file.empty() && facts != nullptr) file = run.locate_source(*facts);
  if (file.empty()) return;
  const int first = std::max(1, line - kSnippetContext);
  c.snippet = run.read_lines(file, first, line + kSnippetContext);
  c.snippet_first_line = c.snippet.empty() ? 0 : first;
}

void refresh_baseline(Challenge& challenge, const RunFacts& facts) {
  challenge.baseline = freeze_baseline(challenge, facts);
}

}  // namespace testquest::challenges
