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

#ifndef TESTQUEST_INGEST_HPP_
#define TESTQUEST_INGEST_HPP_

/// @file
/// Report and repository ingestion. Every parser here is a pure function of
/// its input text and either returns normalized records or throws
/// testquest::Error naming the problem and its location.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace testquest::ingest {

/// One data row of the class-level coverage CSV.
struct ClassCoverageRow {
  std::string package_name;
  std::string class_name;
  std::uint64_t lines_covered = 0;
  std::uint64_t lines_missed = 0;
  std::uint64_t branches_covered = 0;
  std::uint64_t branches_missed = 0;
  std::uint64_t methods_covered = 0;
  std::uint64_t methods_missed = 0;

  /// package_name + "." + class_name, or just class_name for the default
  /// package.
  std::string fqn() const;

  /// Covered / coverable lines; 1.0 for a class without coverable lines.
  double coverage_ratio() const;

  bool operator==(const ClassCoverageRow&) const = default;
};

/// One line element of the detailed coverage report.
struct LineCoverageDetail {
  std::string class_fqn;
  std::string source_file;  // package path + file name, e.g. com/ex/Foo.java
  int line_number = 0;
  std::uint64_t covered_instructions = 0;
  std::uint64_t missed_instructions = 0;
  std::uint64_t covered_branches = 0;
  std::uint64_t missed_branches = 0;
  std::string owning_method;  // name + descriptor, empty when unknown

  bool fully_covered() const {
    return missed_instructions == 0 && missed_branches == 0;
  }
  // A line counts as covered once any of its instructions ran; this is the
  // rule the class-level LINE_COVERED/LINE_MISSED counters use.
  bool covered() const { return covered_instructions > 0; }
  bool coverable() const {
    return covered_instructions + missed_instructions > 0;
  }

  bool operator==(const LineCoverageDetail&) const = default;
};

struct CoverageSnapshot {
  std::int64_t build_id = 0;
  std::vector<ClassCoverageRow> class_rows;
  std::vector<LineCoverageDetail> line_details;
  std::uint64_t total_test_count = 0;
  std::uint64_t failed_test_count = 0;
  bool build_succeeded = true;
};

enum class MutantStatus { kKilled, kSurvived, kNoCoverage };

struct MutantRecord {
  std::string mutant_id;
  std::string class_fqn;
  std::string method_signature;
  int line_number = 0;
  std::string mutation_operator;
  MutantStatus status = MutantStatus::kSurvived;
  std::string original_snippet;
  std::string mutated_snippet;

  /// Survived and uncovered mutants are both still alive.
  bool live() const { return status != MutantStatus::kKilled; }

  bool operator==(const MutantRecord&) const = default;
};

enum class Severity { kLow, kMedium, kHigh, kCritical };
enum class SmellKind { kCode, kTest };

struct SmellRecord {
  std::string smell_id;
  std::string rule_id;
  std::string file;
  int start_line = 0;
  int end_line = 0;
  Severity severity = Severity::kLow;
  std::string message;
  SmellKind kind = SmellKind::kCode;

  bool operator==(const SmellRecord&) const = default;
};

struct CommitRecord {
  std::string hash;
  std::string author_name;
  std::string author_email;
  std::int64_t timestamp = 0;
  std::vector<std::string> changed_files;

  bool operator==(const CommitRecord&) const = default;
};

struct TestTotals {
  std::uint64_t total = 0;
  std::uint64_t failed = 0;
  // One entry per document that could not be read; totals exclude it.
  std::vector<std::string> warnings;
};

std::string_view to_string(MutantStatus status);
std::optional<MutantStatus> parse_mutant_status(std::string_view text);
std::string_view to_string(Severity severity);
std::optional<Severity> parse_severity(std::string_view text);

/// Parses the class-level coverage CSV. Columns are located by header name,
/// so any column order is accepted.
/// Throws kMissingHeader or kMalformedRow (with the 1-based data row index).
std::vector<ClassCoverageRow> parse_class_coverage(std::string_view document);

/// Parses the detailed XML coverage report into one record per line element.
/// Lines are attributed to the method with the closest preceding start line
/// in the same source file, or to an enclosing method element when the
/// report nests them. Throws kMalformedDocument.
std::vector<LineCoverageDetail> parse_line_coverage(std::string_view document);

/// Sums tests and failures (errors count as failures) over test-result XML
/// documents. Unreadable documents become warnings; the rest still count.
TestTotals parse_test_results(std::span<const std::string> documents);

/// Throws kMalformedDocument or kDuplicateMutantId.
std::vector<MutantRecord> parse_mutation_report(std::string_view document);

/// Default globs that mark a smell's file as test code: any path with a
/// segment named "test".
std::vector<std::string> default_test_globs();

/// Throws kMalformedDocument or kUnknownSeverity.
std::vector<SmellRecord> parse_smell_report(
    std::string_view document, std::span<const std::string> test_globs);

/// True when `path` matches any glob (fnmatch semantics, '*' crosses '/').
bool matches_any_glob(std::string_view path,
                      std::span<const std::string> globs);

/// Newest `count` commits on the checked-out branch, newest first.
/// Throws kNotARepository or kVcsUnavailable.
std::vector<CommitRecord> collect_commits(const std::filesystem::path& repo,
                                          int count);

/// Maps a user id to the git names and e-mail addresses it commits under.
using IdentityRegistry = std::map<std::string, std::set<std::string>>;

/// Throws kAmbiguousIdentity when two users claim the same identity string,
/// kValidation for empty identity strings.
void validate_registry(const IdentityRegistry& registry);

/// The unique user whose identities contain the commit's author name or
/// e-mail, or nullopt. Throws kAmbiguousIdentity if more than one matches.
std::optional<std::string> resolve_user(const CommitRecord& commit,
                                        const IdentityRegistry& registry);

std::vector<std::string> default_source_roots();
std::vector<std::string> default_test_roots();

/// Maps a repository-relative source path to a class name by stripping the
/// longest matching source root and the extension. Non-source files and
/// paths outside every root yield nullopt.
std::optional<std::string> path_to_class(
    std::string_view path, std::span<const std::string> source_roots);

/// Derives class rows from line details, for builds that ship only the
/// detailed report.
std::vector<ClassCoverageRow> aggregate_class_rows(
    std::span<const LineCoverageDetail> lines);

/// Reports every class whose CSV line counters disagree with the aggregate
/// of its line details, and every line whose class has no CSV row.
/// An empty result means the two reports agree exactly.
std::vector<std::string> check_report_agreement(
    std::span<const ClassCoverageRow> rows,
    std::span<const LineCoverageDetail> lines);

}  // namespace testquest::ingest

#endif  // TESTQUEST_INGEST_HPP_
