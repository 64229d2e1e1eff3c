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

#ifndef TESTQUEST_ERROR_HPP_
#define TESTQUEST_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace testquest {

// Every failure the engine reports carries one of these codes so callers
// (CLI exit codes, HTTP status mapping, tests) can branch without parsing
// messages.
enum class Errc {
  // ingest
  kMissingHeader,
  kMalformedRow,
  kMalformedDocument,
  kDuplicateMutantId,
  kUnknownSeverity,
  kNotARepository,
  kVcsUnavailable,
  kAmbiguousIdentity,
  // model
  kNotFound,
  kSchemaMismatch,
  kCorrupt,
  kIoFailure,
  kInvariantViolation,
  kDisabled,
  // challenges / quests
  kEmptyCandidates,
  kMissingArgument,
  kMissingReport,
  kNotOpen,
  kNotActive,
  kEmptyReason,
  // achievements
  kDuplicateId,
  kUnknownMetric,
  // service
  kUnknownUser,
  kUnknownId,
  kStateLocked,
  kParseFailure,
  kValidation,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace testquest

#endif  // TESTQUEST_ERROR_HPP_
