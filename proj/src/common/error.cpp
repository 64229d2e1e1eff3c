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

namespace testquest {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kMissingHeader: return "MissingHeader";
    case Errc::kMalformedRow: return "MalformedRow";
    case Errc::kMalformedDocument: return "MalformedDocument";
    case Errc::kDuplicateMutantId: return "DuplicateMutantId";
    case Errc::kUnknownSeverity: return "UnknownSeverity";
    case Errc::kNotARepository: return "NotARepository";
    case Errc::kVcsUnavailable: return "VcsUnavailable";
    case Errc::kAmbiguousIdentity: return "AmbiguousIdentity";
    case Errc::kNotFound: return "NotFound";
    case Errc::kSchemaMismatch: return "SchemaMismatch";
    case Errc::kCorrupt: return "Corrupt";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kInvariantViolation: return "InvariantViolation";
    case Errc::kDisabled: return "Disabled";
    case Errc::kEmptyCandidates: return "EmptyCandidates";
    case Errc::kMissingArgument: return "MissingArgument";
    case Errc::kMissingReport: return "MissingReport";
    case Errc::kNotOpen: return "NotOpen";
    case Errc::kNotActive: return "NotActive";
    case Errc::kEmptyReason: return "EmptyReason";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kUnknownMetric: return "UnknownMetric";
    case Errc::kUnknownUser: return "UnknownUser";
    case Errc::kUnknownId: return "UnknownId";
    case Errc::kStateLocked: return "StateLocked";
    case Errc::kParseFailure: return "ParseFailure";
    case Errc::kValidation: return "Validation";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace testquest
