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


#include "testquest/challenges.hpp"
#include "testquest/error.hpp"

namespace testquest::challenges {

int smell_points(ingest::Severity severity) {
  switch (severity) {
    case ingest::Severity::kLow: return 1;
    case ingest::Severity::kMedium: return 2;
    case ingest::Severity::kHigh: return 3;
    case ingest::Severity::kCritical: return 4;
  }
  return 1;
}

int compute_points(ChallengeKind kind, double baseline_class_coverage,
                   double threshold,
                   std::optional<ingest::Severity> smell_severity) {
  const bool high = baseline_class_coverage > threshold;
  switch (kind) {
    case ChallengeKind::kBuild:
    case ChallengeKind::kTest:
      return 1;
    case ChallengeKind::kClassCoverage:
    case ChallengeKind::kMethodCoverage:
      return high ? 2 : 1;
    case ChallengeKind::kLineCoverage:
      return high ? 3 : 2;
    case ChallengeKind::kMutation:
      return 4;
    case ChallengeKind::kSmell:
      if (!smell_severity)
        throw Error(Errc::kMissingArgument, "smell points need a severity");
      return smell_points(*smell_severity);
  }
  return 1;
}

}  // namespace testquest::challenges
