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
#include <cctype>

#include "testquest/challenges.hpp"
#include "testquest/error.hpp"

namespace testquest::challenges {

namespace {

bool blank_text(const std::string& text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char ch) {
    return std::isspace(ch) != 0;
  });
}

}  // namespace

void record_rejection(ProjectState& state, const Challenge& challenge) {
  if (has_concrete_target(challenge.kind))
    state.rejected_fingerprints.insert(fingerprint(challenge));
  if (challenge.kind == ChallengeKind::kClassCoverage)
    state.rejected_class_fqns.insert(challenge.target_class);
}

ProjectState reject_challenge(const ProjectState& state,
                              const std::string& challenge_id,
                              const std::string& reason,
                              std::int64_t timestamp) {
  ProjectState next = state;
  Challenge* challenge = find_challenge(next, challenge_id);
  if (challenge == nullptr)
    throw Error(Errc::kUnknownId, "no challenge " + challenge_id);
  if (challenge->state != ChallengeState::kOpen) {
    throw Error(Errc::kNotOpen, "challenge " + challenge_id + " is " +
                                    std::string(to_string(challenge->state)));
  }
  if (blank_text(reason))
    throw Error(Errc::kEmptyReason, "a rejection needs a reason");

  challenge->state = ChallengeState::kRejected;
  challenge->rejection_reason = reason;
  challenge->closed_build = next.build_counter;
  record_rejection(next, *challenge);

  nlohmann::json payload = challenge_event_payload(*challenge);
  payload["reason"] = reason;
  append_event(next, EventType::kChallengeRejected, challenge->owner_user_id,
               next.build_counter, timestamp, std::move(payload));
  return next;
}

}  // namespace testquest::challenges
