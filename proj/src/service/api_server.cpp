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

#include <chrono>
#include <functional>
#include <map>

#include "httplib.h"
#include "testquest/achievements.hpp"
#include "testquest/challenges.hpp"
#include "testquest/error.hpp"
#include "testquest/quests.hpp"
#include "testquest/service.hpp"

namespace testquest::service {

using nlohmann::json;

namespace {

constexpr const char* kPrefix = "/api/v1";

int status_for(Errc code) {
  switch (code) {
    case Errc::kNotFound:
    case Errc::kUnknownUser:
    case Errc::kUnknownId:
      return 404;
    case Errc::kNotOpen:
    case Errc::kNotActive:
    case Errc::kStateLocked:
      return 409;
    case Errc::kEmptyReason:
    case Errc::kValidation:
    case Errc::kAmbiguousIdentity:
    case Errc::kMalformedDocument:
      return 422;
    case Errc::kDisabled:
      return 403;
    default:
      return 500;
  }
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  send(res, status, {{"error", code}, {"message", message}});
}

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

json parse_body(const httplib::Request& req) {
  try {
    json body = json::parse(req.body.empty() ? "{}" : req.body);
    if (!body.is_object()) throw Error(Errc::kValidation, "body is not an object");
    return body;
  } catch (const json::parse_error& e) {
    throw Error(Errc::kValidation, std::string("body: ") + e.what());
  }
}

const UserProfile& require_user(const ProjectState& state,
                                const std::string& user_id) {
  const auto it = state.users.find(user_id);
  if (it == state.users.end())
    throw Error(Errc::kUnknownUser, "no user " + user_id);
  return it->second;
}

json quest_view(const Quest& q) {
  json steps = json::array();
  for (std::size_t i = 0; i < q.steps.size(); ++i) {
    const Challenge& step = q.steps[i];
    json view;
    if (step.state == ChallengeState::kDormant) {
      view = {{"state", to_string(step.state)}};
    } else {
      view = to_json(step);
    }
    view["index"] = i;
    steps.push_back(std::move(view));
  }
  return {{"questId", q.quest_id},
          {"owner", q.owner_user_id},
          {"kind", to_string(q.kind)},
          {"locus", q.locus},
          {"state", to_string(q.state)},
          {"currentIndex", q.current_index},
          {"prospectivePoints", q.prospective_points()},
          {"awardedPoints", q.awarded_points},
          {"createdBuild", q.created_build},
          {"closedBuild", q.closed_build ? json(*q.closed_build) : json(nullptr)},
          {"rejectionReason",
           q.rejection_reason ? json(*q.rejection_reason) : json(nullptr)},
          {"steps", std::move(steps)}};
}

json user_view(const UserProfile& u) {
  return {{"userId", u.user_id},
          {"displayName", u.display_name},
          {"avatarId", u.avatar_id},
          {"gitNames", u.git_identities},
          {"notificationsEnabled", u.notifications_enabled},
          {"score", u.score}};
}

json rows_view(const std::vector<LeaderboardRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(to_json(row));
  return out;
}

LeaderboardMode mode_of(const httplib::Request& req) {
  const auto mode = parse_leaderboard_mode(
      req.has_param("mode") ? req.get_param_value("mode") : "");
  if (!mode) throw Error(Errc::kValidation, "mode must be user or team");
  return *mode;
}

}  // namespace

struct ApiServer::Impl {
  ProjectStore store;
  std::string token;
  std::filesystem::path static_dir;
  httplib::Server server;
  std::mutex writers_mutex;
  std::map<std::string, std::unique_ptr<std::mutex>> writers;

  Impl(std::filesystem::path data_dir, std::string api_token,
       std::filesystem::path static_root)
      : store(std::move(data_dir)),
        token(std::move(api_token)),
        static_dir(std::move(static_root)) {
    routes();
  }

  std::mutex& writer(const std::string& project_id) {
    std::lock_guard<std::mutex> guard(writers_mutex);
    auto& slot = writers[project_id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
  }

  ProjectState load(const std::string& project_id) {
    try {
      validate_project_id(project_id);
    } catch (const Error&) {
      throw Error(Errc::kNotFound, "no project " + project_id);
    }
    if (!store.exists(project_id))
      throw Error(Errc::kNotFound, "no project " + project_id);
    return store.load(project_id);
  }

  ProjectState mutate(const std::string& project_id,
                      const std::function<ProjectState(const ProjectState&)>& fn) {
    std::lock_guard<std::mutex> guard(writer(project_id));
    load(project_id);
    const auto lock = store.lock(project_id, /*blocking=*/true);
    const ProjectState state = store.load(project_id);
    ProjectState next = fn(state);
    store.save(next, state.event_counter);
    return next;
  }

  bool authorized(const httplib::Request& req) const {
    const std::string bearer = req.get_header_value("Authorization");
    if (bearer == "Bearer " + token) return true;
    return req.get_header_value("X-Api-Token") == token;
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  Handler guarded(Handler handler) {
    return [handler = std::move(handler)](const httplib::Request& req,
                                          httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send_error(res, status_for(e.code()), to_string(e.code()), e.what());
      } catch (const json::exception& e) {
        send_error(res, 422, "Validation", e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "Internal", e.what());
      }
    };
  }

  void get(const std::string& pattern, Handler handler) {
    server.Get(kPrefix + pattern, guarded(std::move(handler)));
  }
  void post(const std::string& pattern, Handler handler) {
    server.Post(kPrefix + pattern, guarded(std::move(handler)));
  }

  void routes() {
    server.set_pre_routing_handler(
        [this](const httplib::Request& req, httplib::Response& res) {
          res.set_header("Access-Control-Allow-Origin", "*");
          res.set_header("Access-Control-Allow-Headers",
                         "Authorization, Content-Type, X-Api-Token");
          res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
          if (req.method == "OPTIONS") {
            res.status = 204;
            return httplib::Server::HandlerResponse::Handled;
          }
          if (req.path.starts_with(kPrefix) && !authorized(req)) {
            send_error(res, 401, "Unauthorized", "missing or wrong API token");
            return httplib::Server::HandlerResponse::Handled;
          }
          return httplib::Server::HandlerResponse::Unhandled;
        });
    if (!static_dir.empty()) server.set_mount_point("/", static_dir.string());

    get("/projects", [this](const auto&, auto& res) {
      json out = json::array();
      for (const auto& id : store.project_ids()) {
        const ProjectState state = store.load(id);
        out.push_back({{"projectId", id},
                       {"groupId", state.config.group_id
                                       ? json(*state.config.group_id)
                                       : json(nullptr)},
                       {"leaderboardEnabled", state.config.leaderboard_enabled},
                       {"statisticsEnabled", state.config.statistics_enabled}});
      }
      send(res, 200, out);
    });

    get(R"(/projects/([^/]+)/leaderboard)", [this](const auto& req, auto& res) {
      const ProjectState state = load(req.matches[1]);
      send(res, 200, rows_view(leaderboard(state, mode_of(req))));
    });

    get(R"(/groups/([^/]+)/leaderboard)", [this](const auto& req, auto& res) {
      const std::string group = req.matches[1];
      const LeaderboardMode mode = mode_of(req);
      std::vector<ProjectState> members;
      for (const auto& id : store.project_ids()) {
        ProjectState state = store.load(id);
        if (state.config.group_id == group) members.push_back(std::move(state));
      }
      if (members.empty()) throw Error(Errc::kNotFound, "no group " + group);
      send(res, 200, rows_view(group_leaderboard(members, mode)));
    });

    get(R"(/projects/([^/]+)/users)", [this](const auto& req, auto& res) {
      const ProjectState state = load(req.matches[1]);
      json out = json::array();
      for (const auto& [_, user] : state.users) out.push_back(user_view(user));
      send(res, 200, out);
    });

    get(R"(/projects/([^/]+)/users/([^/]+)/challenges)",
        [this](const auto& req, auto& res) {
          const ProjectState state = load(req.matches[1]);
          const std::string uid = req.matches[2];
          require_user(state, uid);
          json open = json::array();
          json history = json::array();
          for (const auto& c : state.challenges) {
            if (c.owner_user_id != uid) continue;
            (c.state == ChallengeState::kOpen ? open : history)
                .push_back(to_json(c));
          }
          send(res, 200, {{"open", open}, {"history", history}});
        });

    post(R"(/projects/([^/]+)/challenges/([^/]+)/reject)",
         [this](const auto& req, auto& res) {
           const json body = parse_body(req);
           const std::string reason = body.value("reason", "");
           const std::string cid = req.matches[2];
           ProjectState next =
               mutate(req.matches[1], [&](const ProjectState& state) {
                 return challenges::reject_challenge(state, cid, reason,
                                                     now_seconds());
               });
           send(res, 200, to_json(*find_challenge(next, cid)));
         });

    get(R"(/projects/([^/]+)/users/([^/]+)/quests)",
        [this](const auto& req, auto& res) {
          const ProjectState state = load(req.matches[1]);
          const std::string uid = req.matches[2];
          require_user(state, uid);
          json active = json::array();
          json history = json::array();
          for (const auto& q : state.quests) {
            if (q.owner_user_id != uid) continue;
            (q.state == QuestState::kActive ? active : history)
                .push_back(quest_view(q));
          }
          send(res, 200, {{"active", active}, {"history", history}});
        });

    post(R"(/projects/([^/]+)/quests/([^/]+)/reject)",
         [this](const auto& req, auto& res) {
           const json body = parse_body(req);
           const std::string reason = body.value("reason", "");
           const std::string qid = req.matches[2];
           ProjectState next =
               mutate(req.matches[1], [&](const ProjectState& state) {
                 return quests::reject_quest(state, qid, reason, now_seconds());
               });
           send(res, 200, quest_view(*find_quest(next, qid)));
         });

    get(R"(/projects/([^/]+)/users/([^/]+)/achievements)",
        [this](const auto& req, auto& res) {
          const ProjectState state = load(req.matches[1]);
          const std::string uid = req.matches[2];
          require_user(state, uid);
          const auto registry =
              achievements::load_registry(state.config.achievement_registry);
          std::map<std::string, AchievementCompletion> done;
          if (const auto it = state.achievements.find(uid);
              it != state.achievements.end())
            done = it->second;

          json completed = json::array();
          for (const auto& [id, completion] : done) {
            json entry;
            if (const auto* a = registry.find(id)) {
              entry = achievements::to_json(*a);
            } else {
              entry = {{"id", id}, {"title", id}, {"description", ""}};
            }
            entry["completedAt"] = completion.timestamp;
            entry["completedBuild"] = completion.build_id;
            completed.push_back(std::move(entry));
          }
          json unsolved = json::array();
          int hidden = 0;
          for (const auto& a : registry.entries()) {
            if (done.contains(a.id)) continue;
            if (a.secret) {
              ++hidden;
            } else {
              unsolved.push_back(achievements::to_json(a));
            }
          }
          send(res, 200,
               {{"completed", completed},
                {"unsolved", unsolved},
                {"secretHidden", hidden}});
        });

    post(R"(/projects/([^/]+)/users/([^/]+)/avatar)",
         [this](const auto& req, auto& res) {
           const json body = parse_body(req);
           if (!body.contains("avatarId") || !body["avatarId"].is_number_integer())
             throw Error(Errc::kValidation, "avatarId must be an integer");
           const int avatar = body["avatarId"].get<int>();
           const std::string uid = req.matches[2];
           const ProjectState next =
               mutate(req.matches[1], [&](const ProjectState& state) {
                 return set_avatar(state, uid, avatar);
               });
           send(res, 200, user_view(next.users.at(uid)));
         });

    post(R"(/projects/([^/]+)/users/([^/]+)/identities)",
         [this](const auto& req, auto& res) {
           const json body = parse_body(req);
           if (!body.contains("gitNames") || !body["gitNames"].is_array())
             throw Error(Errc::kValidation, "gitNames must be a list");
           const auto names = body["gitNames"].get<std::set<std::string>>();
           const std::string uid = req.matches[2];
           const ProjectState next =
               mutate(req.matches[1], [&](const ProjectState& state) {
                 return set_identities(state, uid, names);
               });
           send(res, 200, user_view(next.users.at(uid)));
         });

    post(R"(/projects/([^/]+)/users/([^/]+)/notifications)",
         [this](const auto& req, auto& res) {
           const json body = parse_body(req);
           if (!body.contains("enabled") || !body["enabled"].is_boolean())
             throw Error(Errc::kValidation, "enabled must be a boolean");
           const bool enabled = body["enabled"].get<bool>();
           const std::string uid = req.matches[2];
           const ProjectState next =
               mutate(req.matches[1], [&](const ProjectState& state) {
                 require_user(state, uid);
                 ProjectState changed = state;
                 changed.users.at(uid).notifications_enabled = enabled;
                 return changed;
               });
           send(res, 200, user_view(next.users.at(uid)));
         });

    get(R"(/projects/([^/]+)/events)", [this](const auto& req, auto& res) {
      const ProjectState state = load(req.matches[1]);
      std::int64_t since = 0;
      if (req.has_param("since")) {
        const std::string text = req.get_param_value("since");
        try {
          std::size_t used = 0;
          since = std::stoll(text, &used);
          if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::logic_error&) {
          throw Error(Errc::kValidation, "since must be an event id");
        }
      }
      json events = json::array();
      for (const auto& e : state.event_log) {
        if (e.event_id > since) events.push_back(to_json(e));
      }
      send(res, 200, {{"events", events}, {"lastEventId", state.event_counter}});
    });

    get(R"(/projects/([^/]+)/statistics)", [this](const auto& req, auto& res) {
      send(res, 200, export_statistics(load(req.matches[1])));
    });

    post(R"(/projects/([^/]+)/reset)", [this](const auto& req, auto& res) {
      const ProjectState next = mutate(
          req.matches[1],
          [](const ProjectState& state) { return reset_project(state); });
      send(res, 200, {{"projectId", next.config.project_id}, {"reset", true}});
    });
  }
};

ApiServer::ApiServer(std::filesystem::path data_dir, std::string token,
                     std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(std::move(data_dir), std::move(token),
                                   std::move(static_dir))) {
  if (impl_->token.empty())
    throw Error(Errc::kValidation, "the API token must not be empty");
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int ApiServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool ApiServer::serve() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace testquest::service
