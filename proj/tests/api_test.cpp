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

#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "support.hpp"
#include "testquest/service.hpp"

namespace testquest::service {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr char kToken[] = "s3cret";

class ApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    repo_ = dir_ / "repo";
    data_ = dir_ / "data";
    testing::init_repo(repo_);
    testing::write_text(repo_ / "src/main/java/com/example/Calculator.java",
                        "class C {}\n");
    testing::write_text(repo_ / "src/main/java/com/example/Parser.java", "class P {}\n");
    testing::commit_all(repo_, "Alice Dev", "start");

    ProjectStore store(data_);
    ProjectState state = store.load_or_create("demo");
    state = set_identities(state, "alice", {"Alice Dev"});
    state = set_identities(state, "bob", {"Bob"});
    store.save(state, state.event_counter);

    RunOptions o;
    o.project_id = "demo";
    o.data_dir = data_;
    o.repo = repo_;
    o.seed = 3;
    o.timestamp = 1700000000;
    o.coverage_csv = testing::fixture("reports/coverage.csv").string();
    o.coverage_xml = testing::fixture("reports/coverage.xml").string();
    o.mutation_report = testing::fixture("reports/mutations.json").string();
    o.smell_report = testing::fixture("reports/smells.json").string();
    o.test_results = {(testing::fixture("reports") / "TEST-*.xml").string()};
    std::ostringstream out;
    ASSERT_EQ(run_build(o, out).exit_code, kExitOk) << out.str();

    server_ = std::make_unique<ApiServer>(data_, kToken);
    port_ = server_->bind_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->serve(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_default_headers({{"Authorization", std::string("Bearer ") + kToken}});
    client_->set_read_timeout(10);
  }

  void TearDown() override {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Result get(const std::string& path) { return client_->Get("/api/v1" + path); }

  httplib::Result post(const std::string& path, const json& body) {
    return client_->Post("/api/v1" + path, body.dump(), "application/json");
  }

  static json body(const httplib::Result& r) { return json::parse(r->body); }

  std::string first_open_challenge() {
    auto r = get("/projects/demo/users/alice/challenges");
    return body(r)["open"][0]["challengeId"].get<std::string>();
  }

  testing::TempDir dir_;
  fs::path repo_;
  fs::path data_;
  std::unique_ptr<ApiServer> server_;
  int port_ = -1;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ApiTest, RequiresTheToken) {
  httplib::Client anonymous("127.0.0.1", port_);
  auto r = anonymous.Get("/api/v1/projects");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 401);
  anonymous.set_default_headers({{"X-Api-Token", kToken}});
  r = anonymous.Get("/api/v1/projects");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  anonymous.set_default_headers({{"Authorization", "Bearer wrong"}});
  EXPECT_EQ(anonymous.Get("/api/v1/projects")->status, 401);
}

TEST_F(ApiTest, ListsChallengesWithSnippetsAndHistory) {
  auto r = get("/projects/demo/users/alice/challenges");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200);
  const json doc = body(r);
  ASSERT_EQ(doc["open"].size(), 3u);
  EXPECT_TRUE(doc["history"].empty());
  for (const auto& c : doc["open"]) {
    EXPECT_TRUE(c.contains("snippet"));
    EXPECT_TRUE(c.contains("description"));
    EXPECT_EQ(c["owner"], "alice");
  }
  EXPECT_EQ(get("/projects/demo/users/zed/challenges")->status, 404);
  EXPECT_EQ(get("/projects/nope/users/alice/challenges")->status, 404);
}

TEST_F(ApiTest, RejectionNeedsAReasonAndHappensOnce) {
  const std::string id = first_open_challenge();
  auto r = post("/projects/demo/challenges/" + id + "/reject", {{"reason", ""}});
  EXPECT_EQ(r->status, 422);
  r = post("/projects/demo/challenges/" + id + "/reject", {{"reason", "   "}});
  EXPECT_EQ(r->status, 422);
  r = post("/projects/demo/challenges/" + id + "/reject", {{"reason", "legacy code"}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["state"], "Rejected");
  EXPECT_EQ(body(r)["rejectionReason"], "legacy code");
  r = post("/projects/demo/challenges/" + id + "/reject", {{"reason", "again"}});
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(post("/projects/demo/challenges/c999/reject", {{"reason", "x"}})->status, 404);

  const json history = body(get("/projects/demo/users/alice/challenges"))["history"];
  ASSERT_EQ(history.size(), 1u);
  EXPECT_EQ(history[0]["challengeId"], id);
  EXPECT_EQ(ProjectStore(data_).load("demo").challenges.size(), 3u);
}

TEST_F(ApiTest, QuestsHideDormantSteps) {
  auto r = get("/projects/demo/users/alice/quests");
  ASSERT_EQ(r->status, 200);
  const json doc = body(r);
  ASSERT_EQ(doc["active"].size(), 1u);
  const json& quest = doc["active"][0];
  EXPECT_TRUE(quest.contains("prospectivePoints"));
  ASSERT_EQ(quest["steps"].size(), 3u);
  EXPECT_TRUE(quest["steps"][0].contains("description"));
  for (int i : {1, 2}) {
    EXPECT_EQ(quest["steps"][i].size(), 2u);
    EXPECT_EQ(quest["steps"][i]["state"], "Dormant");
  }
  const std::string qid = quest["questId"];
  EXPECT_EQ(post("/projects/demo/quests/" + qid + "/reject", json::object())->status, 422);
  r = post("/projects/demo/quests/" + qid + "/reject", {{"reason", "later"}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["state"], "Rejected");
  EXPECT_EQ(post("/projects/demo/quests/" + qid + "/reject", {{"reason", "x"}})->status, 409);
}

TEST_F(ApiTest, AchievementsHideUnsolvedSecrets) {
  auto r = get("/projects/demo/users/alice/achievements");
  ASSERT_EQ(r->status, 200);
  const json doc = body(r);
  EXPECT_EQ(doc["secretHidden"], 4);
  for (const auto& a : doc["unsolved"]) EXPECT_FALSE(a["secret"].get<bool>());
  bool first_test = false;
  for (const auto& a : doc["completed"]) {
    if (a["id"] == "first-test") first_test = true;
    EXPECT_EQ(a["completedBuild"], 1);
  }
  EXPECT_TRUE(first_test);
  EXPECT_EQ(doc["completed"].size() + doc["unsolved"].size() + 4, 30u);
}

TEST_F(ApiTest, ProfileEndpoints) {
  EXPECT_EQ(post("/projects/demo/users/alice/avatar", {{"avatarId", 51}})->status, 422);
  EXPECT_EQ(post("/projects/demo/users/alice/avatar", {{"avatarId", "x"}})->status, 422);
  auto r = post("/projects/demo/users/alice/avatar", {{"avatarId", 12}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["avatarId"], 12);
  EXPECT_EQ(post("/projects/demo/users/zed/avatar", {{"avatarId", 3}})->status, 404);

  r = post("/projects/demo/users/carol/identities", {{"gitNames", {"Carol"}}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["gitNames"], json::array({"Carol"}));
  EXPECT_EQ(post("/projects/demo/users/carol/identities", {{"gitNames", {"Bob"}}})->status,
            422);
  r = post("/projects/demo/users/alice/notifications", {{"enabled", true}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["notificationsEnabled"], true);

  const auto state = ProjectStore(data_).load("demo");
  EXPECT_EQ(state.users.at("alice").avatar_id, 12);
  EXPECT_TRUE(state.users.contains("carol"));
}

TEST_F(ApiTest, LeaderboardEventsStatisticsAndReset) {
  auto r = get("/projects/demo/leaderboard?mode=user");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r).size(), 2u);
  EXPECT_EQ(get("/projects/demo/leaderboard?mode=team")->status, 200);
  EXPECT_EQ(get("/projects/demo/leaderboard?mode=club")->status, 422);
  EXPECT_EQ(get("/groups/none/leaderboard")->status, 404);

  r = get("/projects/demo/events?since=0");
  ASSERT_EQ(r->status, 200);
  const json all = body(r);
  const std::int64_t last = all["lastEventId"];
  EXPECT_EQ(all["events"].size(), static_cast<std::size_t>(last));
  r = get("/projects/demo/events?since=" + std::to_string(last - 2));
  EXPECT_EQ(body(r)["events"].size(), 2u);
  EXPECT_EQ(get("/projects/demo/events?since=abc")->status, 422);

  EXPECT_EQ(get("/projects/demo/statistics")->status, 403);

  r = post("/projects/demo/reset", json::object());
  ASSERT_EQ(r->status, 200);
  EXPECT_TRUE(body(get("/projects/demo/users/alice/challenges"))["open"].empty());
  EXPECT_EQ(body(get("/projects/demo/users")).size(), 2u);
}

TEST_F(ApiTest, AnswersPreflightWithoutAToken) {
  httplib::Client anonymous("127.0.0.1", port_);
  auto r = anonymous.Options("/api/v1/projects");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST(Webhook, PostsTheDigestDocument) {
  httplib::Server receiver;
  std::string received;
  receiver.Post("/hook", [&](const httplib::Request& req, httplib::Response& res) {
    received = req.body;
    res.status = 204;
  });
  receiver.Post("/fail", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });
  const int port = receiver.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread thread([&] { receiver.listen_after_bind(); });
  receiver.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  EXPECT_EQ(post_webhook(base + "/hook", {{"digests", json::array({1, 2})}}), std::nullopt);
  EXPECT_EQ(json::parse(received)["digests"].size(), 2u);
  EXPECT_TRUE(post_webhook(base + "/fail", json::object()).has_value());
  EXPECT_TRUE(post_webhook("https://example.com/hook", json::object()).has_value());

  receiver.stop();
  thread.join();
}

}  // namespace
}  // namespace testquest::service
