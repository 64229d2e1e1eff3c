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

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "testquest/error.hpp"
#include "testquest/service.hpp"

namespace {

using testquest::Errc;
using testquest::Error;
namespace svc = testquest::service;

std::string default_data_dir() {
  if (const char* env = std::getenv("TESTQUEST_DATA_DIR")) return env;
  return ".testquest";
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::kStateLocked: return svc::kExitLocked;
    case Errc::kCorrupt:
    case Errc::kSchemaMismatch: return svc::kExitCorrupt;
    case Errc::kValidation:
    case Errc::kAmbiguousIdentity:
    case Errc::kMalformedDocument: return svc::kExitUsage;
    default: return svc::kExitFailure;
  }
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return svc::kExitFailure;
  }
}

svc::ApiServer* g_server = nullptr;

extern "C" void handle_stop(int) {
  if (g_server) g_server->stop();
}

bool split_bind(const std::string& bind, std::string& host, int& port) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    host = bind;
    return true;
  }
  host = bind.substr(0, colon);
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    return false;
  }
  return port > 0 && port < 65536;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"testquest: gamified testing engine for CI builds"};
  app.require_subcommand(1);

  // run
  svc::RunOptions run;
  std::string data_dir = default_data_dir();
  std::string build_status = "success";
  std::string config_path;
  int commit_count = 50;
  std::uint64_t seed = 0;
  std::int64_t timestamp = 0;
  std::string repo = ".";
  auto* run_cmd = app.add_subcommand("run", "Process one finished build");
  run_cmd->add_option("--project", run.project_id, "Project id")->required();
  run_cmd->add_option("--data-dir", data_dir, "State directory");
  run_cmd->add_option("--repo", repo, "Git working copy");
  run_cmd->add_option("--build-status", build_status, "Build outcome")
      ->check(CLI::IsMember({"success", "failure"}));
  run_cmd->add_option("--coverage-csv", run.coverage_csv, "Class coverage CSV");
  run_cmd->add_option("--coverage-xml", run.coverage_xml, "Line coverage XML");
  run_cmd->add_option("--mutation-report", run.mutation_report,
                      "Mutation report JSON");
  run_cmd->add_option("--smell-report", run.smell_report, "Smell report JSON");
  run_cmd->add_option("--test-results", run.test_results,
                      "Test result XML file or glob (repeatable)");
  auto* commit_opt = run_cmd->add_option("--commit-count", commit_count,
                                         "Commits to inspect")
                         ->check(CLI::PositiveNumber);
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Random seed");
  auto* ts_opt = run_cmd->add_option("--timestamp", timestamp,
                                     "Build time, seconds since epoch");
  run_cmd->add_option("--config", config_path, "Project file (JSON)");
  run_cmd->add_flag("--print-digests", run.print_digests,
                    "Print notification digests");
  run_cmd->add_option("--webhook", run.webhook, "POST digests to this URL");

  // serve
  std::string bind = "127.0.0.1:8080";
  int port = 0;
  std::string token;
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--bind", bind, "host[:port]");
  serve_cmd->add_option("--port", port, "Port, overrides --bind");
  serve_cmd->add_option("--data-dir", data_dir, "State directory");
  serve_cmd->add_option("--token", token, "API token")
      ->envname("TESTQUEST_API_TOKEN");
  serve_cmd->add_option("--static", static_dir, "Dashboard files served at /");

  // reset
  std::string project;
  auto* reset_cmd = app.add_subcommand("reset", "Reset a project's game state");
  reset_cmd->add_option("--project", project, "Project id")->required();
  reset_cmd->add_option("--data-dir", data_dir, "State directory");

  // export-stats
  std::string output;
  auto* stats_cmd =
      app.add_subcommand("export-stats", "Write the anonymized statistics");
  stats_cmd->add_option("--project", project, "Project id")->required();
  stats_cmd->add_option("--data-dir", data_dir, "State directory");
  stats_cmd->add_option("--output", output, "File, default stdout");

  // configure
  auto* configure_cmd =
      app.add_subcommand("configure", "Apply a project file to a project");
  configure_cmd->add_option("--project", project, "Project id")->required();
  configure_cmd->add_option("--data-dir", data_dir, "State directory");
  configure_cmd->add_option("--config", config_path, "Project file (JSON)")
      ->required();

  // leaderboard
  std::string group;
  std::string mode = "user";
  bool as_json = false;
  auto* board_cmd = app.add_subcommand("leaderboard", "Print a leaderboard");
  auto* board_project = board_cmd->add_option("--project", project, "Project id");
  board_cmd->add_option("--group", group, "Group id")->excludes(board_project);
  board_cmd->add_option("--mode", mode, "user or team")
      ->check(CLI::IsMember({"user", "team"}));
  board_cmd->add_option("--data-dir", data_dir, "State directory");
  board_cmd->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return svc::kExitUsage;
  }

  if (*run_cmd) {
    run.data_dir = data_dir;
    run.repo = repo;
    run.build_succeeded = build_status == "success";
    if (*commit_opt) run.commit_count = commit_count;
    if (*seed_opt) run.seed = seed;
    if (*ts_opt) run.timestamp = timestamp;
    if (!config_path.empty()) run.config = config_path;
    return svc::run_build(run, std::cout).exit_code;
  }

  if (*serve_cmd) {
    if (token.empty()) {
      std::cerr << "error: --token (or TESTQUEST_API_TOKEN) is required\n";
      return svc::kExitUsage;
    }
    std::string host;
    int bind_port = 8080;
    if (!split_bind(bind, host, bind_port)) {
      std::cerr << "error: bad --bind " << bind << "\n";
      return svc::kExitUsage;
    }
    if (port > 0) bind_port = port;
    svc::ApiServer server(data_dir, token, static_dir);
    g_server = &server;
    std::signal(SIGINT, handle_stop);
    std::signal(SIGTERM, handle_stop);
    std::cout << "serving " << data_dir << " on http://" << host << ":"
              << bind_port << "/api/v1" << std::endl;
    const bool ok = server.listen(host, bind_port);
    g_server = nullptr;
    if (!ok) {
      std::cerr << "error: cannot bind " << host << ":" << bind_port << "\n";
      return svc::kExitFailure;
    }
    return svc::kExitOk;
  }

  svc::ProjectStore store(data_dir);

  if (*reset_cmd) {
    return guarded([&] {
      svc::validate_project_id(project);
      auto lock = store.lock(project, false);
      const auto state = store.load(project);
      const auto next = testquest::reset_project(state);
      store.save(next, state.event_counter);
      std::cout << "reset " << project << "\n";
      return svc::kExitOk;
    });
  }

  if (*stats_cmd) {
    return guarded([&] {
      svc::validate_project_id(project);
      const auto text = testquest::export_statistics(store.load(project)).dump(2);
      if (output.empty()) {
        std::cout << text << "\n";
      } else {
        std::ofstream out(output);
        out << text << "\n";
        if (!out) throw Error(Errc::kIoFailure, "cannot write " + output);
      }
      return svc::kExitOk;
    });
  }

  if (*configure_cmd) {
    return guarded([&] {
      svc::validate_project_id(project);
      std::ifstream in(config_path);
      if (!in) throw Error(Errc::kNotFound, "cannot read " + config_path);
      nlohmann::json document;
      try {
        document = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kValidation, config_path + ": " + e.what());
      }
      auto lock = store.lock(project, false);
      const auto state = store.load_or_create(project);
      const auto next = svc::apply_project_file(state, document);
      store.save(next, state.event_counter);
      std::cout << "configured " << project << "\n";
      return svc::kExitOk;
    });
  }

  if (*board_cmd) {
    return guarded([&] {
      const auto board_mode = *svc::parse_leaderboard_mode(mode);
      std::vector<svc::LeaderboardRow> rows;
      if (!group.empty()) {
        std::vector<testquest::ProjectState> members;
        for (const auto& id : store.project_ids()) {
          auto state = store.load(id);
          if (state.config.group_id == group) members.push_back(std::move(state));
        }
        if (members.empty())
          throw Error(Errc::kNotFound, "no projects in group " + group);
        rows = svc::group_leaderboard(members, board_mode);
      } else {
        if (project.empty())
          throw Error(Errc::kValidation, "--project or --group is required");
        rows = svc::leaderboard(store.load(project), board_mode);
      }
      if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : rows) out.push_back(svc::to_json(row));
        std::cout << out.dump(2) << "\n";
        return svc::kExitOk;
      }
      int rank = 0;
      for (const auto& row : rows) {
        std::cout << ++rank << ". " << row.display_name << " (" << row.subject
                  << ") score=" << row.score
                  << " challenges=" << row.completed_challenges
                  << " quests=" << row.completed_quests
                  << " achievements=" << row.completed_achievements << "\n";
      }
      return svc::kExitOk;
    });
  }
  return svc::kExitUsage;
}
