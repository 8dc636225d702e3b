// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <regex>
#include <thread>

#include <httplib.h>

#include "abridge/service/config.hpp"
#include "abridge/service/http_api.hpp"
#include "abridge/service/session_service.hpp"
#include "support/service_driver.hpp"
#include "support/test_support.hpp"

using namespace abridge;
using namespace abridge::service;

namespace {

struct Rig {
  testing::TempDir dir{"abridge-service"};
  std::shared_ptr<testing::SwitchableProvider> provider;
  std::shared_ptr<llm::LlmGateway> gateway;
  std::unique_ptr<SessionService> service;

  Rig() {
    auto scripted =
        std::make_shared<llm::ScriptedProvider>(llm::Playbook::load(testing::fixture("tomjane/playbook.json")));
    provider = std::make_shared<testing::SwitchableProvider>(scripted);
    gateway = std::make_shared<llm::LlmGateway>(provider, llm::CompletionParams{}, [](std::chrono::milliseconds) {});
    restart();
  }

  void restart() {
    service.reset();
    service = std::make_unique<SessionService>(gateway, dir.path());
  }

  nlohmann::json tom_jane_body() const {
    return {{"documents",
             {{{"title", "One"}, {"body", testing::read_file(testing::fixture("tomjane/article1.txt"))}},
              {{"body", testing::read_file(testing::fixture("tomjane/article2.txt"))}}}}};
  }

  std::string create() {
    const auto r = service->create_session(tom_jane_body());
    REQUIRE(r.status == 201);
    return r.body.at("session_id").get<std::string>();
  }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("create validates document limits") {
  Rig rig;
  const auto ok = rig.service->create_session(rig.tom_jane_body());
  CHECK(ok.status == 201);
  CHECK(std::regex_match(ok.body.at("session_id").get<std::string>(), std::regex("[0-9a-f]{32}")));

  CHECK(rig.service->create_session({{"documents", nlohmann::json::array()}}).status == 400);
  nlohmann::json many = {{"documents", nlohmann::json::array()}};
  for (int i = 0; i < 17; ++i) many["documents"].push_back({{"body", "Doc " + std::to_string(i)}});
  const auto too_many = rig.service->create_session(many);
  CHECK(too_many.status == 400);
  CHECK(contains(too_many.body.at("error").at("message").get<std::string>(), "16"));
  many["documents"].erase(16);
  CHECK(rig.service->create_session(many).status == 201);

  const auto huge = rig.service->create_session({{"documents", {{{"body", std::string(200'001, 'x')}}}}});
  CHECK(huge.status == 400);
  CHECK(rig.service->create_session({{"documents", {{{"body", std::string(200'000, 'x')}}}}}).status == 201);
  CHECK(rig.service->create_session({{"documents", {{{"body", "   "}}}}}).status == 400);
  CHECK(rig.service->create_session({{"documents", {{{"text", "x"}}}}}).status == 400);
  CHECK(rig.service->create_session(nlohmann::json::array()).status == 400);
}

TEST_CASE("analyze merges the Tom/Jane cluster and guards its phase") {
  Rig rig;
  const auto id = rig.create();
  const auto r = rig.service->analyze(id);
  REQUIRE(r.status == 200);
  bool found = false;
  for (const auto& c : r.body.at("clusters")) {
    std::set<std::string> surfaces;
    for (const auto& m : c.at("mentions")) surfaces.insert(m.at("surface").get<std::string>());
    if (surfaces == std::set<std::string>{"Tom's wife", "Jane"}) {
      found = true;
      CHECK(c.at("representative") == "Jane");
    }
  }
  CHECK(found);
  CHECK(r.body.at("triples").at(1).at("subject").at("representative") == "Jane");
  CHECK(r.body.at("graph").at("nodes").size() == 4);
  CHECK(r.body.contains("warnings"));
  CHECK(rig.service->analyze(id).status == 409);
  CHECK(rig.service->get(id).body.at("phase") == "analyzed");
}

TEST_CASE("provider outage leaves the session untouched") {
  Rig rig;
  const auto id = rig.create();
  const auto before = rig.service->get(id).body.dump();
  const auto file_before = testing::read_file(rig.dir.path() / (id + ".json"));
  rig.provider->set_down(true);
  const auto r = rig.service->analyze(id);
  CHECK(r.status == 502);
  CHECK(r.body.at("error").at("code") == "provider_error");
  CHECK(rig.service->get(id).body.dump() == before);
  CHECK(testing::read_file(rig.dir.path() / (id + ".json")) == file_before);
  rig.provider->set_down(false);
  CHECK(rig.service->analyze(id).status == 200);
}

TEST_CASE("summarize, refine and evaluate") {
  Rig rig;
  const auto id = rig.create();
  CHECK(rig.service->summarize(id).status == 409);
  CHECK(rig.service->refine(id, {{"include", {0}}}).status == 409);
  CHECK(rig.service->evaluate(id, {}).status == 409);
  REQUIRE(rig.service->analyze(id).status == 200);

  const auto s0 = rig.service->summarize(id);
  REQUIRE(s0.status == 200);
  CHECK(s0.body.at("summary").at("version") == 0);
  CHECK(s0.body.at("summary").at("text") ==
        "Tom is married to Jane. Jane is aged 30 and works as a nurse in Boston.");
  CHECK(rig.service->summarize(id).status == 409);
  CHECK(rig.service->summarize("missing").status == 404);

  const auto v1 = rig.service->refine(id, {{"include", {0}}});
  REQUIRE(v1.status == 200);
  CHECK(v1.body.at("summary").at("version") == 1);
  CHECK(v1.body.at("summary").at("provenance") == nlohmann::json{{"kind", "refinement"}, {"request_id", 1}});
  CHECK(rig.service->refine(id, {{"include", {0}}, {"exclude", {0}}}).status == 400);
  CHECK(rig.service->refine(id, {{"include", {99}}}).status == 400);
  CHECK(rig.service->refine(id, nlohmann::json::object()).status == 400);
  CHECK(rig.service->refine(id, {{"include", "zero"}}).status == 400);
  const auto v2 = rig.service->refine(id, {{"freeform", "Shorter please."}});
  REQUIRE(v2.status == 200);
  CHECK(v2.body.at("summary").at("version") == 2);
  CHECK(v2.body.at("summary").at("provenance").at("request_id") == 2);

  const auto report = rig.service->evaluate(id, {});
  REQUIRE(report.status == 200);
  CHECK(report.body.contains("consistency"));
  CHECK(report.body.at("facts").size() == 4);
  rig.provider->set_down(true);
  const auto cached = rig.service->evaluate(id, {{"version", 2}});
  CHECK(cached.status == 200);
  CHECK(cached.body.dump() == report.body.dump());
  CHECK(rig.service->evaluate(id, {{"version", 0}}).status == 502);
  rig.provider->set_down(false);
  CHECK(rig.service->evaluate(id, {{"version", 99}}).status == 404);
  CHECK(rig.service->evaluate(id, {{"version", -1}}).status == 400);

  const auto v0 = rig.service->evaluate(id, {{"version", 0}});
  REQUIRE(v0.status == 200);
  CHECK(v0.body.at("flagged_sentences") == nlohmann::json::array({1}));
  CHECK(v0.body.at("consistency") == 0.75);
}

TEST_CASE("snapshots survive restarts; corrupt files are skipped with a warning") {
  Rig rig;
  const auto a = rig.create();
  const auto b = rig.create();
  REQUIRE(rig.service->analyze(a).status == 200);
  REQUIRE(rig.service->summarize(a).status == 200);
  REQUIRE(rig.service->refine(a, {{"exclude", {2}}}).status == 200);
  const auto ga = rig.service->get(a).body.dump();
  const auto gb = rig.service->get(b).body.dump();
  {
    std::ofstream junk(rig.dir.path() / "deadbeef.json");
    junk << "{not json";
  }
  rig.restart();
  CHECK(rig.service->get(a).body.dump() == ga);
  CHECK(rig.service->get(b).body.dump() == gb);
  REQUIRE(rig.service->startup_warnings().size() == 1);
  CHECK(contains(rig.service->startup_warnings()[0], "deadbeef"));
  CHECK(rig.service->get("deadbeef").status == 404);
  // Dialogue persisted: a further refinement continues the version sequence.
  const auto v2 = rig.service->refine(a, {{"freeform", "More."}});
  REQUIRE(v2.status == 200);
  CHECK(v2.body.at("summary").at("version") == 2);
  CHECK(v2.body.at("summary").at("provenance").at("request_id") == 2);
}

TEST_CASE("missing data_dir is created") {
  testing::TempDir root;
  const auto nested = root.path() / "a" / "b";
  auto gateway = std::make_shared<llm::LlmGateway>(
      std::make_shared<llm::ScriptedProvider>(llm::Playbook{}), llm::CompletionParams{},
      [](std::chrono::milliseconds) {});
  SessionService service(gateway, nested);
  CHECK(std::filesystem::is_directory(nested));
}

TEST_CASE("randomized state machine over the service") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    testing::TempDir dir;
    const auto report = testing::run_service_state_machine(seed, 200, 20, dir.path());
    CAPTURE(seed);
    CHECK(report.calls == 200);
    CHECK_MESSAGE(report.violations.empty(), (report.violations.empty() ? "" : report.violations.front()));
  }
}

TEST_CASE("concurrent requests across and within sessions") {
  Rig rig;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(rig.create());
  std::vector<std::jthread> threads;
  std::atomic<int> analyzed{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      const auto& id = ids[static_cast<std::size_t>(t) % ids.size()];
      if (rig.service->analyze(id).status == 200) ++analyzed;
      for (int k = 0; k < 20; ++k) CHECK(rig.service->get(id).status == 200);
    });
  }
  threads.clear();
  CHECK(analyzed == 4);
  for (const auto& id : ids) CHECK(rig.service->get(id).body.at("phase") == "analyzed");
}

TEST_CASE("HTTP routes, error bodies, CORS and request logs") {
  Rig rig;
  httplib::Server server;
  std::vector<std::string> logs;
  std::mutex log_mutex;
  HttpOptions options;
  options.log_sink = [&](const std::string& line) {
    std::lock_guard lock(log_mutex);
    logs.push_back(line);
  };
  bind_routes(server, *rig.service, options);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", rig.tom_jane_body().dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const auto id = nlohmann::json::parse(created->body).at("session_id").get<std::string>();

  auto analyzed = client.Post("/sessions/" + id + "/analyze", "", "application/json");
  REQUIRE(analyzed);
  CHECK(analyzed->status == 200);
  auto summarized = client.Post("/sessions/" + id + "/summarize", "", "application/json");
  REQUIRE(summarized);
  CHECK(summarized->status == 200);
  auto refined = client.Post("/sessions/" + id + "/refine", R"({"include":[0]})", "application/json");
  REQUIRE(refined);
  CHECK(refined->status == 200);
  auto evaluated = client.Post("/sessions/" + id + "/evaluate", R"({"version":1})", "application/json");
  REQUIRE(evaluated);
  CHECK(evaluated->status == 200);
  auto got = client.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(nlohmann::json::parse(got->body) == rig.service->get(id).body);

  auto bad_json = client.Post("/sessions/" + id + "/refine", "{oops", "application/json");
  REQUIRE(bad_json);
  CHECK(bad_json->status == 400);
  CHECK(nlohmann::json::parse(bad_json->body).at("error").at("code") == "invalid_json");
  auto missing = client.Get("/sessions/ffffffffffffffffffffffffffffffff");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto preflight = client.Options("/sessions");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);

  server.stop();
  worker.join();
  std::lock_guard lock(log_mutex);
  REQUIRE(logs.size() >= 8);
  const auto first = nlohmann::json::parse(logs.front());
  CHECK(first.at("method") == "POST");
  CHECK(first.at("path") == "/sessions");
  CHECK(first.at("status") == 201);
  CHECK(first.contains("duration_ms"));
}

TEST_CASE("service config file") {
  testing::TempDir dir;
  {
    std::ofstream out(dir.path() / "config.json");
    out << R"({"listen": {"host": "0.0.0.0", "port": 9090}, "data_dir": "sessions",
               "provider": {"kind": "scripted", "playbook": "play.json"}, "parallelism": 2})";
  }
  const auto c = load_service_config(dir.path() / "config.json");
  CHECK(c.host == "0.0.0.0");
  CHECK(c.port == 9090);
  CHECK(c.data_dir == dir.path() / "sessions");
  CHECK(c.provider.playbook == dir.path() / "play.json");
  CHECK(c.parallelism == 2);
  CHECK_THROWS_AS(load_service_config(dir.path() / "absent.json"), InputError);
  CHECK_THROWS_AS(service_config_from_json({{"parallelism", 0}}, {}), InputError);
  CHECK_THROWS_AS(service_config_from_json({{"provider", {{"kind", "carrier-pigeon"}}}}, {}), InputError);
}
