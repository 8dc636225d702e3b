// SPDX-License-Identifier: Apache-2.0
#include "abridge/service/http_api.hpp"

#include <chrono>

#include <httplib.h>

namespace abridge::service {

namespace {

constexpr const char* kId = R"(/sessions/([0-9A-Za-z_-]+))";

nlohmann::json parse_body(const httplib::Request& req, bool& ok) {
  ok = true;
  if (req.body.empty()) return nlohmann::json::object();
  auto parsed = nlohmann::json::parse(req.body, nullptr, false);
  if (parsed.is_discarded()) ok = false;
  return parsed;
}

void write(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

ApiResponse bad_json() {
  return ApiResponse{400, {{"error", {{"code", "invalid_json"}, {"message", "request body is not valid JSON"}}}}};
}

}  // namespace

void bind_routes(httplib::Server& server, SessionService& service, HttpOptions options) {
  using Handler = std::function<ApiResponse(const httplib::Request&)>;
  auto wrap = [options](Handler handler) {
    return [options, handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
      const auto started = std::chrono::steady_clock::now();
      ApiResponse api;
      try {
        api = handler(req);
      } catch (const std::exception& e) {
        api = ApiResponse{500, {{"error", {{"code", "internal"}, {"message", e.what()}}}}};
      }
      write(res, api);
      if (!options.cors_origin.empty()) res.set_header("Access-Control-Allow-Origin", options.cors_origin);
      if (options.log_sink) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        nlohmann::json line{{"method", req.method},
                            {"path", req.path},
                            {"status", api.status},
                            {"duration_ms", static_cast<double>(elapsed) / 1000.0}};
        if (api.status >= 400 && api.body.contains("error")) line["error"] = api.body["error"]["code"];
        options.log_sink(line.dump());
      }
    };
  };

  server.Post("/sessions", wrap([&service](const httplib::Request& req) {
                bool ok = false;
                const auto body = parse_body(req, ok);
                return ok ? service.create_session(body) : bad_json();
              }));
  server.Get("/sessions", wrap([&service](const httplib::Request&) { return service.list(); }));
  server.Get(kId, wrap([&service](const httplib::Request& req) { return service.get(req.matches[1]); }));
  server.Post(std::string(kId) + "/analyze",
              wrap([&service](const httplib::Request& req) { return service.analyze(req.matches[1]); }));
  server.Post(std::string(kId) + "/summarize",
              wrap([&service](const httplib::Request& req) { return service.summarize(req.matches[1]); }));
  server.Post(std::string(kId) + "/refine", wrap([&service](const httplib::Request& req) {
                bool ok = false;
                const auto body = parse_body(req, ok);
                return ok ? service.refine(req.matches[1], body) : bad_json();
              }));
  server.Post(std::string(kId) + "/evaluate", wrap([&service](const httplib::Request& req) {
                bool ok = false;
                const auto body = parse_body(req, ok);
                return ok ? service.evaluate(req.matches[1], body) : bad_json();
              }));

  if (!options.cors_origin.empty()) {
    server.Options(R"(/sessions.*)", [origin = options.cors_origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }
}

}  // namespace abridge::service
