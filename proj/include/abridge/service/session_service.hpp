// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/evaluation/factual.hpp"
#include "abridge/llm/gateway.hpp"
#include "abridge/service/session.hpp"
#include "abridge/service/session_store.hpp"

namespace abridge::service {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

struct ServiceOptions {
  evaluation::EvaluationOptions evaluation;
  std::size_t max_documents = 16;
  std::size_t max_document_chars = 200'000;
  /// Produces fresh session ids; defaults to 128 random bits in hex.
  std::function<std::string()> id_generator;
};

/// Transport-independent implementation of the session REST API. Requests on
/// different sessions run concurrently; mutations of one session are serialized
/// and commit only after the new snapshot is on disk.
class SessionService {
 public:
  SessionService(std::shared_ptr<const llm::LlmGateway> gateway, std::filesystem::path data_dir,
                 ServiceOptions options = {});

  ApiResponse create_session(const nlohmann::json& body);
  ApiResponse analyze(const std::string& id);
  ApiResponse summarize(const std::string& id);
  ApiResponse refine(const std::string& id, const nlohmann::json& body);
  ApiResponse evaluate(const std::string& id, const nlohmann::json& body);
  ApiResponse get(const std::string& id) const;
  ApiResponse list() const;

  /// Problems met while reloading snapshots at construction.
  const std::vector<std::string>& startup_warnings() const noexcept { return startup_warnings_; }

 private:
  struct Slot {
    mutable std::shared_mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;

  /// Runs `stage` on a copy of the session under its exclusive lock; saves and
  /// commits the copy only when the stage succeeds.
  ApiResponse mutate(const std::string& id, const std::function<nlohmann::json(Session&)>& stage);

  std::shared_ptr<const llm::LlmGateway> gateway_;
  SessionStore store_;
  ServiceOptions options_;
  std::vector<std::string> startup_warnings_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace abridge::service
