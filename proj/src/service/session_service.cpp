// SPDX-License-Identifier: Apache-2.0
#include "abridge/service/session_service.hpp"

#include <algorithm>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/graph/semantic_graph.hpp"
#include "abridge/summarization/summarizer.hpp"

namespace abridge::service {

namespace {

// Thrown inside stages to short-circuit with a specific HTTP status.
struct HttpFailure {
  int status;
  std::string code;
  std::string message;
};

ApiResponse error_response(int status, const std::string& code, const std::string& message) {
  return ApiResponse{status, {{"error", {{"code", code}, {"message", message}}}}};
}

std::string random_id() {
  static std::mutex mutex;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mutex);
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << engine() << std::setw(16) << engine();
  return out.str();
}

void require_phase(const Session& s, Phase expected, const char* action) {
  if (s.phase != expected) {
    throw HttpFailure{409, "wrong_phase",
                      std::string(action) + " requires phase '" + std::string(to_string(expected)) +
                          "' but session is '" + std::string(to_string(s.phase)) + "'"};
  }
}

std::set<std::size_t> index_set(const nlohmann::json& body, const char* key) {
  std::set<std::size_t> out;
  if (!body.contains(key) || body.at(key).is_null()) return out;
  const auto& arr = body.at(key);
  if (!arr.is_array()) throw ValidationError(std::string("'") + key + "' must be an array of triple indices");
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ValidationError(std::string("'") + key + "' must contain non-negative integers");
    }
    out.insert(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

SessionService::SessionService(std::shared_ptr<const llm::LlmGateway> gateway, std::filesystem::path data_dir,
                               ServiceOptions options)
    : gateway_(std::move(gateway)), store_(std::move(data_dir)), options_(std::move(options)) {
  if (!options_.id_generator) options_.id_generator = random_id;
  for (auto& session : store_.load_all(startup_warnings_)) {
    auto slot = std::make_shared<Slot>();
    auto id = session.id;
    slot->session = std::move(session);
    sessions_.emplace(std::move(id), std::move(slot));
  }
}

std::shared_ptr<SessionService::Slot> SessionService::find(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ApiResponse SessionService::create_session(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("documents") || !body.at("documents").is_array()) {
    return error_response(400, "invalid_request", "body must be {\"documents\": [{\"title\"?, \"body\"}]}");
  }
  const auto& docs = body.at("documents");
  if (docs.empty()) return error_response(400, "invalid_request", "at least one document is required");
  if (docs.size() > options_.max_documents) {
    return error_response(400, "too_many_documents",
                          "at most " + std::to_string(options_.max_documents) + " documents per session");
  }

  Session session;
  try {
    std::vector<core::DocumentInput> inputs;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& d = docs[i];
      if (!d.is_object() || !d.contains("body") || !d.at("body").is_string()) {
        throw ValidationError("document " + std::to_string(i + 1) + " needs a string 'body'");
      }
      core::DocumentInput input{std::nullopt, d.at("body").get<std::string>()};
      if (d.contains("title") && !d.at("title").is_null()) {
        if (!d.at("title").is_string()) throw ValidationError("document titles must be strings");
        input.title = d.at("title").get<std::string>();
      }
      inputs.push_back(std::move(input));
    }
    session.docset = core::DocumentSet::create(inputs);
    for (const auto& doc : session.docset.documents()) {
      if (core::scalar_length(doc.body) > options_.max_document_chars) {
        throw ValidationError(doc.id + " exceeds " + std::to_string(options_.max_document_chars) + " characters");
      }
    }
  } catch (const Error& e) {
    return error_response(400, "invalid_request", e.what());
  }

  session.id = options_.id_generator();
  auto slot = std::make_shared<Slot>();
  slot->session = std::move(session);
  {
    std::unique_lock lock(registry_mutex_);
    if (sessions_.contains(slot->session.id)) return error_response(500, "id_collision", "session id collision");
    try {
      store_.save(slot->session);
    } catch (const Error& e) {
      return error_response(500, "persistence_failed", e.what());
    }
    sessions_.emplace(slot->session.id, slot);
  }
  return ApiResponse{201, {{"session_id", slot->session.id}}};
}

ApiResponse SessionService::mutate(const std::string& id, const std::function<nlohmann::json(Session&)>& stage) {
  const auto slot = find(id);
  if (!slot) return error_response(404, "not_found", "unknown session '" + id + "'");
  std::unique_lock lock(slot->mutex);
  Session draft = slot->session;
  nlohmann::json result;
  try {
    result = stage(draft);
  } catch (const HttpFailure& f) {
    return error_response(f.status, f.code, f.message);
  } catch (const ProviderError& e) {
    return error_response(502, "provider_error", e.what());
  } catch (const EmptySummaryError& e) {
    return error_response(502, "provider_error", e.what());
  } catch (const ValidationError& e) {
    return error_response(400, "invalid_request", e.what());
  } catch (const InputError& e) {
    return error_response(400, "invalid_request", e.what());
  } catch (const PreconditionError& e) {
    return error_response(409, "wrong_phase", e.what());
  } catch (const TemplateError& e) {
    return error_response(500, "template_error", e.what());
  }
  try {
    store_.save(draft);
  } catch (const Error& e) {
    return error_response(500, "persistence_failed", e.what());
  }
  slot->session = std::move(draft);
  return ApiResponse{200, std::move(result)};
}

ApiResponse SessionService::analyze(const std::string& id) {
  return mutate(id, [this](Session& s) {
    require_phase(s, Phase::created, "analyze");
    auto extracted = extraction::extract_triples(*gateway_, s.docset);
    auto clustered = extraction::cluster_entities(*gateway_, s.docset, extracted.triples);
    s.triples = std::move(clustered.triples);
    s.clusters = std::move(clustered.clusters);
    s.graph = graph::build_graph(s.triples, s.clusters);
    std::vector<core::Warning> stage_warnings = std::move(extracted.warnings);
    stage_warnings.insert(stage_warnings.end(), clustered.warnings.begin(), clustered.warnings.end());
    s.warnings.insert(s.warnings.end(), stage_warnings.begin(), stage_warnings.end());
    s.phase = Phase::analyzed;
    return nlohmann::json{{"triples", s.triples},
                          {"clusters", s.clusters},
                          {"graph", graph::export_graph_json(s.graph)},
                          {"warnings", stage_warnings}};
  });
}

ApiResponse SessionService::summarize(const std::string& id) {
  return mutate(id, [this](Session& s) {
    require_phase(s, Phase::analyzed, "summarize");
    auto result = summarization::summarize_auto(*gateway_, s.docset);
    s.summaries.push_back(result.summary);
    s.dialogue = std::move(result.dialogue);
    s.warnings.insert(s.warnings.end(), result.warnings.begin(), result.warnings.end());
    s.phase = Phase::summarized;
    return nlohmann::json{{"summary", result.summary}, {"warnings", result.warnings}};
  });
}

ApiResponse SessionService::refine(const std::string& id, const nlohmann::json& body) {
  return mutate(id, [this, &body](Session& s) {
    require_phase(s, Phase::summarized, "refine");
    if (!body.is_object()) throw ValidationError("body must be a JSON object");
    summarization::RefinementRequest request;
    request.id = s.next_request_id;
    request.include = index_set(body, "include");
    request.exclude = index_set(body, "exclude");
    if (body.contains("freeform") && !body.at("freeform").is_null()) {
      if (!body.at("freeform").is_string()) throw ValidationError("'freeform' must be a string");
      request.freeform = body.at("freeform").get<std::string>();
    }
    auto result =
        summarization::refine_summary(*gateway_, s.dialogue, request, s.triples, s.summaries.back().version);
    s.summaries.push_back(result.summary);
    s.dialogue = std::move(result.dialogue);
    s.warnings.insert(s.warnings.end(), result.warnings.begin(), result.warnings.end());
    s.next_request_id += 1;
    return nlohmann::json{{"summary", result.summary}, {"warnings", result.warnings}};
  });
}

ApiResponse SessionService::evaluate(const std::string& id, const nlohmann::json& body) {
  return mutate(id, [this, &body](Session& s) {
    if (s.summaries.empty()) require_phase(s, Phase::summarized, "evaluate");
    std::uint64_t version = s.summaries.back().version;
    if (body.is_object() && body.contains("version") && !body.at("version").is_null()) {
      const auto& v = body.at("version");
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ValidationError("'version' must be a non-negative integer");
      }
      version = v.get<std::uint64_t>();
    }
    const auto summary = std::find_if(s.summaries.begin(), s.summaries.end(),
                                      [&](const core::Summary& x) { return x.version == version; });
    if (summary == s.summaries.end()) {
      throw HttpFailure{404, "not_found", "summary version " + std::to_string(version) + " does not exist"};
    }
    if (const auto cached = s.reports.find(version); cached != s.reports.end()) {
      return nlohmann::json(cached->second);
    }
    auto result = evaluation::evaluate(*gateway_, s.docset, *summary, options_.evaluation);
    s.warnings.insert(s.warnings.end(), result.warnings.begin(), result.warnings.end());
    s.reports.emplace(version, result.report);
    return nlohmann::json(result.report);
  });
}

ApiResponse SessionService::get(const std::string& id) const {
  const auto slot = find(id);
  if (!slot) return error_response(404, "not_found", "unknown session '" + id + "'");
  std::shared_lock lock(slot->mutex);
  return ApiResponse{200, session_view(slot->session)};
}

ApiResponse SessionService::list() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(registry_mutex_);
    for (const auto& [id, slot] : sessions_) slots.push_back(slot);
  }
  auto out = nlohmann::json::array();
  for (const auto& slot : slots) {
    std::shared_lock lock(slot->mutex);
    out.push_back({{"id", slot->session.id}, {"phase", to_string(slot->session.phase)}});
  }
  return ApiResponse{200, {{"sessions", std::move(out)}}};
}

}  // namespace abridge::service
