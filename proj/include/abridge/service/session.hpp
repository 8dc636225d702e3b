// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/core/model.hpp"
#include "abridge/evaluation/factual.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/graph/semantic_graph.hpp"
#include "abridge/summarization/summarizer.hpp"

namespace abridge::service {

/// Pipeline position. Only ever moves forward.
enum class Phase { created = 0, analyzed = 1, summarized = 2 };

std::string_view to_string(Phase phase);
Phase phase_from_string(std::string_view name);

struct Session {
  std::string id;
  Phase phase = Phase::created;
  core::DocumentSet docset;
  std::vector<extraction::Triple> triples;
  std::vector<extraction::EntityCluster> clusters;
  graph::SemanticGraph graph;
  std::vector<core::Summary> summaries;
  std::map<std::uint64_t, evaluation::EvaluationReport> reports;
  std::vector<core::Warning> warnings;
  summarization::DialogueState dialogue;
  std::uint64_t next_request_id = 1;
};

/// Public view served by GET /sessions/{id}.
nlohmann::json session_view(const Session& session);

/// Persisted form: the public view plus the refinement dialogue and request counter.
nlohmann::json session_snapshot(const Session& session);

/// Inverse of session_snapshot. The graph is rebuilt from triples and clusters.
Session session_from_snapshot(const nlohmann::json& snapshot);

}  // namespace abridge::service
