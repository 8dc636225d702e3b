// SPDX-License-Identifier: Apache-2.0
#include "abridge/service/session.hpp"

#include "abridge/core/errors.hpp"

namespace abridge::service {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::created:
      return "created";
    case Phase::analyzed:
      return "analyzed";
    case Phase::summarized:
      return "summarized";
  }
  return "created";
}

Phase phase_from_string(std::string_view name) {
  if (name == "created") return Phase::created;
  if (name == "analyzed") return Phase::analyzed;
  if (name == "summarized") return Phase::summarized;
  throw InputError("unknown phase '" + std::string(name) + "'");
}

nlohmann::json session_view(const Session& s) {
  auto reports = nlohmann::json::array();
  for (const auto& [version, report] : s.reports) reports.push_back({{"version", version}, {"report", report}});
  return {
      {"id", s.id},
      {"phase", to_string(s.phase)},
      {"created_at", s.docset.created_at_ms()},
      {"documents", s.docset.documents()},
      {"triples", s.triples},
      {"clusters", s.clusters},
      {"graph", graph::export_graph_json(s.graph)},
      {"summaries", s.summaries},
      {"reports", std::move(reports)},
      {"warnings", s.warnings},
  };
}

nlohmann::json session_snapshot(const Session& s) {
  auto doc = session_view(s);
  doc["dialogue"] = s.dialogue;
  doc["next_request_id"] = s.next_request_id;
  return doc;
}

Session session_from_snapshot(const nlohmann::json& j) {
  try {
    Session s;
    j.at("id").get_to(s.id);
    s.phase = phase_from_string(j.at("phase").get<std::string>());
    s.docset = core::DocumentSet::restore(j.at("documents").get<std::vector<core::Document>>(),
                                          j.at("created_at").get<std::int64_t>());
    j.at("triples").get_to(s.triples);
    j.at("clusters").get_to(s.clusters);
    s.graph = graph::build_graph(s.triples, s.clusters);
    j.at("summaries").get_to(s.summaries);
    for (const auto& r : j.at("reports")) {
      s.reports.emplace(r.at("version").get<std::uint64_t>(), r.at("report").get<evaluation::EvaluationReport>());
    }
    j.at("warnings").get_to(s.warnings);
    j.at("dialogue").get_to(s.dialogue);
    j.at("next_request_id").get_to(s.next_request_id);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed session snapshot: ") + e.what());
  }
}

}  // namespace abridge::service
