// SPDX-License-Identifier: Apache-2.0
#include "abridge/core/model.hpp"

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"

namespace abridge::core {

DocumentSet DocumentSet::create(const std::vector<DocumentInput>& inputs, Clock::time_point created_at) {
  if (inputs.empty()) throw InputError("a document set needs at least one document");
  DocumentSet set;
  set.created_at_ms_ =
      std::chrono::duration_cast<std::chrono::milliseconds>(created_at.time_since_epoch()).count();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto body = normalize_text(inputs[i].body);
    if (body.empty()) throw InputError("document " + std::to_string(i + 1) + " is empty");
    std::optional<std::string> title;
    if (inputs[i].title) title = normalize_text(*inputs[i].title);
    set.documents_.push_back(Document{"doc-" + std::to_string(i + 1), std::move(title), std::move(body)});
  }
  return set;
}

DocumentSet DocumentSet::restore(std::vector<Document> documents, std::int64_t created_at_ms) {
  if (documents.empty()) throw InputError("a document set needs at least one document");
  DocumentSet set;
  set.documents_ = std::move(documents);
  set.created_at_ms_ = created_at_ms;
  return set;
}

std::string DocumentSet::concatenated() const {
  std::string out;
  for (const auto& doc : documents_) {
    if (!out.empty()) out += "\n\n";
    out += doc.body;
  }
  return out;
}

Summary Summary::make(std::uint64_t version, std::string text, Provenance provenance) {
  Summary s;
  s.version = version;
  s.sentences = split_sentences(text);
  s.text = std::move(text);
  s.provenance = provenance;
  return s;
}

void to_json(nlohmann::json& j, const Document& d) {
  j = nlohmann::json{{"id", d.id}, {"body", d.body}};
  if (d.title) j["title"] = *d.title;
}

void from_json(const nlohmann::json& j, Document& d) {
  j.at("id").get_to(d.id);
  j.at("body").get_to(d.body);
  if (j.contains("title")) d.title = j.at("title").get<std::string>();
}

void to_json(nlohmann::json& j, const Sentence& s) {
  j = nlohmann::json{{"index", s.index}, {"text", s.text}, {"start", s.start}, {"end", s.end}};
}

void from_json(const nlohmann::json& j, Sentence& s) {
  j.at("index").get_to(s.index);
  j.at("text").get_to(s.text);
  j.at("start").get_to(s.start);
  j.at("end").get_to(s.end);
}

void to_json(nlohmann::json& j, const Provenance& p) {
  if (p.kind == Provenance::Kind::automatic) {
    j = nlohmann::json{{"kind", "automatic"}};
  } else {
    j = nlohmann::json{{"kind", "refinement"}, {"request_id", p.request_id}};
  }
}

void from_json(const nlohmann::json& j, Provenance& p) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "automatic") {
    p = Provenance::automatic();
  } else if (kind == "refinement") {
    p = Provenance::refinement(j.at("request_id").get<std::uint64_t>());
  } else {
    throw InputError("unknown provenance kind '" + kind + "'");
  }
}

void to_json(nlohmann::json& j, const Summary& s) {
  j = nlohmann::json{
      {"version", s.version}, {"text", s.text}, {"sentences", s.sentences}, {"provenance", s.provenance}};
}

void from_json(const nlohmann::json& j, Summary& s) {
  j.at("version").get_to(s.version);
  j.at("text").get_to(s.text);
  j.at("sentences").get_to(s.sentences);
  j.at("provenance").get_to(s.provenance);
}

void to_json(nlohmann::json& j, const Warning& w) {
  j = nlohmann::json{{"source", w.source}, {"line", w.line}, {"reason", w.reason}};
}

void from_json(const nlohmann::json& j, Warning& w) {
  j.at("source").get_to(w.source);
  j.at("line").get_to(w.line);
  j.at("reason").get_to(w.reason);
}

}  // namespace abridge::core
