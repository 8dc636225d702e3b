// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace abridge::core {

struct Document {
  std::string id;
  std::optional<std::string> title;
  std::string body;  // normalized, non-empty
};

struct DocumentInput {
  std::optional<std::string> title;
  std::string body;
};

/// Ordered input articles of one session. Order never changes after creation.
class DocumentSet {
 public:
  using Clock = std::chrono::system_clock;

  DocumentSet() = default;

  /// Normalizes every body and assigns ids "doc-1", "doc-2", ...
  /// Throws InputError when `inputs` is empty or a body normalizes to nothing.
  static DocumentSet create(const std::vector<DocumentInput>& inputs,
                            Clock::time_point created_at = Clock::now());

  /// Rebuilds a set from already-normalized documents (snapshot reload).
  static DocumentSet restore(std::vector<Document> documents, std::int64_t created_at_ms);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }
  std::int64_t created_at_ms() const noexcept { return created_at_ms_; }

  /// Bodies joined by a blank line, in document order.
  std::string concatenated() const;

 private:
  std::vector<Document> documents_;
  std::int64_t created_at_ms_ = 0;
};

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::size_t start = 0;  // scalar-value offsets, [start, end)
  std::size_t end = 0;

  bool operator==(const Sentence&) const = default;
};

struct Provenance {
  enum class Kind { automatic, refinement };
  Kind kind = Kind::automatic;
  std::uint64_t request_id = 0;  // meaningful for refinement only

  static Provenance automatic() { return {}; }
  static Provenance refinement(std::uint64_t id) { return {Kind::refinement, id}; }

  bool operator==(const Provenance&) const = default;
};

struct Summary {
  std::uint64_t version = 0;
  std::string text;
  std::vector<Sentence> sentences;
  Provenance provenance;

  /// Segments `text` and stamps the version/provenance.
  static Summary make(std::uint64_t version, std::string text, Provenance provenance);

  bool operator==(const Summary&) const = default;
};

/// Non-fatal issue recorded while parsing model output.
struct Warning {
  std::string source;  // stage that produced it, e.g. "extract_triples"
  std::string line;
  std::string reason;

  bool operator==(const Warning&) const = default;
};

void to_json(nlohmann::json& j, const Document& d);
void from_json(const nlohmann::json& j, Document& d);
void to_json(nlohmann::json& j, const Sentence& s);
void from_json(const nlohmann::json& j, Sentence& s);
void to_json(nlohmann::json& j, const Provenance& p);
void from_json(const nlohmann::json& j, Provenance& p);
void to_json(nlohmann::json& j, const Summary& s);
void from_json(const nlohmann::json& j, Summary& s);
void to_json(nlohmann::json& j, const Warning& w);
void from_json(const nlohmann::json& j, Warning& w);

}  // namespace abridge::core
