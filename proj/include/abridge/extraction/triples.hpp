// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/core/model.hpp"
#include "abridge/llm/gateway.hpp"

namespace abridge::extraction {

struct Mention {
  std::string surface;
  std::uint64_t frequency = 0;

  bool operator==(const Mention&) const = default;
};

/// Surfaces that refer to one entity. Mentions keep the order in which they
/// were first grouped; `representative` is one of their surfaces.
struct EntityCluster {
  std::vector<Mention> mentions;
  std::string representative;

  static EntityCluster singleton(std::string surface, std::uint64_t frequency = 0);

  bool has_surface(std::string_view surface) const;

  /// "Jane" for singletons, "[Tom's wife, Jane]" otherwise.
  std::string display() const;

  bool operator==(const EntityCluster&) const = default;
};

struct Triple {
  EntityCluster subject;
  std::string relation;
  EntityCluster object;
  std::string source_line;

  bool operator==(const Triple&) const = default;
};

void to_json(nlohmann::json& j, const Mention& m);
void from_json(const nlohmann::json& j, Mention& m);
void to_json(nlohmann::json& j, const EntityCluster& c);
void from_json(const nlohmann::json& j, EntityCluster& c);
void to_json(nlohmann::json& j, const Triple& t);
void from_json(const nlohmann::json& j, Triple& t);

// ---------------------------------------------------------------------------
// Line grammar: `* <Subject|Relation|Object>`

struct TripleFields {
  std::string subject;
  std::string relation;
  std::string object;

  bool operator==(const TripleFields&) const = default;
};

struct LineParse {
  std::optional<TripleFields> fields;
  /// Set when the line looked like a triple but was rejected.
  std::optional<std::string> rejection;
};

/// Classifies one line. Blank lines, section headers such as "[Relation Triples]"
/// and prose without `<`, `>` or `|` are neither accepted nor rejected.
LineParse parse_triple_line(std::string_view line);

/// "* <S|R|O>"
std::string format_triple_line(std::string_view subject, std::string_view relation, std::string_view object);

struct TripleParse {
  std::vector<Triple> triples;  // singleton clusters, frequency 0
  std::vector<core::Warning> warnings;
};

TripleParse parse_triple_lines(std::string_view text, std::string_view source = "extract_triples");

/// Splits "[A+B+C]" into its trimmed members; any other field yields itself.
std::vector<std::string> split_group(std::string_view field);

// ---------------------------------------------------------------------------
// Frequencies

/// Case-insensitive whole-token occurrence counts over the concatenated bodies.
class FrequencyIndex {
 public:
  explicit FrequencyIndex(const core::DocumentSet& docset);

  std::uint64_t count(std::string_view surface) const;

  /// Offset of the first whole-token occurrence, or npos.
  std::size_t first_occurrence(std::string_view surface) const;

 private:
  std::u32string corpus_;  // lowercased
};

/// Highest frequency wins; then the longer surface; then the earlier first
/// occurrence in document order; then the lexicographically smaller surface.
std::string select_representative(const EntityCluster& cluster, const FrequencyIndex& index);
std::string select_representative(const EntityCluster& cluster, const core::DocumentSet& docset);

// ---------------------------------------------------------------------------
// Pipeline stages

struct ExtractionResult {
  std::vector<Triple> triples;
  std::vector<core::Warning> warnings;
};

/// One extraction prompt per document; triples are concatenated in document
/// order and deduplicated case-insensitively (first occurrence kept).
/// Throws ExtractionEmptyError when no document yields a triple.
ExtractionResult extract_triples(const llm::LlmGateway& gateway, const core::DocumentSet& docset);

struct ClusteringResult {
  std::vector<Triple> triples;
  std::vector<EntityCluster> clusters;
  std::vector<core::Warning> warnings;
};

/// Sends the coreference prompt once over all triples and merges the returned groups.
ClusteringResult cluster_entities(const llm::LlmGateway& gateway, const core::DocumentSet& docset,
                                  const std::vector<Triple>& triples);

/// The deterministic half of cluster_entities: merges the `[A+B]` groups in
/// `response` transitively and rewrites every triple onto its merged cluster.
/// An unparsable response leaves singletons and records a warning.
ClusteringResult apply_clustering_response(std::string_view response, const core::DocumentSet& docset,
                                           const std::vector<Triple>& triples);

}  // namespace abridge::extraction
