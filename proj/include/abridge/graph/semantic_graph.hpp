// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abridge/extraction/triples.hpp"

namespace abridge::graph {

struct GraphNode {
  std::string id;  // representative surface
  extraction::EntityCluster cluster;
  std::uint64_t weight = 1;  // sum of mention frequencies, at least 1
  std::size_t degree = 0;    // in + out edges
};

struct GraphEdge {
  std::string from;
  std::string to;
  std::string label;
  std::size_t triple_ref = 0;  // first triple that produced the edge
};

struct SemanticGraph {
  std::vector<GraphNode> nodes;  // order of first appearance in the triple list
  std::vector<GraphEdge> edges;

  const GraphNode* find_node(const std::string& id) const;
};

/// One node per cluster used by a triple; edges run subject -> object and are
/// deduplicated on (from, case-folded label, to). `clusters` supplies the
/// canonical cluster for each representative when available.
SemanticGraph build_graph(const std::vector<extraction::Triple>& triples,
                          const std::vector<extraction::EntityCluster>& clusters);

/// Display radius: round(16 + 10 ln(weight)).
int node_size(std::uint64_t weight);

/// {nodes:[{id,label,weight,size,mentions[]}], edges:[{source,target,label}]} with sorted keys.
nlohmann::json export_graph_json(const SemanticGraph& graph);

/// Inverse of export_graph_json up to mention frequencies and triple references.
SemanticGraph import_graph_json(const nlohmann::json& doc);

std::string export_dot(const SemanticGraph& graph);

}  // namespace abridge::graph
