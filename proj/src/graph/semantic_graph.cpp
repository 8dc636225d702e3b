// SPDX-License-Identifier: Apache-2.0
#include "abridge/graph/semantic_graph.hpp"

#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"

namespace abridge::graph {

const GraphNode* SemanticGraph::find_node(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

SemanticGraph build_graph(const std::vector<extraction::Triple>& triples,
                          const std::vector<extraction::EntityCluster>& clusters) {
  std::map<std::string, const extraction::EntityCluster*> canonical;
  for (const auto& c : clusters) canonical.emplace(c.representative, &c);

  SemanticGraph graph;
  std::map<std::string, std::size_t> node_index;
  auto node_for = [&](const extraction::EntityCluster& cluster) -> GraphNode& {
    const auto& id = cluster.representative;
    if (const auto it = node_index.find(id); it != node_index.end()) return graph.nodes[it->second];
    const auto it = canonical.find(id);
    const auto& source = it != canonical.end() ? *it->second : cluster;
    std::uint64_t weight = 0;
    for (const auto& m : source.mentions) weight += m.frequency;
    node_index.emplace(id, graph.nodes.size());
    graph.nodes.push_back(GraphNode{id, source, std::max<std::uint64_t>(weight, 1), 0});
    return graph.nodes.back();
  };

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    auto& from = node_for(t.subject);
    const auto from_id = from.id;
    auto& to = node_for(t.object);
    const auto to_id = to.id;
    if (!seen.emplace(from_id, core::lowercase(t.relation), to_id).second) continue;
    graph.edges.push_back(GraphEdge{from_id, to_id, t.relation, i});
    graph.nodes[node_index.at(from_id)].degree += 1;
    graph.nodes[node_index.at(to_id)].degree += 1;
  }
  return graph;
}

int node_size(std::uint64_t weight) {
  const auto w = static_cast<double>(std::max<std::uint64_t>(weight, 1));
  return static_cast<int>(std::lround(16.0 + 10.0 * std::log(w)));
}

nlohmann::json export_graph_json(const SemanticGraph& graph) {
  auto nodes = nlohmann::json::array();
  for (const auto& n : graph.nodes) {
    auto mentions = nlohmann::json::array();
    for (const auto& m : n.cluster.mentions) mentions.push_back(m.surface);
    nodes.push_back({{"id", n.id}, {"label", n.id}, {"weight", n.weight}, {"size", node_size(n.weight)},
                     {"mentions", std::move(mentions)}});
  }
  auto edges = nlohmann::json::array();
  for (const auto& e : graph.edges) edges.push_back({{"source", e.from}, {"target", e.to}, {"label", e.label}});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

SemanticGraph import_graph_json(const nlohmann::json& doc) {
  SemanticGraph graph;
  try {
    for (const auto& n : doc.at("nodes")) {
      GraphNode node;
      node.id = n.at("id").get<std::string>();
      node.weight = n.at("weight").get<std::uint64_t>();
      node.cluster.representative = node.id;
      for (const auto& m : n.at("mentions")) node.cluster.mentions.push_back({m.get<std::string>(), 0});
      graph.nodes.push_back(std::move(node));
    }
    std::size_t ref = 0;
    for (const auto& e : doc.at("edges")) {
      GraphEdge edge{e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                     e.at("label").get<std::string>(), ref++};
      for (auto& n : graph.nodes) {
        if (n.id == edge.from) ++n.degree;
        if (n.id == edge.to) ++n.degree;
      }
      graph.edges.push_back(std::move(edge));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
  for (const auto& e : graph.edges) {
    if (graph.find_node(e.from) == nullptr || graph.find_node(e.to) == nullptr) {
      throw InputError("graph edge references an unknown node");
    }
  }
  return graph;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const SemanticGraph& graph) {
  std::string out = "digraph G {\n";
  for (const auto& n : graph.nodes) out += "  " + dot_quote(n.id) + ";\n";
  for (const auto& e : graph.edges) {
    out += "  " + dot_quote(e.from) + " -> " + dot_quote(e.to) + " [label=" + dot_quote(e.label) + "];\n";
  }
  return out + "}\n";
}

}  // namespace abridge::graph
