// SPDX-License-Identifier: Apache-2.0
#include <map>

#include "abridge/core/text.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/llm/prompts.hpp"

namespace abridge::extraction {

namespace {

// Union-find over case-folded surfaces, remembering registration order and
// the preferred spelling of each surface.
class SurfaceUnion {
 public:
  std::size_t add(const std::string& surface) {
    auto key = core::lowercase(surface);
    if (const auto it = ids_.find(key); it != ids_.end()) return it->second;
    const auto id = spellings_.size();
    ids_.emplace(std::move(key), id);
    spellings_.push_back(surface);
    parent_.push_back(id);
    return id;
  }

  std::size_t find(std::size_t id) {
    while (parent_[id] != id) {
      parent_[id] = parent_[parent_[id]];
      id = parent_[id];
    }
    return id;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  std::size_t id_of(const std::string& surface) const { return ids_.at(core::lowercase(surface)); }
  const std::string& spelling(std::size_t id) const { return spellings_[id]; }
  std::size_t size() const { return spellings_.size(); }

 private:
  std::map<std::string, std::size_t> ids_;
  std::vector<std::string> spellings_;
  std::vector<std::size_t> parent_;
};

std::string serialize_triples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    if (!out.empty()) out += '\n';
    out += format_triple_line(t.subject.representative, t.relation, t.object.representative);
  }
  return out;
}

}  // namespace

ClusteringResult apply_clustering_response(std::string_view response, const core::DocumentSet& docset,
                                           const std::vector<Triple>& triples) {
  ClusteringResult out;
  auto parsed = parse_triple_lines(response, "cluster_entities");
  out.warnings = std::move(parsed.warnings);
  const bool usable = !parsed.triples.empty();
  if (!usable) {
    out.warnings.push_back(core::Warning{"cluster_entities", "",
                                         "clustering response had no parsable triple; keeping singleton clusters"});
  }

  SurfaceUnion surfaces;
  // Extracted spellings take precedence over whatever casing the model echoes.
  for (const auto& t : triples) {
    for (const auto* c : {&t.subject, &t.object}) {
      for (const auto& m : c->mentions) surfaces.add(m.surface);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  if (usable) {
    for (const auto& t : parsed.triples) {
      for (const auto* field : {&t.subject.representative, &t.object.representative}) {
        const auto members = split_group(*field);
        if (members.size() < 2) continue;
        std::vector<std::size_t> ids;
        for (const auto& m : members) ids.push_back(surfaces.add(m));
        groups.push_back(std::move(ids));
      }
    }
  }
  for (const auto& t : triples) {
    for (const auto* c : {&t.subject, &t.object}) {
      const auto head = surfaces.id_of(c->mentions.front().surface);
      for (const auto& m : c->mentions) surfaces.unite(head, surfaces.id_of(m.surface));
    }
  }
  for (const auto& g : groups) {
    for (auto id : g) surfaces.unite(g.front(), id);
  }

  // Mention order: group order first (as the model listed them), then the rest
  // in registration order.
  std::vector<std::size_t> order;
  std::vector<bool> placed(surfaces.size(), false);
  for (const auto& g : groups) {
    for (auto id : g) {
      if (!placed[id]) {
        placed[id] = true;
        order.push_back(id);
      }
    }
  }
  for (std::size_t id = 0; id < surfaces.size(); ++id) {
    if (!placed[id]) order.push_back(id);
  }

  const FrequencyIndex index(docset);
  std::map<std::size_t, EntityCluster> by_root;
  for (auto id : order) {
    const auto& spelling = surfaces.spelling(id);
    by_root[surfaces.find(id)].mentions.push_back(Mention{spelling, index.count(spelling)});
  }
  for (auto& [root, cluster] : by_root) cluster.representative = select_representative(cluster, index);

  // Cluster list order: first use in the triple list, then clusters only the model mentioned.
  std::vector<bool> listed(surfaces.size(), false);
  auto list_cluster = [&](std::size_t root) {
    if (listed[root]) return;
    listed[root] = true;
    out.clusters.push_back(by_root.at(root));
  };
  for (const auto& t : triples) {
    auto rewritten = t;
    const auto subject_root = surfaces.find(surfaces.id_of(t.subject.mentions.front().surface));
    const auto object_root = surfaces.find(surfaces.id_of(t.object.mentions.front().surface));
    rewritten.subject = by_root.at(subject_root);
    rewritten.object = by_root.at(object_root);
    list_cluster(subject_root);
    list_cluster(object_root);
    out.triples.push_back(std::move(rewritten));
  }
  for (const auto& [root, cluster] : by_root) list_cluster(root);
  return out;
}

ClusteringResult cluster_entities(const llm::LlmGateway& gateway, const core::DocumentSet& docset,
                                  const std::vector<Triple>& triples) {
  if (triples.empty()) return {};
  const auto conversation = llm::render_prompt(
      llm::Purpose::cluster_entities, {{"document", docset.concatenated()}, {"triples", serialize_triples(triples)}});
  const auto reply = gateway.complete(conversation).content;
  return apply_clustering_response(reply, docset, triples);
}

}  // namespace abridge::extraction
