// SPDX-License-Identifier: Apache-2.0
#include <set>
#include <tuple>

#include "abridge/core/errors.hpp"
#include "abridge/core/text.hpp"
#include "abridge/extraction/triples.hpp"
#include "abridge/llm/prompts.hpp"

namespace abridge::extraction {

FrequencyIndex::FrequencyIndex(const core::DocumentSet& docset)
    : corpus_(core::lowercase(core::to_u32(docset.concatenated()))) {}

namespace {

template <typename F>
void for_each_occurrence(const std::u32string& corpus, std::string_view surface, F&& visit) {
  const auto needle = core::lowercase(core::to_u32(core::trim(surface)));
  if (needle.empty()) return;
  for (auto pos = corpus.find(needle); pos != std::u32string::npos; pos = corpus.find(needle, pos + 1)) {
    const auto end = pos + needle.size();
    const bool left_ok = pos == 0 || !core::is_alnum(corpus[pos - 1]);
    const bool right_ok = end == corpus.size() || !core::is_alnum(corpus[end]);
    if (left_ok && right_ok && !visit(pos)) return;
  }
}

}  // namespace

std::uint64_t FrequencyIndex::count(std::string_view surface) const {
  std::uint64_t n = 0;
  for_each_occurrence(corpus_, surface, [&](std::size_t) {
    ++n;
    return true;
  });
  return n;
}

std::size_t FrequencyIndex::first_occurrence(std::string_view surface) const {
  std::size_t first = std::string::npos;
  for_each_occurrence(corpus_, surface, [&](std::size_t pos) {
    first = pos;
    return false;
  });
  return first;
}

std::string select_representative(const EntityCluster& cluster, const FrequencyIndex& index) {
  if (cluster.mentions.empty()) throw PreconditionError("cannot pick a representative for an empty cluster");
  // Larger key wins.
  auto key = [&](const Mention& m) {
    return std::make_tuple(index.count(m.surface), core::scalar_length(m.surface),
                           std::string::npos - index.first_occurrence(m.surface));
  };
  const Mention* best = &cluster.mentions.front();
  auto best_key = key(*best);
  for (const auto& m : cluster.mentions) {
    const auto k = key(m);
    if (k > best_key || (k == best_key && m.surface < best->surface)) {
      best = &m;
      best_key = k;
    }
  }
  return best->surface;
}

std::string select_representative(const EntityCluster& cluster, const core::DocumentSet& docset) {
  return select_representative(cluster, FrequencyIndex(docset));
}

ExtractionResult extract_triples(const llm::LlmGateway& gateway, const core::DocumentSet& docset) {
  if (docset.empty()) throw PreconditionError("extraction needs at least one document");
  const FrequencyIndex index(docset);
  ExtractionResult out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::string raw_responses;

  for (const auto& doc : docset.documents()) {
    const auto conversation = llm::render_prompt(llm::Purpose::extract_triples, {{"document", doc.body}});
    const auto reply = gateway.complete(conversation).content;
    if (!raw_responses.empty()) raw_responses += "\n\n";
    raw_responses += reply;

    auto parsed = parse_triple_lines(reply, "extract_triples");
    for (auto& w : parsed.warnings) out.warnings.push_back(std::move(w));
    if (parsed.triples.empty()) {
      out.warnings.push_back(core::Warning{"extract_triples", "", "no triples extracted from " + doc.id});
    }
    for (auto& t : parsed.triples) {
      auto key = std::make_tuple(core::lowercase(t.subject.representative), core::lowercase(t.relation),
                                 core::lowercase(t.object.representative));
      if (!seen.insert(std::move(key)).second) continue;
      for (auto* cluster : {&t.subject, &t.object}) {
        cluster->mentions.front().frequency = index.count(cluster->mentions.front().surface);
      }
      out.triples.push_back(std::move(t));
    }
  }

  if (out.triples.empty()) {
    throw ExtractionEmptyError("extraction response contained no parsable triple", raw_responses);
  }
  return out;
}

}  // namespace abridge::extraction
