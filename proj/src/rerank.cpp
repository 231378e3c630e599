// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/rerank.hpp"

#include <algorithm>
#include <map>

namespace fakta {

namespace {

std::map<std::string, int> keyword_bag(std::span<const Token> tokens, CountMode mode) {
  std::map<std::string, int> bag;
  for (const auto& t : tokens) {
    if (!is_keyword_pos(t.pos)) continue;
    int& n = bag[t.normalized];
    n = mode == CountMode::Multiset ? n + 1 : 1;
  }
  return bag;
}

int total(const std::map<std::string, int>& bag) {
  int n = 0;
  for (const auto& [_, c] : bag) n += c;
  return n;
}

}  // namespace

KeywordCounts keyword_counts(std::span<const Token> claim_tokens,
                             std::span<const Token> title_tokens, CountMode mode) {
  const auto claim = keyword_bag(claim_tokens, mode);
  const auto title = keyword_bag(title_tokens, mode);
  KeywordCounts counts;
  counts.claim = total(claim);
  counts.title = total(title);
  for (const auto& [term, c] : claim) {
    auto it = title.find(term);
    if (it != title.end()) counts.match += std::min(c, it->second);
  }
  return counts;
}

double rerank_score(const KeywordCounts& counts, double score_init) {
  if (counts.claim == 0 || counts.title == 0) return 0.0;
  const double match = counts.match;
  return (match / counts.claim) * (match / counts.title) * score_init;
}

std::vector<ScoredDocument> rerank(std::span<const Token> claim_tokens,
                                   std::vector<ScoredDocument> hits, const TitleLookup& titles,
                                   CountMode mode, std::vector<std::string>* warnings) {
  for (auto& hit : hits) {
    auto title = titles ? titles(hit.doc_id) : std::nullopt;
    if (!title) {
      if (warnings) warnings->push_back("no title for '" + hit.doc_id + "'; f_rank set to 0");
      hit.f_rank = 0.0;
      continue;
    }
    const auto title_tokens = analyze(*title);
    hit.f_rank = rerank_score(keyword_counts(claim_tokens, title_tokens, mode), hit.score_init);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const ScoredDocument& a, const ScoredDocument& b) {
    if (*a.f_rank != *b.f_rank) return *a.f_rank > *b.f_rank;
    return a.rank < b.rank;
  });
  for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = i + 1;
  return hits;
}

}  // namespace fakta
