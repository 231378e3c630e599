// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/query.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "fakta/error.hpp"

namespace fakta {

namespace {

bool is_query_pos(Pos pos) {
  switch (pos) {
    case Pos::VB:
    case Pos::NN:
    case Pos::NNS:
    case Pos::NNP:
    case Pos::NNPS:
    case Pos::JJ:
      return true;
    default:
      return false;
  }
}

std::size_t code_point_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

std::string Query::text() const {
  std::string out;
  for (const auto& term : terms) {
    if (!out.empty()) out += ' ';
    out += term;
  }
  return out;
}

Query generate_query(std::span<const Token> claim_tokens, std::span<const EntitySpan> entities,
                     const TextResources& res) {
  Query q;
  std::unordered_set<std::string> seen;
  auto add = [&](const Token& t, TermOrigin origin) {
    if (q.size() >= kMaxQueryTerms || !t.is_word() || res.is_stopword(t.normalized)) return;
    if (!seen.insert(t.normalized).second) return;
    q.terms.push_back(t.normalized);
    q.origins.push_back(origin);
  };
  for (const auto& t : claim_tokens) {
    if (is_query_pos(t.pos)) add(t, TermOrigin::ContentWord);
  }
  for (const auto& e : entities) {
    for (std::size_t i = e.begin; i < e.end && i < claim_tokens.size(); ++i) {
      add(claim_tokens[i], TermOrigin::NamedEntity);
    }
  }
  if (q.empty()) throw EmptyQuery();
  return q;
}

Query fallback_query(std::span<const Token> claim_tokens, const TextResources& res) {
  std::vector<std::size_t> candidates;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < claim_tokens.size(); ++i) {
    const Token& t = claim_tokens[i];
    if (t.is_word() && !res.is_stopword(t.normalized) && seen.insert(t.normalized).second) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) throw EmptyQuery();
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return code_point_length(claim_tokens[a].normalized) >
           code_point_length(claim_tokens[b].normalized);
  });
  if (candidates.size() > kMaxQueryTerms) candidates.resize(kMaxQueryTerms);
  std::sort(candidates.begin(), candidates.end());
  Query q;
  for (std::size_t i : candidates) {
    q.terms.push_back(claim_tokens[i].normalized);
    q.origins.push_back(TermOrigin::ContentWord);
  }
  return q;
}

Query raw_query(std::span<const Token> claim_tokens) {
  Query q;
  std::unordered_set<std::string> seen;
  for (const auto& t : claim_tokens) {
    if (t.is_word() && seen.insert(t.normalized).second) {
      q.terms.push_back(t.normalized);
      q.origins.push_back(TermOrigin::ContentWord);
    }
  }
  if (q.empty()) throw EmptyQuery();
  return q;
}

Query relax_query(Query query) {
  if (query.empty()) throw CannotRelax();
  query.terms.pop_back();
  query.origins.pop_back();
  return query;
}

}  // namespace fakta
