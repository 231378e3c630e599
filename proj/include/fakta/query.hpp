// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fakta/text.hpp"

namespace fakta {

inline constexpr std::size_t kMaxQueryTerms = 10;

enum class TermOrigin { ContentWord, NamedEntity };

struct Query {
  std::vector<std::string> terms;
  std::vector<TermOrigin> origins;

  std::size_t size() const { return terms.size(); }
  bool empty() const { return terms.empty(); }
  // Terms joined by single spaces.
  std::string text() const;

  bool operator==(const Query&) const = default;
};

// Verbs, nouns and adjectives of the claim in claim order, then named-entity
// tokens not already present; stopwords dropped, capped at kMaxQueryTerms.
// Throws EmptyQuery when nothing is eligible.
Query generate_query(std::span<const Token> claim_tokens, std::span<const EntitySpan> entities,
                     const TextResources& res = TextResources::bundled());

// The kMaxQueryTerms longest distinct non-stopword words, kept in claim order.
// Used when generate_query finds nothing. Throws EmptyQuery if the claim has
// no words at all.
Query fallback_query(std::span<const Token> claim_tokens,
                     const TextResources& res = TextResources::bundled());

// Every distinct word of the claim, in order (the "claim as query" baseline).
Query raw_query(std::span<const Token> claim_tokens);

// Drops the final term. Throws CannotRelax on an empty query.
Query relax_query(Query query);

}  // namespace fakta
