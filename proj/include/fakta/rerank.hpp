// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fakta/retrieval.hpp"
#include "fakta/text.hpp"

namespace fakta {

// Keyword-POS token counts for the title-overlap re-ranker.
struct KeywordCounts {
  int claim = 0;
  int title = 0;
  int match = 0;

  bool operator==(const KeywordCounts&) const = default;
};

// Multiset counts token occurrences; Types counts distinct normalized forms.
enum class CountMode { Multiset, Types };

KeywordCounts keyword_counts(std::span<const Token> claim_tokens,
                             std::span<const Token> title_tokens,
                             CountMode mode = CountMode::Multiset);

// (match / claim) * (match / title) * score_init, or 0 when either
// denominator is zero.
double rerank_score(const KeywordCounts& counts, double score_init);

using TitleLookup = std::function<std::optional<std::string>(const std::string& doc_id)>;

// Fills f_rank for every hit and re-sorts by it (descending; ties keep the
// original rank). Ranks are renumbered. Hits whose title is unknown get
// f_rank = 0 and a message in `warnings`.
std::vector<ScoredDocument> rerank(std::span<const Token> claim_tokens,
                                   std::vector<ScoredDocument> hits, const TitleLookup& titles,
                                   CountMode mode = CountMode::Multiset,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace fakta
