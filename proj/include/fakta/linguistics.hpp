// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fakta/text.hpp"

namespace fakta {

// Cue occurrences over word occurrences for one lexicon and one document.
struct CueCounts {
  std::size_t cues = 0;
  std::size_t words = 0;
};

// Punctuation and symbol tokens are not words.
CueCounts count_cues(const Lexicon& lexicon, std::span<const Token> doc_tokens);
CueCounts count_cues(const Lexicon& lexicon, std::span<const Token> doc_tokens, Polarity polarity);

// Fraction of the document's words that are cues of the lexicon; 0 for an
// empty document or lexicon.
double lexicon_score(const Lexicon& lexicon, std::span<const Token> doc_tokens);

struct LinguisticProfile {
  std::map<std::string, double> scores;
  std::size_t doc_token_count = 0;  // words only
};

// One score per lexicon; a lexicon with polarity tags contributes
// "<name>.positive" and "<name>.negative" instead of a single score.
LinguisticProfile profile(std::span<const Token> doc_tokens, std::span<const Lexicon> lexicons);

struct WordCloudData {
  std::string lexicon;
  std::vector<std::pair<std::string, std::size_t>> entries;  // frequency desc, cue asc
};

WordCloudData word_cloud(std::span<const Token> doc_tokens, const Lexicon& lexicon,
                         std::size_t top_n);

}  // namespace fakta
