// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/linguistics.hpp"

#include <algorithm>

#include "fakta/error.hpp"

namespace fakta {

namespace {

double ratio(const CueCounts& c) {
  return c.words == 0 ? 0.0 : static_cast<double>(c.cues) / static_cast<double>(c.words);
}

}  // namespace

CueCounts count_cues(const Lexicon& lexicon, std::span<const Token> doc_tokens) {
  CueCounts c;
  for (const auto& t : doc_tokens) {
    if (!t.is_word()) continue;
    ++c.words;
    if (lexicon.contains(t.normalized)) ++c.cues;
  }
  return c;
}

CueCounts count_cues(const Lexicon& lexicon, std::span<const Token> doc_tokens, Polarity polarity) {
  CueCounts c;
  for (const auto& t : doc_tokens) {
    if (!t.is_word()) continue;
    ++c.words;
    auto it = lexicon.polarity.find(t.normalized);
    if (it != lexicon.polarity.end() && it->second == polarity) ++c.cues;
  }
  return c;
}

double lexicon_score(const Lexicon& lexicon, std::span<const Token> doc_tokens) {
  return ratio(count_cues(lexicon, doc_tokens));
}

LinguisticProfile profile(std::span<const Token> doc_tokens, std::span<const Lexicon> lexicons) {
  if (lexicons.empty()) throw ArgumentError("profile needs at least one lexicon");
  LinguisticProfile p;
  p.doc_token_count = static_cast<std::size_t>(
      std::count_if(doc_tokens.begin(), doc_tokens.end(), [](const Token& t) { return t.is_word(); }));
  for (const auto& lex : lexicons) {
    if (lex.has_polarity()) {
      p.scores[lex.name + ".positive"] = ratio(count_cues(lex, doc_tokens, Polarity::Positive));
      p.scores[lex.name + ".negative"] = ratio(count_cues(lex, doc_tokens, Polarity::Negative));
    } else {
      p.scores[lex.name] = lexicon_score(lex, doc_tokens);
    }
  }
  return p;
}

WordCloudData word_cloud(std::span<const Token> doc_tokens, const Lexicon& lexicon,
                         std::size_t top_n) {
  if (top_n == 0) throw ArgumentError("top_n must be >= 1");
  std::map<std::string, std::size_t> freq;
  for (const auto& t : doc_tokens) {
    if (t.is_word() && lexicon.contains(t.normalized)) ++freq[t.normalized];
  }
  WordCloudData cloud;
  cloud.lexicon = lexicon.name;
  cloud.entries.assign(freq.begin(), freq.end());
  std::stable_sort(cloud.entries.begin(), cloud.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (cloud.entries.size() > top_n) cloud.entries.resize(top_n);
  return cloud;
}

}  // namespace fakta
