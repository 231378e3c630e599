// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fakta {

// Coarse part-of-speech tags. The six keyword tags plus VB are what query
// generation and re-ranking consume; everything else is OTHER.
enum class Pos : std::uint8_t { NN, NNS, NNP, NNPS, JJ, CD, VB, OTHER };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view tag);

// NN, NNS, NNP, NNPS, JJ, CD.
bool is_keyword_pos(Pos pos);

// Byte offsets into the source text, [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::string surface;
  std::string normalized;
  Pos pos = Pos::OTHER;
  Span span;

  // Starts with a letter or digit (punctuation and symbols are not words).
  bool is_word() const;
  bool operator==(const Token&) const = default;
};

struct Sentence {
  Span span;
  std::vector<Token> tokens;
};

struct EntitySpan {
  std::size_t begin = 0;  // token index, inclusive
  std::size_t end = 0;    // token index, exclusive
  std::string text;

  std::size_t size() const { return end - begin; }
};

enum class Polarity : std::uint8_t { Positive, Negative };

struct Lexicon {
  std::string name;
  std::set<std::string> cues;
  std::map<std::string, Polarity> polarity;

  bool contains(std::string_view normalized) const;
  bool has_polarity() const { return !polarity.empty(); }
};

// Unicode case folding of a UTF-8 string.
std::string fold_case(std::string_view text);

// Tag lexicon, gazetteer, stopword and abbreviation lists used by the tagger
// and the query generator. Immutable once constructed.
class TextResources {
 public:
  TextResources() = default;

  // Resources compiled into the library from data/.
  static const TextResources& bundled();

  // Load from files in the lexicon layout ("<word> <TAG>" / "<word>").
  static TextResources load(const std::filesystem::path& tag_lexicon,
                            const std::filesystem::path& gazetteer,
                            const std::filesystem::path& stopwords);

  static TextResources from_strings(std::string_view tag_lexicon, std::string_view gazetteer,
                                    std::string_view stopwords, std::string_view abbreviations);

  std::optional<Pos> lexicon_tag(std::string_view normalized) const;
  std::optional<Pos> gazetteer_tag(std::string_view normalized) const;
  bool is_stopword(std::string_view normalized) const;
  bool is_abbreviation(std::string_view normalized) const;

  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }
  std::size_t tag_lexicon_size() const { return tags_.size(); }

 private:
  std::unordered_map<std::string, Pos> tags_;
  std::unordered_map<std::string, Pos> gazetteer_;
  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> abbreviations_;
};

std::vector<Token> tokenize(std::string_view text);

std::vector<Sentence> split_sentences(std::string_view text,
                                      const TextResources& res = TextResources::bundled());

// Indices of tokens that open a sentence (same boundary rule as split_sentences).
std::vector<bool> sentence_initial_flags(std::span<const Token> tokens,
                                         const TextResources& res = TextResources::bundled());

std::vector<Token> pos_tag(std::vector<Token> tokens,
                           const TextResources& res = TextResources::bundled());

std::vector<EntitySpan> extract_named_entities(std::span<const Token> tokens);

// tokenize + pos_tag.
std::vector<Token> analyze(std::string_view text,
                           const TextResources& res = TextResources::bundled());

Lexicon load_lexicon(const std::filesystem::path& path, std::string name);
Lexicon parse_lexicon(std::string_view content, std::string name,
                      std::string_view source = "<memory>");

}  // namespace fakta
