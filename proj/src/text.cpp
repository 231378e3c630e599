// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bundled_data.hpp"
#include "fakta/error.hpp"
#include "util.hpp"

namespace fakta {

namespace {

constexpr std::string_view kPosNames[] = {"NN", "NNS", "NNP", "NNPS", "JJ", "CD", "VB", "OTHER"};

struct CodePoint {
  UChar32 c;
  std::size_t start;
  std::size_t end;
};

std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) c = 0xFFFD;
    out.push_back({c, static_cast<std::size_t>(start), static_cast<std::size_t>(i)});
  }
  return out;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) || u_iscntrl(c); }

bool is_word_char(UChar32 c) {
  return u_isalnum(c) || u_isUAlphabetic(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

bool is_letter(UChar32 c) { return u_isUAlphabetic(c); }

bool is_digit(UChar32 c) { return u_isdigit(c); }

bool is_apostrophe_or_hyphen(UChar32 c) { return c == '\'' || c == 0x2019 || c == '-'; }

UChar32 first_code_point(std::string_view s) {
  if (s.empty()) return 0;
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  UChar32 c = 0;
  U8_NEXT(p, i, static_cast<int32_t>(s.size()), c);
  return c;
}

bool is_capitalized(std::string_view surface) {
  const UChar32 c = first_code_point(surface);
  return u_isupper(c) || u_istitle(c);
}

bool is_acronym(std::string_view surface) {
  std::size_t letters = 0;
  for (const auto& cp : decode(surface)) {
    if (is_letter(cp.c)) {
      if (u_islower(cp.c)) return false;
      ++letters;
    }
  }
  return letters >= 2;
}

bool is_numeric(std::string_view surface) {
  bool digit = false;
  for (const auto& cp : decode(surface)) {
    if (is_letter(cp.c)) return false;
    if (is_digit(cp.c)) digit = true;
  }
  return digit;
}

bool is_terminator(const Token& t) {
  return t.surface == "." || t.surface == "!" || t.surface == "?" || t.surface == "…";
}

bool is_closer(const Token& t) {
  static const std::unordered_set<std::string_view> closers = {
      "\"", "'", ")", "]", "}", "”", "’", "»"};
  return closers.contains(t.surface);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<Pos> plural_or_inflection(std::string_view norm, const TextResources& res) {
  if (norm.size() <= 3 || !ends_with(norm, "s") || ends_with(norm, "ss")) return std::nullopt;
  std::vector<std::string> stems;
  if (ends_with(norm, "ies")) stems.push_back(std::string(norm.substr(0, norm.size() - 3)) + "y");
  if (ends_with(norm, "es")) stems.emplace_back(norm.substr(0, norm.size() - 2));
  stems.emplace_back(norm.substr(0, norm.size() - 1));
  for (const auto& stem : stems) {
    if (auto tag = res.lexicon_tag(stem)) {
      if (*tag == Pos::NN) return Pos::NNS;
      if (*tag == Pos::VB) return Pos::VB;
    }
  }
  return std::nullopt;
}

std::optional<Pos> suffix_tag(std::string_view norm) {
  if (norm.size() <= 4) return std::nullopt;
  if (ends_with(norm, "ing") || ends_with(norm, "ed")) return Pos::VB;
  if (ends_with(norm, "ly")) return Pos::OTHER;
  for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "less", "ical", "ish", "ic", "al"}) {
    if (ends_with(norm, suffix)) return Pos::JJ;
  }
  return std::nullopt;
}

void parse_tagged_lines(std::string_view content, std::string_view source, Pos default_tag,
                        std::unordered_map<std::string, Pos>& out) {
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(content)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_whitespace(line);
    Pos tag = default_tag;
    if (fields.size() > 2) {
      throw ParseError(std::string(source), line_no, "expected '<word> [TAG]'");
    }
    if (fields.size() == 2) {
      auto parsed = parse_pos(fields[1]);
      if (!parsed) {
        throw ParseError(std::string(source), line_no, "unknown tag '" + std::string(fields[1]) + "'");
      }
      tag = *parsed;
    }
    out[fold_case(fields[0])] = tag;
  }
}

void parse_word_set(std::string_view content, std::unordered_set<std::string>& out) {
  for (auto line : detail::split_lines(content)) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.insert(fold_case(detail::split_whitespace(line).front()));
  }
}

}  // namespace

std::string_view to_string(Pos pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

std::optional<Pos> parse_pos(std::string_view tag) {
  for (std::size_t i = 0; i < std::size(kPosNames); ++i) {
    if (kPosNames[i] == tag) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

bool is_keyword_pos(Pos pos) {
  switch (pos) {
    case Pos::NN:
    case Pos::NNS:
    case Pos::NNP:
    case Pos::NNPS:
    case Pos::JJ:
    case Pos::CD:
      return true;
    default:
      return false;
  }
}

bool Token::is_word() const {
  const UChar32 c = first_code_point(surface);
  return c > 0 && is_word_char(c);
}

bool Lexicon::contains(std::string_view normalized) const {
  return cues.find(std::string(normalized)) != cues.end();
}

std::string fold_case(std::string_view text) {
  std::string out;
  icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())))
      .foldCase()
      .toUTF8String(out);
  return out;
}

// ---------------------------------------------------------------------------
// Resources

const TextResources& TextResources::bundled() {
  static const TextResources instance =
      from_strings(bundled::kTagLexicon, bundled::kGazetteer, bundled::kStopwords,
                   bundled::kAbbreviations);
  return instance;
}

TextResources TextResources::load(const std::filesystem::path& tag_lexicon,
                                  const std::filesystem::path& gazetteer,
                                  const std::filesystem::path& stopwords) {
  TextResources res;
  parse_tagged_lines(detail::read_file(tag_lexicon), tag_lexicon.string(), Pos::NN, res.tags_);
  parse_tagged_lines(detail::read_file(gazetteer), gazetteer.string(), Pos::NNP, res.gazetteer_);
  parse_word_set(detail::read_file(stopwords), res.stopwords_);
  parse_word_set(bundled::kAbbreviations, res.abbreviations_);
  return res;
}

TextResources TextResources::from_strings(std::string_view tag_lexicon, std::string_view gazetteer,
                                          std::string_view stopwords,
                                          std::string_view abbreviations) {
  TextResources res;
  parse_tagged_lines(tag_lexicon, "<tag-lexicon>", Pos::NN, res.tags_);
  parse_tagged_lines(gazetteer, "<gazetteer>", Pos::NNP, res.gazetteer_);
  parse_word_set(stopwords, res.stopwords_);
  parse_word_set(abbreviations, res.abbreviations_);
  return res;
}

std::optional<Pos> TextResources::lexicon_tag(std::string_view normalized) const {
  auto it = tags_.find(std::string(normalized));
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

std::optional<Pos> TextResources::gazetteer_tag(std::string_view normalized) const {
  auto it = gazetteer_.find(std::string(normalized));
  if (it == gazetteer_.end()) return std::nullopt;
  return it->second;
}

bool TextResources::is_stopword(std::string_view normalized) const {
  return stopwords_.contains(std::string(normalized));
}

bool TextResources::is_abbreviation(std::string_view normalized) const {
  return abbreviations_.contains(std::string(normalized));
}

// ---------------------------------------------------------------------------
// Tokenizer

std::vector<Token> tokenize(std::string_view text) {
  const auto cps = decode(text);
  std::vector<Token> tokens;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_space(cps[i].c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (is_word_char(cps[i].c)) {
      // Single-letter segments such as "U" in "U.S" may be joined by '.'.
      std::size_t segment_start = i;
      while (j < n) {
        if (is_word_char(cps[j].c)) {
          ++j;
          continue;
        }
        if (j + 1 >= n || !is_word_char(cps[j + 1].c)) break;
        const UChar32 c = cps[j].c;
        const UChar32 prev = cps[j - 1].c;
        const UChar32 next = cps[j + 1].c;
        const bool numeric_sep = (c == '.' || c == ',') && is_digit(prev) && is_digit(next);
        const bool initialism = c == '.' && is_letter(prev) && is_letter(next) && j - segment_start == 1;
        if (is_apostrophe_or_hyphen(c) || numeric_sep || initialism) {
          j += 1;
          segment_start = j;
          continue;
        }
        break;
      }
    }
    Token tok;
    tok.span = {cps[i].start, cps[j - 1].end};
    tok.surface = std::string(text.substr(tok.span.start, tok.span.size()));
    tok.normalized = fold_case(tok.surface);
    tokens.push_back(std::move(tok));
    i = j;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Sentences

std::vector<bool> sentence_initial_flags(std::span<const Token> tokens, const TextResources& res) {
  std::vector<bool> initial(tokens.size(), false);
  if (tokens.empty()) return initial;
  initial[0] = true;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& t = tokens[i];
    bool boundary = is_terminator(t);
    if (boundary && t.surface == "." && i > 0 && tokens[i - 1].span.end == t.span.start &&
        res.is_abbreviation(tokens[i - 1].normalized)) {
      boundary = false;
    }
    if (!boundary) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && (is_terminator(tokens[j]) || is_closer(tokens[j]))) ++j;
    if (j < tokens.size()) initial[j] = true;
    i = j;
  }
  return initial;
}

std::vector<Sentence> split_sentences(std::string_view text, const TextResources& res) {
  auto tokens = pos_tag(tokenize(text), res);
  const auto initial = sentence_initial_flags(tokens, res);
  std::vector<Sentence> sentences;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (initial[i]) {
      sentences.push_back({{tokens[i].span.start, tokens[i].span.end}, {}});
    }
    auto& s = sentences.back();
    s.span.end = tokens[i].span.end;
    s.tokens.push_back(std::move(tokens[i]));
  }
  return sentences;
}

// ---------------------------------------------------------------------------
// Tagger

std::vector<Token> pos_tag(std::vector<Token> tokens, const TextResources& res) {
  const auto initial = sentence_initial_flags(tokens, res);

  std::unordered_set<std::string> capitalized_elsewhere;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!initial[i] && tokens[i].is_word() && is_capitalized(tokens[i].surface)) {
      capitalized_elsewhere.insert(tokens[i].normalized);
    }
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    const std::string& norm = t.normalized;
    if (!t.is_word()) {
      t.pos = Pos::OTHER;
      continue;
    }
    if (is_numeric(t.surface)) {
      t.pos = Pos::CD;
      continue;
    }
    const bool capitalized = is_capitalized(t.surface);
    if (capitalized) {
      if (auto gaz = res.gazetteer_tag(norm)) {
        t.pos = *gaz;
        continue;
      }
    }
    if (res.is_stopword(norm)) {
      t.pos = Pos::OTHER;
      continue;
    }
    if (capitalized &&
        (is_acronym(t.surface) || !initial[i] || capitalized_elsewhere.contains(norm))) {
      t.pos = Pos::NNP;
      continue;
    }
    if (auto tag = res.lexicon_tag(norm)) {
      t.pos = *tag;
    } else if (auto inflected = plural_or_inflection(norm, res)) {
      t.pos = *inflected;
    } else if (auto suffix = suffix_tag(norm)) {
      t.pos = *suffix;
    } else {
      t.pos = Pos::NN;
    }
  }
  return tokens;
}

std::vector<Token> analyze(std::string_view text, const TextResources& res) {
  return pos_tag(tokenize(text), res);
}

std::vector<EntitySpan> extract_named_entities(std::span<const Token> tokens) {
  std::vector<EntitySpan> entities;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].pos != Pos::NNP && tokens[i].pos != Pos::NNPS) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string text;
    while (j < tokens.size() && (tokens[j].pos == Pos::NNP || tokens[j].pos == Pos::NNPS)) {
      if (j > i) text += tokens[j].span.start > tokens[j - 1].span.end ? " " : "";
      text += tokens[j].surface;
      ++j;
    }
    entities.push_back({i, j, std::move(text)});
    i = j;
  }
  return entities;
}

// ---------------------------------------------------------------------------
// Lexicons

Lexicon parse_lexicon(std::string_view content, std::string name, std::string_view source) {
  Lexicon lex;
  lex.name = std::move(name);
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(content)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_whitespace(line);
    if (fields.size() > 2) {
      throw ParseError(std::string(source), line_no, "expected '<cue> [+|-]'");
    }
    std::string cue = fold_case(fields[0]);
    if (fields.size() == 2) {
      if (fields[1] == "+") {
        lex.polarity[cue] = Polarity::Positive;
      } else if (fields[1] == "-") {
        lex.polarity[cue] = Polarity::Negative;
      } else {
        throw ParseError(std::string(source), line_no,
                         "malformed polarity tag '" + std::string(fields[1]) + "'");
      }
    }
    lex.cues.insert(std::move(cue));
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, std::string name) {
  return parse_lexicon(detail::read_file(path), std::move(name), path.string());
}

}  // namespace fakta
