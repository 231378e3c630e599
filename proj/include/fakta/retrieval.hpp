// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fakta/query.hpp"

namespace fakta {

struct DocumentRecord {
  std::string doc_id;
  std::string title;
  std::string body;
  std::string source_domain;

  bool operator==(const DocumentRecord&) const = default;
};

// Reads the JSON-lines corpus format (doc_id, title, body, source_domain).
std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path);
std::vector<DocumentRecord> parse_corpus(std::string_view jsonl, std::string_view source = "<memory>");

struct Posting {
  std::uint32_t doc = 0;  // internal document number
  std::uint32_t tf = 0;
};

struct IndexStats {
  std::size_t doc_count = 0;
  std::uint64_t total_tokens = 0;
  double avg_doc_len = 0.0;
};

// Immutable inverted index over title + body words. Safe to share between
// threads once built.
class Index {
 public:
  Index() = default;

  // Throws BuildError on a duplicate doc_id.
  static Index build(std::vector<DocumentRecord> docs);

  void save(const std::filesystem::path& dir) const;
  static Index load(const std::filesystem::path& dir);

  const IndexStats& stats() const { return stats_; }
  std::size_t size() const { return docs_.size(); }

  std::uint32_t df(std::string_view term) const;
  std::uint64_t ctf(std::string_view term) const;
  std::span<const Posting> postings(std::string_view term) const;

  std::optional<std::uint32_t> find(std::string_view doc_id) const;
  const DocumentRecord& document(std::uint32_t doc) const { return docs_[doc]; }
  std::uint32_t doc_length(std::uint32_t doc) const { return doc_lengths_[doc]; }
  // Term frequency of `term` in `doc` (0 when absent).
  std::uint32_t tf(std::string_view term, std::uint32_t doc) const;

 private:
  struct TermEntry {
    std::uint64_t ctf = 0;
    std::vector<Posting> postings;  // ascending doc
  };

  void finalize_stats();

  std::vector<DocumentRecord> docs_;
  std::vector<std::uint32_t> doc_lengths_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::unordered_map<std::string, TermEntry> terms_;
  IndexStats stats_;
};

enum class ModelKind {
  BM25,
  ClassicTFIDF,
  DFI,
  DFR_H3,
  DFR_Z,
  IB_LL,
  IB_SPL,
  LMDirichlet,
  LMJelinek,
};

struct RetrievalModel {
  ModelKind kind = ModelKind::DFR_Z;
  double k1 = 1.2;        // BM25
  double b = 0.75;        // BM25
  double mu = 800.0;      // DFR_H3 (800) / LMDirichlet (2000)
  double z = 0.30;        // DFR_Z
  double lambda = 0.10;   // LMJelinek

  static RetrievalModel bm25(double k1 = 1.2, double b = 0.75);
  static RetrievalModel classic();
  static RetrievalModel dfi();
  static RetrievalModel dfr_h3(double mu = 800.0);
  static RetrievalModel dfr_z(double z = 0.30);
  static RetrievalModel ib_ll();
  static RetrievalModel ib_spl();
  static RetrievalModel lm_dirichlet(double mu = 2000.0);
  static RetrievalModel lm_jelinek(double lambda);

  // "bm25", "classic", "dfi", "dfr_h3", "dfr_z", "ib_ll", "ib_spl",
  // "lm_dirichlet", "lm_jelinek_0.05" ...
  std::string name() const;
  // Inverse of name(); also accepts "lm_jelinek" (lambda 0.10). Throws ArgumentError.
  static RetrievalModel parse(std::string_view name);
  // The eleven configurations compared in the retrieval benchmark.
  static std::vector<RetrievalModel> all_variants();

  // Throws ArgumentError when a parameter is out of range.
  void validate() const;
};

// Statistics a single term contributes with, for one document.
struct TermContext {
  double tf = 0;
  double dl = 0;       // document length in tokens
  double df = 0;
  double ctf = 0;
  double n_docs = 0;
  double total_tokens = 0;
  double avg_doc_len = 0;
};

// Closed-form per-term score. Zero when tf == 0.
double term_score(const RetrievalModel& model, const TermContext& ctx);

struct ScoredDocument {
  std::string doc_id;
  double score_init = 0.0;
  std::size_t rank = 0;  // 1-based
  std::optional<double> f_rank;
};

// Sum of term_score over query terms, in query order. Throws NotFound.
double score(const RetrievalModel& model, const Query& query, std::string_view doc_id,
             const Index& index);

using DocumentFilter = std::function<bool(const DocumentRecord&)>;

// Top-k matching documents, score descending, ties by doc_id ascending.
// Documents sharing no term with the query never appear. Throws EmptyQuery
// on an empty query and ArgumentError when k == 0.
std::vector<ScoredDocument> search(const Index& index, const Query& query,
                                   const RetrievalModel& model, std::size_t k,
                                   const DocumentFilter& filter = {});

}  // namespace fakta
