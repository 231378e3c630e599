// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakta/pipeline.hpp"

namespace fakta {

struct FeverClaim {
  std::string id;
  std::string claim;
  VerdictLabel label = VerdictLabel::NEI;
  std::vector<std::string> evidence;  // empty iff NEI
};

// SUPPORTED / REFUTED / NOT ENOUGH INFO (any case), or the short forms.
std::optional<VerdictLabel> parse_fever_label(std::string_view label);

// JSONL with id, claim, label, evidence. Throws ParseError on an unknown
// label or on an NEI line that carries evidence.
std::vector<FeverClaim> load_fever(const std::filesystem::path& path);
std::vector<FeverClaim> parse_fever(std::string_view jsonl, std::string_view source = "<memory>");

// Fraction of claims with at least one gold document in the first k results.
// Throws ArgumentError for k == 0 or misaligned inputs.
double recall_at_k(std::span<const std::vector<std::string>> results,
                   std::span<const std::vector<std::string>> gold, std::size_t k);

inline constexpr std::array<VerdictLabel, 3> kVerdictLabels = {VerdictLabel::SUP, VerdictLabel::REF,
                                                               VerdictLabel::NEI};

struct Metrics {
  std::map<std::size_t, double> recall_at;
  std::array<double, 3> precision{};
  std::array<double, 3> recall{};
  std::array<double, 3> f1{};  // kVerdictLabels order
  double f1_macro = 0.0;       // over labels present in gold
  double accuracy = 0.0;
  std::array<std::array<std::size_t, 3>, 3> confusion{};  // [gold][predicted]

  double f1_of(VerdictLabel label) const { return f1[static_cast<std::size_t>(label)]; }
};

// Throws ArgumentError on empty or misaligned inputs.
Metrics classification_metrics(std::span<const VerdictLabel> predictions,
                               std::span<const VerdictLabel> gold);

// What the verdict rule needs from one pipeline run; none of it depends on τ.
struct ClaimOutcome {
  std::optional<StanceDistribution> aggregate;
  double top_score = 0.0;
  VerdictLabel gold = VerdictLabel::NEI;
};

ClaimOutcome outcome_of(const FactCheckResult& result, VerdictLabel gold, const PipelineConfig& config);

// τ from the grid with the best 3lbl macro-F1; ties go to the smaller τ.
// Throws ArgumentError on an empty grid or empty dev set.
double tune_threshold(std::span<const ClaimOutcome> dev, std::span<const double> grid,
                      const PipelineConfig& config);
double tune_threshold(std::span<const FeverClaim> dev, const FactChecker& checker,
                      std::span<const double> grid, const PipelineConfig& config);

// ---------------------------------------------------------------------------
// Retrieval benchmark

enum class QueryVariant { Raw, QueryGen, Reranked };
std::string_view to_string(QueryVariant variant);
std::optional<QueryVariant> parse_query_variant(std::string_view s);

struct RetrievalEvalRow {
  std::string model;
  QueryVariant variant = QueryVariant::Raw;
  std::map<std::size_t, double> recall;
};

struct RetrievalEvalTable {
  std::vector<std::size_t> ks;
  std::vector<RetrievalEvalRow> rows;
  std::size_t claims = 0;

  std::string to_text() const;
  std::string to_csv() const;
};

struct RetrievalEvalOptions {
  std::vector<std::size_t> ks = {1, 5, 10, 20};
  std::size_t rerank_depth = 20;
  CountMode count_mode = CountMode::Multiset;
  std::size_t threads = 0;
};

// One row per (model, variant). Claims without evidence are skipped.
RetrievalEvalTable run_retrieval_eval(const Index& index, std::span<const FeverClaim> claims,
                                      std::span<const RetrievalModel> models,
                                      std::span<const QueryVariant> variants,
                                      const RetrievalEvalOptions& options = {},
                                      const TextResources& text = TextResources::bundled());

// ---------------------------------------------------------------------------
// Pipeline benchmark

// For every NEI claim, `per_claim` distinct documents drawn uniformly from the
// index with a seeded generator; empty lists for the other claims.
std::vector<std::vector<std::string>> sample_nei_documents(std::span<const FeverClaim> claims,
                                                           const Index& index,
                                                           std::size_t per_claim,
                                                           std::uint64_t seed);

struct PipelineEvalOptions {
  // When set, NEI claims are judged on randomly sampled documents instead of
  // retrieved ones.
  std::optional<std::uint64_t> rs_seed;
  std::size_t rs_documents = 5;
};

struct PipelineEvalReport {
  Metrics metrics;
  LabelMode label_mode = LabelMode::ThreeLabel;
  double nei_threshold = 0.0;
  std::optional<std::uint64_t> rs_seed;
  std::size_t claims = 0;
  std::vector<VerdictLabel> predictions;
  std::vector<VerdictLabel> gold;

  std::string to_text() const;
  std::string to_csv() const;
};

// In 2lbl mode NEI claims are left out, matching the two-label protocol.
PipelineEvalReport run_pipeline_eval(const FactChecker& checker, std::span<const FeverClaim> claims,
                                     const PipelineConfig& config,
                                     const PipelineEvalOptions& options = {});

}  // namespace fakta
