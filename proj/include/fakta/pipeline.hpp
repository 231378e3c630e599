// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakta/linguistics.hpp"
#include "fakta/query.hpp"
#include "fakta/rerank.hpp"
#include "fakta/retrieval.hpp"
#include "fakta/sources.hpp"
#include "fakta/stance.hpp"

namespace fakta {

enum class LabelMode { TwoLabel, ThreeLabel };
enum class VerdictLabel { SUP, REF, NEI };
// Where a channel's documents come from.
enum class ChannelSource { Local, External, Disabled };

std::string_view to_string(LabelMode mode);
std::string_view to_string(VerdictLabel label);
std::string_view to_string(ChannelSource source);
std::optional<LabelMode> parse_label_mode(std::string_view s);
std::optional<ChannelSource> parse_channel_source(std::string_view s);

struct PipelineConfig {
  std::size_t k = 5;
  RetrievalModel model = RetrievalModel::dfr_z();
  double nei_threshold = 2.0;
  LabelMode label_mode = LabelMode::ThreeLabel;
  // Upper bound on query relaxations; unset means the query length.
  std::optional<std::size_t> max_relaxations;
  // Indexed by Reliability.
  std::array<ChannelSource, 4> channels = {ChannelSource::Local, ChannelSource::Local,
                                           ChannelSource::Local, ChannelSource::Local};
  // Channel whose aggregate decides the verdict; unset = mean over channels.
  std::optional<Reliability> basis = Reliability::Wikipedia;
  bool rerank = true;
  std::size_t rerank_depth = 20;
  CountMode count_mode = CountMode::Multiset;
  std::size_t word_cloud_top_n = 10;
  std::size_t threads = 0;  // 0 = hardware concurrency

  ChannelSource& source(Reliability r) { return channels[static_cast<std::size_t>(r)]; }
  ChannelSource source(Reliability r) const { return channels[static_cast<std::size_t>(r)]; }

  // Throws ArgumentError.
  void validate() const;
};

struct AnalyzedDocument {
  DocumentRecord record;
  ScoredDocument hit;
  StanceDistribution stance;
  std::vector<SentenceRationale> rationales;
  LinguisticProfile profile;
  std::vector<WordCloudData> word_clouds;
};

struct ChannelResult {
  Reliability channel = Reliability::Wikipedia;
  ChannelSource source = ChannelSource::Local;
  Query query;  // after relaxation
  std::size_t relaxations = 0;
  std::vector<AnalyzedDocument> documents;
  std::optional<StanceDistribution> aggregate;  // set iff documents is non-empty
  std::optional<std::string> error;             // set when the channel failed
};

struct Verdict {
  VerdictLabel label = VerdictLabel::NEI;
  double agree_score = 0.0;
  double disagree_score = 0.0;
  double discuss_score = 0.0;
  double top_score = 0.0;
  std::string basis_channel;
};

struct FactCheckResult {
  std::string claim;
  Query query;
  bool fallback_query = false;
  std::vector<ChannelResult> channels;  // enabled channels, in Reliability order
  Verdict verdict;
  std::vector<std::string> diagnostics;
  std::map<std::string, double> timing_ms;

  const ChannelResult* channel(Reliability r) const;
};

// Mean of the flattened distributions, summed in the given (rank) order and
// renormalised. Throws NoDocuments on an empty list.
StanceDistribution aggregate(std::span<const StanceDistribution> dists);

// `agg` is unset when the basis has no documents.
Verdict decide_verdict(const std::optional<StanceDistribution>& agg, double top_score,
                       const PipelineConfig& config);

struct PipelineResources {
  const Index* index = nullptr;
  const SourceRegistry* registry = nullptr;
  const StanceScorer* scorer = nullptr;
  std::vector<Lexicon> lexicons;
  ExternalSearchProvider* provider = nullptr;
  const TextResources* text = &TextResources::bundled();
};

struct ChannelRetrieval {
  std::vector<DocumentRecord> documents;
  std::vector<ScoredDocument> hits;  // reranked when enabled, at most k
  Query query;
  std::size_t relaxations = 0;
};

class FactChecker {
 public:
  FactChecker(PipelineResources resources, PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  const PipelineResources& resources() const { return resources_; }

  // Throws PipelineError when every enabled channel fails.
  FactCheckResult check(std::string_view claim) const;
  FactCheckResult check(std::string_view claim, const PipelineConfig& config) const;

  // Issues the query; while nothing comes back, drops the last term and
  // retries, at most max_relaxations times. Provider failures propagate as
  // ProviderError.
  ChannelRetrieval retrieve_with_relaxation(Reliability channel, const Query& query,
                                            std::span<const Token> claim_tokens,
                                            const PipelineConfig& config) const;

  AnalyzedDocument analyze_document(std::string_view claim, DocumentRecord record,
                                    ScoredDocument hit, const PipelineConfig& config) const;

 private:
  ChannelRetrieval fetch(Reliability channel, const Query& query,
                         std::span<const Token> claim_tokens, const PipelineConfig& config) const;

  PipelineResources resources_;
  PipelineConfig config_;
};

}  // namespace fakta
