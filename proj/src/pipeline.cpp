// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "fakta/error.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace fakta {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::size_t channel_index(Reliability r) { return static_cast<std::size_t>(r); }

}  // namespace

std::string_view to_string(LabelMode mode) {
  return mode == LabelMode::TwoLabel ? "2lbl" : "3lbl";
}

std::string_view to_string(VerdictLabel label) {
  switch (label) {
    case VerdictLabel::SUP: return "SUP";
    case VerdictLabel::REF: return "REF";
    case VerdictLabel::NEI: return "NEI";
  }
  return "NEI";
}

std::string_view to_string(ChannelSource source) {
  switch (source) {
    case ChannelSource::Local: return "local";
    case ChannelSource::External: return "external";
    case ChannelSource::Disabled: return "off";
  }
  return "off";
}

std::optional<LabelMode> parse_label_mode(std::string_view s) {
  const auto l = detail::to_lower_ascii(detail::trim(s));
  if (l == "2lbl") return LabelMode::TwoLabel;
  if (l == "3lbl") return LabelMode::ThreeLabel;
  return std::nullopt;
}

std::optional<ChannelSource> parse_channel_source(std::string_view s) {
  const auto l = detail::to_lower_ascii(detail::trim(s));
  if (l == "local") return ChannelSource::Local;
  if (l == "external") return ChannelSource::External;
  if (l == "off" || l == "disabled") return ChannelSource::Disabled;
  return std::nullopt;
}

void PipelineConfig::validate() const {
  if (k == 0) throw ArgumentError("k must be >= 1");
  if (!(nei_threshold >= 0)) throw ArgumentError("nei_threshold must be >= 0");
  if (word_cloud_top_n == 0) throw ArgumentError("word_cloud_top_n must be >= 1");
  model.validate();
}

const ChannelResult* FactCheckResult::channel(Reliability r) const {
  for (const auto& c : channels) {
    if (c.channel == r) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Aggregation and verdict

StanceDistribution aggregate(std::span<const StanceDistribution> dists) {
  if (dists.empty()) throw NoDocuments();
  std::array<double, 4> sum{};
  for (const auto& d : dists) {
    const auto f = d.flattened();
    for (std::size_t i = 0; i < 4; ++i) sum[i] += f[i];
  }
  const double n = static_cast<double>(dists.size());
  for (double& v : sum) v /= n;
  const double total = sum[0] + sum[1] + sum[2] + sum[3];
  if (total > 0) {
    for (double& v : sum) v /= total;
  }
  return StanceDistribution::from_flattened(sum);
}

Verdict decide_verdict(const std::optional<StanceDistribution>& agg, double top_score,
                       const PipelineConfig& config) {
  Verdict v;
  v.top_score = top_score;
  v.basis_channel = config.basis ? std::string(to_string(*config.basis)) : "mean";
  if (agg) {
    const auto f = agg->flattened();
    v.agree_score = f[0];
    v.disagree_score = f[1];
    v.discuss_score = f[2];
  }
  if (config.label_mode == LabelMode::TwoLabel) {
    v.label = v.agree_score >= v.disagree_score ? VerdictLabel::SUP : VerdictLabel::REF;
    return v;
  }
  if (!agg || top_score < config.nei_threshold) {
    v.label = VerdictLabel::NEI;
  } else if (v.agree_score > v.disagree_score) {
    v.label = VerdictLabel::SUP;
  } else if (v.disagree_score > v.agree_score) {
    v.label = VerdictLabel::REF;
  } else {
    v.label = VerdictLabel::NEI;
  }
  return v;
}

// ---------------------------------------------------------------------------
// FactChecker

FactChecker::FactChecker(PipelineResources resources, PipelineConfig config)
    : resources_(std::move(resources)), config_(std::move(config)) {
  config_.validate();
  if (!resources_.text) resources_.text = &TextResources::bundled();
}

ChannelRetrieval FactChecker::fetch(Reliability channel, const Query& query,
                                    std::span<const Token> claim_tokens,
                                    const PipelineConfig& config) const {
  ChannelRetrieval out;
  out.query = query;
  const std::size_t depth = config.rerank ? std::max(config.rerank_depth, config.k) : config.k;
  std::vector<std::string> warnings;

  switch (config.source(channel)) {
    case ChannelSource::Disabled:
      return out;
    case ChannelSource::Local: {
      if (!resources_.index) throw PipelineError("no index loaded");
      const auto* registry = resources_.registry;
      DocumentFilter filter = [registry, channel](const DocumentRecord& doc) {
        if (!registry) return channel == Reliability::Wikipedia;
        try {
          return classify_domain(*registry, doc.source_domain) == channel;
        } catch (const InvalidUrl&) {
          return false;
        }
      };
      out.hits = search(*resources_.index, query, config.model, depth, filter);
      const Index& index = *resources_.index;
      if (config.rerank) {
        out.hits = rerank(
            claim_tokens, std::move(out.hits),
            [&index](const std::string& id) -> std::optional<std::string> {
              auto d = index.find(id);
              if (!d) return std::nullopt;
              return index.document(*d).title;
            },
            config.count_mode, &warnings);
      }
      if (out.hits.size() > config.k) out.hits.resize(config.k);
      for (const auto& hit : out.hits) out.documents.push_back(index.document(*index.find(hit.doc_id)));
      break;
    }
    case ChannelSource::External: {
      if (!resources_.provider) throw ProviderError(channel, "no search provider configured");
      if (!resources_.registry) throw ProviderError(channel, "no source registry loaded");
      auto docs = external_search(*resources_.provider, *resources_.registry, query, channel, depth);
      std::map<std::string, DocumentRecord> by_id;
      for (auto& d : docs) {
        out.hits.push_back(d.hit);
        by_id.emplace(d.record.doc_id, std::move(d.record));
      }
      if (config.rerank) {
        out.hits = rerank(
            claim_tokens, std::move(out.hits),
            [&by_id](const std::string& id) -> std::optional<std::string> {
              auto it = by_id.find(id);
              if (it == by_id.end()) return std::nullopt;
              return it->second.title;
            },
            config.count_mode, &warnings);
      }
      if (out.hits.size() > config.k) out.hits.resize(config.k);
      for (const auto& hit : out.hits) out.documents.push_back(by_id.at(hit.doc_id));
      break;
    }
  }
  return out;
}

ChannelRetrieval FactChecker::retrieve_with_relaxation(Reliability channel, const Query& query,
                                                       std::span<const Token> claim_tokens,
                                                       const PipelineConfig& config) const {
  if (query.empty()) throw EmptyQuery();
  const std::size_t limit = config.max_relaxations.value_or(query.size());
  Query attempt = query;
  std::size_t relaxations = 0;
  while (true) {
    auto result = fetch(channel, attempt, claim_tokens, config);
    result.relaxations = relaxations;
    if (!result.hits.empty()) return result;
    if (relaxations >= limit || attempt.size() <= 1) return result;
    attempt = relax_query(std::move(attempt));
    ++relaxations;
  }
}

AnalyzedDocument FactChecker::analyze_document(std::string_view claim, DocumentRecord record,
                                               ScoredDocument hit,
                                               const PipelineConfig& config) const {
  AnalyzedDocument doc;
  const std::string_view text = record.body;
  if (resources_.scorer && !detail::trim(text).empty()) {
    doc.stance = resources_.scorer->score(claim, text);
    doc.rationales = score_sentences(*resources_.scorer, claim, text);
  }
  const auto tokens = tokenize(text);
  if (!resources_.lexicons.empty()) {
    doc.profile = profile(tokens, resources_.lexicons);
    for (const auto& lex : resources_.lexicons) {
      doc.word_clouds.push_back(word_cloud(tokens, lex, config.word_cloud_top_n));
    }
  } else {
    doc.profile.doc_token_count = static_cast<std::size_t>(
        std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word(); }));
  }
  doc.record = std::move(record);
  doc.hit = std::move(hit);
  return doc;
}

FactCheckResult FactChecker::check(std::string_view claim) const { return check(claim, config_); }

FactCheckResult FactChecker::check(std::string_view claim, const PipelineConfig& config) const {
  config.validate();
  if (detail::trim(claim).empty()) throw ArgumentError("claim is empty");
  const auto total_start = Clock::now();

  FactCheckResult result;
  result.claim = std::string(claim);

  auto stage = Clock::now();
  const auto claim_tokens = pos_tag(tokenize(claim), *resources_.text);
  const auto entities = extract_named_entities(claim_tokens);
  bool have_query = true;
  try {
    result.query = generate_query(claim_tokens, entities, *resources_.text);
  } catch (const EmptyQuery&) {
    try {
      result.query = fallback_query(claim_tokens, *resources_.text);
      result.fallback_query = true;
      result.diagnostics.push_back("no content words in claim; using longest-token fallback query");
    } catch (const EmptyQuery&) {
      have_query = false;
      result.diagnostics.push_back("claim yields an empty query; verdict defaults to NEI");
    }
  }
  result.timing_ms["query"] = elapsed_ms(stage);

  std::vector<Reliability> enabled;
  for (auto r : kAllChannels) {
    if (config.source(r) != ChannelSource::Disabled) enabled.push_back(r);
  }
  result.channels.resize(enabled.size());
  for (std::size_t i = 0; i < enabled.size(); ++i) {
    result.channels[i].channel = enabled[i];
    result.channels[i].source = config.source(enabled[i]);
    result.channels[i].query = result.query;
  }

  // Retrieval, one task per channel.
  stage = Clock::now();
  std::vector<ChannelRetrieval> retrieved(enabled.size());
  if (have_query) {
    detail::parallel_for(enabled.size(), config.threads, [&](std::size_t i) {
      try {
        retrieved[i] = retrieve_with_relaxation(enabled[i], result.query, claim_tokens, config);
      } catch (const Error& e) {
        result.channels[i].error = e.what();
      }
    });
    std::size_t failed = 0;
    for (const auto& c : result.channels) failed += c.error ? 1 : 0;
    if (!enabled.empty() && failed == enabled.size()) {
      throw PipelineError("all channels failed: " + *result.channels.front().error);
    }
  }
  result.timing_ms["retrieval"] = elapsed_ms(stage);

  // Per-document stance and linguistic analysis, fanned out over all channels.
  stage = Clock::now();
  struct Task {
    std::size_t channel;
    std::size_t doc;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < retrieved.size(); ++c) {
    auto& ch = result.channels[c];
    ch.query = retrieved[c].hits.empty() && retrieved[c].query.empty() ? result.query : retrieved[c].query;
    ch.relaxations = retrieved[c].relaxations;
    ch.documents.resize(retrieved[c].hits.size());
    for (std::size_t d = 0; d < retrieved[c].hits.size(); ++d) tasks.push_back({c, d});
  }
  detail::parallel_for(tasks.size(), config.threads, [&](std::size_t t) {
    const auto [c, d] = tasks[t];
    result.channels[c].documents[d] = analyze_document(
        claim, retrieved[c].documents[d], retrieved[c].hits[d], config);
  });
  result.timing_ms["analysis"] = elapsed_ms(stage);

  // Aggregation and verdict.
  stage = Clock::now();
  for (auto& ch : result.channels) {
    if (ch.documents.empty()) continue;
    std::vector<StanceDistribution> dists;
    for (const auto& d : ch.documents) dists.push_back(d.stance);
    ch.aggregate = aggregate(dists);
  }

  std::optional<StanceDistribution> basis_agg;
  double top_score = 0.0;
  if (config.basis) {
    if (const auto* ch = result.channel(*config.basis); ch && ch->aggregate) {
      basis_agg = ch->aggregate;
      top_score = ch->documents.front().hit.score_init;
    }
  } else {
    std::vector<StanceDistribution> aggs;
    for (const auto& ch : result.channels) {
      if (!ch.aggregate) continue;
      aggs.push_back(*ch.aggregate);
      top_score = std::max(top_score, ch.documents.front().hit.score_init);
    }
    if (!aggs.empty()) basis_agg = aggregate(aggs);
  }
  result.verdict = decide_verdict(basis_agg, top_score, config);
  result.timing_ms["aggregation"] = elapsed_ms(stage);
  result.timing_ms["total"] = elapsed_ms(total_start);
  return result;
}

}  // namespace fakta
