// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fakta/error.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace fakta {

namespace {

std::size_t label_index(VerdictLabel l) { return static_cast<std::size_t>(l); }

std::string fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pad(std::string s, std::size_t width, bool left = true) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::optional<VerdictLabel> parse_fever_label(std::string_view label) {
  const auto l = detail::to_lower_ascii(detail::trim(label));
  if (l == "supported" || l == "supports" || l == "sup") return VerdictLabel::SUP;
  if (l == "refuted" || l == "refutes" || l == "ref") return VerdictLabel::REF;
  if (l == "not enough info" || l == "nei") return VerdictLabel::NEI;
  return std::nullopt;
}

std::vector<FeverClaim> parse_fever(std::string_view jsonl, std::string_view source) {
  std::vector<FeverClaim> claims;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(jsonl)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string src(source);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (!obj.is_object() || !obj.contains("claim") || !obj.contains("label")) {
      throw ParseError(src, line_no, "expected an object with claim and label");
    }
    FeverClaim c;
    try {
      if (obj.contains("id")) {
        c.id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
      } else {
        c.id = std::to_string(claims.size());
      }
      c.claim = obj["claim"].get<std::string>();
      const auto label = parse_fever_label(obj["label"].get<std::string>());
      if (!label) throw ParseError(src, line_no, "unknown label '" + obj["label"].get<std::string>() + "'");
      c.label = *label;
      if (obj.contains("evidence") && !obj["evidence"].is_null()) {
        for (const auto& e : obj["evidence"]) c.evidence.push_back(e.get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (c.label == VerdictLabel::NEI && !c.evidence.empty()) {
      throw ParseError(src, line_no, "NOT ENOUGH INFO claim must not carry evidence");
    }
    if (c.label != VerdictLabel::NEI && c.evidence.empty()) {
      throw ParseError(src, line_no, "verifiable claim without evidence");
    }
    claims.push_back(std::move(c));
  }
  return claims;
}

std::vector<FeverClaim> load_fever(const std::filesystem::path& path) {
  return parse_fever(detail::read_file(path), path.string());
}

double recall_at_k(std::span<const std::vector<std::string>> results,
                   std::span<const std::vector<std::string>> gold, std::size_t k) {
  if (k == 0) throw ArgumentError("k must be >= 1");
  if (results.size() != gold.size()) throw ArgumentError("results and gold differ in length");
  if (results.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::set<std::string> wanted(gold[i].begin(), gold[i].end());
    const std::size_t n = std::min(k, results[i].size());
    for (std::size_t r = 0; r < n; ++r) {
      if (wanted.count(results[i][r])) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

Metrics classification_metrics(std::span<const VerdictLabel> predictions,
                               std::span<const VerdictLabel> gold) {
  if (predictions.size() != gold.size()) throw ArgumentError("predictions and gold differ in length");
  if (gold.empty()) throw ArgumentError("no predictions to score");
  Metrics m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++m.confusion[label_index(gold[i])][label_index(predictions[i])];
  }
  std::size_t correct = 0;
  double macro = 0.0;
  std::size_t present = 0;
  for (std::size_t l = 0; l < 3; ++l) {
    correct += m.confusion[l][l];
    std::size_t gold_l = 0;
    std::size_t pred_l = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      gold_l += m.confusion[l][j];
      pred_l += m.confusion[j][l];
    }
    const double tp = static_cast<double>(m.confusion[l][l]);
    m.precision[l] = pred_l ? tp / static_cast<double>(pred_l) : 0.0;
    m.recall[l] = gold_l ? tp / static_cast<double>(gold_l) : 0.0;
    const double denom = m.precision[l] + m.recall[l];
    m.f1[l] = denom > 0 ? 2.0 * m.precision[l] * m.recall[l] / denom : 0.0;
    if (gold_l) {
      macro += m.f1[l];
      ++present;
    }
  }
  m.f1_macro = present ? macro / static_cast<double>(present) : 0.0;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  return m;
}

ClaimOutcome outcome_of(const FactCheckResult& result, VerdictLabel gold, const PipelineConfig& config) {
  ClaimOutcome o;
  o.gold = gold;
  if (config.basis) {
    if (const auto* ch = result.channel(*config.basis); ch && ch->aggregate) {
      o.aggregate = ch->aggregate;
      o.top_score = ch->documents.front().hit.score_init;
    }
  } else {
    std::vector<StanceDistribution> aggs;
    for (const auto& ch : result.channels) {
      if (!ch.aggregate) continue;
      aggs.push_back(*ch.aggregate);
      o.top_score = std::max(o.top_score, ch.documents.front().hit.score_init);
    }
    if (!aggs.empty()) o.aggregate = aggregate(aggs);
  }
  return o;
}

double tune_threshold(std::span<const ClaimOutcome> dev, std::span<const double> grid,
                      const PipelineConfig& config) {
  if (grid.empty()) throw ArgumentError("threshold grid is empty");
  if (dev.empty()) throw ArgumentError("development set is empty");
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());

  PipelineConfig cfg = config;
  cfg.label_mode = LabelMode::ThreeLabel;
  std::vector<VerdictLabel> gold;
  for (const auto& o : dev) gold.push_back(o.gold);

  double best_tau = sorted.front();
  double best_f1 = -1.0;
  for (double tau : sorted) {
    cfg.nei_threshold = tau;
    std::vector<VerdictLabel> preds;
    for (const auto& o : dev) preds.push_back(decide_verdict(o.aggregate, o.top_score, cfg).label);
    const double f1 = classification_metrics(preds, gold).f1_macro;
    if (f1 > best_f1) {
      best_f1 = f1;
      best_tau = tau;
    }
  }
  return best_tau;
}

double tune_threshold(std::span<const FeverClaim> dev, const FactChecker& checker,
                      std::span<const double> grid, const PipelineConfig& config) {
  if (grid.empty()) throw ArgumentError("threshold grid is empty");
  std::vector<ClaimOutcome> outcomes(dev.size());
  detail::parallel_for(dev.size(), config.threads, [&](std::size_t i) {
    outcomes[i] = outcome_of(checker.check(dev[i].claim, config), dev[i].label, config);
  });
  return tune_threshold(outcomes, grid, config);
}

// ---------------------------------------------------------------------------
// Retrieval benchmark

std::string_view to_string(QueryVariant variant) {
  switch (variant) {
    case QueryVariant::Raw: return "raw";
    case QueryVariant::QueryGen: return "query-gen";
    case QueryVariant::Reranked: return "reranked";
  }
  return "raw";
}

std::optional<QueryVariant> parse_query_variant(std::string_view s) {
  const auto l = detail::to_lower_ascii(detail::trim(s));
  if (l == "raw") return QueryVariant::Raw;
  if (l == "query-gen" || l == "querygen" || l == "query_gen") return QueryVariant::QueryGen;
  if (l == "reranked" || l == "rerank") return QueryVariant::Reranked;
  return std::nullopt;
}

std::string RetrievalEvalTable::to_text() const {
  std::ostringstream out;
  out << pad("model", 18) << pad("variant", 11);
  for (auto k : ks) out << pad("R@" + std::to_string(k), 9, false);
  out << '\n';
  for (const auto& row : rows) {
    out << pad(row.model, 18) << pad(std::string(to_string(row.variant)), 11);
    for (auto k : ks) out << pad(fmt(row.recall.at(k)), 9, false);
    out << '\n';
  }
  return out.str();
}

std::string RetrievalEvalTable::to_csv() const {
  std::ostringstream out;
  out << "model,variant";
  for (auto k : ks) out << ",r@" << k;
  out << '\n';
  for (const auto& row : rows) {
    out << row.model << ',' << to_string(row.variant);
    for (auto k : ks) out << ',' << fmt(row.recall.at(k), 6);
    out << '\n';
  }
  return out.str();
}

RetrievalEvalTable run_retrieval_eval(const Index& index, std::span<const FeverClaim> claims,
                                      std::span<const RetrievalModel> models,
                                      std::span<const QueryVariant> variants,
                                      const RetrievalEvalOptions& options,
                                      const TextResources& text) {
  RetrievalEvalTable table;
  table.ks = options.ks;
  std::sort(table.ks.begin(), table.ks.end());
  table.ks.erase(std::unique(table.ks.begin(), table.ks.end()), table.ks.end());
  if (table.ks.empty() || table.ks.front() == 0) throw ArgumentError("recall cut-offs must be >= 1");
  const std::size_t kmax = table.ks.back();

  struct Prepared {
    std::vector<Token> tokens;
    Query raw;
    Query generated;
    std::vector<std::string> gold;
  };
  std::vector<Prepared> prepared;
  for (const auto& c : claims) {
    if (c.evidence.empty()) continue;
    Prepared p;
    p.tokens = analyze(c.claim, text);
    try {
      p.raw = raw_query(p.tokens);
    } catch (const EmptyQuery&) {
    }
    try {
      p.generated = generate_query(p.tokens, extract_named_entities(p.tokens), text);
    } catch (const EmptyQuery&) {
      try {
        p.generated = fallback_query(p.tokens, text);
      } catch (const EmptyQuery&) {
      }
    }
    p.gold = c.evidence;
    prepared.push_back(std::move(p));
  }
  table.claims = prepared.size();

  std::vector<std::vector<std::string>> gold;
  for (const auto& p : prepared) gold.push_back(p.gold);

  const TitleLookup titles = [&index](const std::string& id) -> std::optional<std::string> {
    auto d = index.find(id);
    if (!d) return std::nullopt;
    return index.document(*d).title;
  };

  for (const auto& model : models) {
    for (auto variant : variants) {
      std::vector<std::vector<std::string>> results(prepared.size());
      detail::parallel_for(prepared.size(), options.threads, [&](std::size_t i) {
        const auto& p = prepared[i];
        const Query& q = variant == QueryVariant::Raw ? p.raw : p.generated;
        if (q.empty()) return;
        const std::size_t depth =
            variant == QueryVariant::Reranked ? std::max(kmax, options.rerank_depth) : kmax;
        auto hits = search(index, q, model, depth);
        if (variant == QueryVariant::Reranked) {
          hits = rerank(p.tokens, std::move(hits), titles, options.count_mode);
        }
        for (const auto& h : hits) results[i].push_back(h.doc_id);
      });
      RetrievalEvalRow row;
      row.model = model.name();
      row.variant = variant;
      for (auto k : table.ks) row.recall[k] = prepared.empty() ? 0.0 : recall_at_k(results, gold, k);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Pipeline benchmark

std::vector<std::vector<std::string>> sample_nei_documents(std::span<const FeverClaim> claims,
                                                           const Index& index,
                                                           std::size_t per_claim,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> out(claims.size());
  const std::size_t n = index.size();
  const std::size_t take = std::min(per_claim, n);
  std::vector<std::uint32_t> ids(n);
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (claims[i].label != VerdictLabel::NEI) continue;
    for (std::uint32_t d = 0; d < n; ++d) ids[d] = d;
    // Partial Fisher-Yates: the first `take` slots form the sample.
    for (std::size_t j = 0; j < take; ++j) {
      const std::size_t pick = j + static_cast<std::size_t>(rng() % (n - j));
      std::swap(ids[j], ids[pick]);
      out[i].push_back(index.document(ids[j]).doc_id);
    }
  }
  return out;
}

std::string PipelineEvalReport::to_text() const {
  std::ostringstream out;
  out << "mode " << to_string(label_mode) << "  tau " << fmt(nei_threshold, 3) << "  claims " << claims;
  if (rs_seed) out << "  rs-seed " << *rs_seed;
  out << '\n';
  out << pad("label", 7) << pad("P", 9, false) << pad("R", 9, false) << pad("F1", 9, false) << '\n';
  for (auto l : kVerdictLabels) {
    const auto i = label_index(l);
    out << pad(std::string(to_string(l)), 7) << pad(fmt(metrics.precision[i]), 9, false)
        << pad(fmt(metrics.recall[i]), 9, false) << pad(fmt(metrics.f1[i]), 9, false) << '\n';
  }
  out << "macro-F1 " << fmt(metrics.f1_macro) << "  accuracy " << fmt(metrics.accuracy) << '\n';
  return out.str();
}

std::string PipelineEvalReport::to_csv() const {
  std::ostringstream out;
  out << "mode,tau,rs_seed,claims,f1_sup,f1_ref,f1_nei,f1_macro,accuracy\n";
  out << to_string(label_mode) << ',' << fmt(nei_threshold, 6) << ','
      << (rs_seed ? std::to_string(*rs_seed) : std::string()) << ',' << claims;
  for (double f : metrics.f1) out << ',' << fmt(f, 6);
  out << ',' << fmt(metrics.f1_macro, 6) << ',' << fmt(metrics.accuracy, 6) << '\n';
  return out.str();
}

PipelineEvalReport run_pipeline_eval(const FactChecker& checker, std::span<const FeverClaim> claims,
                                     const PipelineConfig& config,
                                     const PipelineEvalOptions& options) {
  std::vector<FeverClaim> used;
  for (const auto& c : claims) {
    if (config.label_mode == LabelMode::TwoLabel && c.label == VerdictLabel::NEI) continue;
    used.push_back(c);
  }
  if (used.empty()) throw ArgumentError("no claims to evaluate");

  std::vector<std::vector<std::string>> sampled;
  const Index* index = checker.resources().index;
  if (options.rs_seed) {
    if (!index) throw ArgumentError("random sampling needs a local index");
    sampled = sample_nei_documents(used, *index, options.rs_documents, *options.rs_seed);
  }

  PipelineEvalReport report;
  report.label_mode = config.label_mode;
  report.nei_threshold = config.nei_threshold;
  report.rs_seed = options.rs_seed;
  report.claims = used.size();
  report.predictions.resize(used.size());
  for (const auto& c : used) report.gold.push_back(c.label);

  detail::parallel_for(used.size(), config.threads, [&](std::size_t i) {
    const auto result = checker.check(used[i].claim, config);
    if (!options.rs_seed || sampled[i].empty()) {
      report.predictions[i] = result.verdict.label;
      return;
    }
    std::vector<StanceDistribution> dists;
    double top = 0.0;
    for (const auto& id : sampled[i]) {
      const auto doc = index->document(*index->find(id));
      ScoredDocument hit;
      hit.doc_id = id;
      hit.score_init = result.query.empty() ? 0.0 : score(config.model, result.query, id, *index);
      hit.rank = dists.size() + 1;
      top = std::max(top, hit.score_init);
      dists.push_back(checker.analyze_document(used[i].claim, doc, hit, config).stance);
    }
    report.predictions[i] = decide_verdict(aggregate(dists), top, config).label;
  });

  report.metrics = classification_metrics(report.predictions, report.gold);
  return report;
}

}  // namespace fakta
