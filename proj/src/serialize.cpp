// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/serialize.hpp"

#include "fakta/error.hpp"

namespace fakta {

using nlohmann::json;

namespace {

std::string_view origin_name(TermOrigin o) {
  return o == TermOrigin::NamedEntity ? "named-entity" : "content-word";
}

template <typename T>
T parse_enum(const json& j, std::optional<T> (*parser)(std::string_view), const char* what) {
  const auto v = parser(j.get<std::string>());
  if (!v) throw ParseError("<json>", 0, std::string("bad ") + what + " '" + j.get<std::string>() + "'");
  return *v;
}

std::optional<VerdictLabel> parse_verdict(std::string_view s) {
  if (s == "SUP") return VerdictLabel::SUP;
  if (s == "REF") return VerdictLabel::REF;
  if (s == "NEI") return VerdictLabel::NEI;
  return std::nullopt;
}

StanceDistribution dist_from_json(const json& j) {
  StanceDistribution d;
  d.p_related = j.at("p_related").get<double>();
  d.p_agree = j.at("p_agree").get<double>();
  d.p_disagree = j.at("p_disagree").get<double>();
  d.p_discuss = j.at("p_discuss").get<double>();
  return d;
}

Query query_from_json(const json& j) {
  Query q;
  for (const auto& t : j.at("terms")) q.terms.push_back(t.get<std::string>());
  for (const auto& o : j.at("origins")) {
    q.origins.push_back(o.get<std::string>() == "named-entity" ? TermOrigin::NamedEntity
                                                              : TermOrigin::ContentWord);
  }
  return q;
}

AnalyzedDocument document_from_json(const json& j) {
  AnalyzedDocument d;
  d.record.doc_id = j.at("doc_id").get<std::string>();
  d.record.title = j.at("title").get<std::string>();
  d.record.body = j.at("body").get<std::string>();
  d.record.source_domain = j.at("source_domain").get<std::string>();
  d.hit.doc_id = d.record.doc_id;
  d.hit.score_init = j.at("score_init").get<double>();
  d.hit.rank = j.at("rank").get<std::size_t>();
  if (!j.at("f_rank").is_null()) d.hit.f_rank = j.at("f_rank").get<double>();
  d.stance = dist_from_json(j.at("stance"));
  for (const auto& r : j.at("rationales")) {
    SentenceRationale sr;
    sr.sentence.span = {r.at("start").get<std::size_t>(), r.at("end").get<std::size_t>()};
    sr.dist = dist_from_json(r.at("stance"));
    sr.dominant = parse_enum(r.at("dominant"), &parse_stance, "stance label");
    d.rationales.push_back(std::move(sr));
  }
  const auto& p = j.at("profile");
  for (const auto& [name, v] : p.at("scores").items()) d.profile.scores[name] = v.get<double>();
  d.profile.doc_token_count = p.at("doc_token_count").get<std::size_t>();
  for (const auto& c : j.at("word_clouds")) {
    WordCloudData w;
    w.lexicon = c.at("lexicon").get<std::string>();
    for (const auto& e : c.at("entries")) {
      w.entries.emplace_back(e.at("cue").get<std::string>(), e.at("frequency").get<std::size_t>());
    }
    d.word_clouds.push_back(std::move(w));
  }
  return d;
}

}  // namespace

json to_json(const StanceDistribution& dist) {
  const auto f = dist.flattened();
  json flat = json::object();
  for (std::size_t i = 0; i < kStanceLabels.size(); ++i) flat[std::string(to_string(kStanceLabels[i]))] = f[i];
  return {{"p_related", dist.p_related},
          {"p_agree", dist.p_agree},
          {"p_disagree", dist.p_disagree},
          {"p_discuss", dist.p_discuss},
          {"flattened", flat},
          {"dominant", to_string(dist.dominant())}};
}

json to_json(const Query& query) {
  json origins = json::array();
  for (auto o : query.origins) origins.push_back(origin_name(o));
  return {{"terms", query.terms}, {"origins", origins}};
}

json to_json(const LinguisticProfile& profile) {
  json scores = json::object();
  for (const auto& [name, v] : profile.scores) scores[name] = v;
  return {{"scores", scores}, {"doc_token_count", profile.doc_token_count}};
}

json to_json(const WordCloudData& cloud) {
  json entries = json::array();
  for (const auto& [cue, n] : cloud.entries) entries.push_back({{"cue", cue}, {"frequency", n}});
  return {{"lexicon", cloud.lexicon}, {"entries", entries}};
}

json to_json(const SentenceRationale& rationale, std::string_view text) {
  const auto& span = rationale.sentence.span;
  return {{"start", span.start},
          {"end", span.end},
          {"text", std::string(text.substr(span.start, span.end - span.start))},
          {"stance", to_json(rationale.dist)},
          {"dominant", to_string(rationale.dominant)}};
}

json to_json(const AnalyzedDocument& doc) {
  json rationales = json::array();
  for (const auto& r : doc.rationales) rationales.push_back(to_json(r, doc.record.body));
  json clouds = json::array();
  for (const auto& c : doc.word_clouds) clouds.push_back(to_json(c));
  return {{"doc_id", doc.record.doc_id},
          {"title", doc.record.title},
          {"body", doc.record.body},
          {"source_domain", doc.record.source_domain},
          {"score_init", doc.hit.score_init},
          {"rank", doc.hit.rank},
          {"f_rank", doc.hit.f_rank ? json(*doc.hit.f_rank) : json(nullptr)},
          {"stance", to_json(doc.stance)},
          {"rationales", rationales},
          {"profile", to_json(doc.profile)},
          {"word_clouds", clouds}};
}

json to_json(const FactCheckResult& result, const SerializeOptions& options) {
  json channels = json::array();
  for (const auto& ch : result.channels) {
    json docs = json::array();
    for (const auto& d : ch.documents) docs.push_back(to_json(d));
    channels.push_back({{"channel", to_string(ch.channel)},
                        {"source", to_string(ch.source)},
                        {"query", to_json(ch.query)},
                        {"relaxations", ch.relaxations},
                        {"documents", docs},
                        {"aggregate", ch.aggregate ? to_json(*ch.aggregate) : json(nullptr)},
                        {"error", ch.error ? json(*ch.error) : json(nullptr)}});
  }
  const auto& v = result.verdict;
  json out = {{"claim", result.claim},
              {"query", to_json(result.query)},
              {"fallback_query", result.fallback_query},
              {"channels", channels},
              {"verdict",
               {{"label", to_string(v.label)},
                {"agree_score", v.agree_score},
                {"disagree_score", v.disagree_score},
                {"discuss_score", v.discuss_score},
                {"top_score", v.top_score},
                {"basis_channel", v.basis_channel}}},
              {"diagnostics", result.diagnostics}};
  if (options.request_id) out["request_id"] = *options.request_id;
  if (options.include_timing) out["timing_ms"] = result.timing_ms;
  return out;
}

FactCheckResult result_from_json(const json& j) {
  try {
    FactCheckResult r;
    r.claim = j.at("claim").get<std::string>();
    r.query = query_from_json(j.at("query"));
    r.fallback_query = j.at("fallback_query").get<bool>();
    for (const auto& c : j.at("channels")) {
      ChannelResult ch;
      ch.channel = parse_enum(c.at("channel"), &parse_reliability, "channel");
      ch.source = parse_enum(c.at("source"), &parse_channel_source, "channel source");
      ch.query = query_from_json(c.at("query"));
      ch.relaxations = c.at("relaxations").get<std::size_t>();
      for (const auto& d : c.at("documents")) ch.documents.push_back(document_from_json(d));
      if (!c.at("aggregate").is_null()) ch.aggregate = dist_from_json(c.at("aggregate"));
      if (!c.at("error").is_null()) ch.error = c.at("error").get<std::string>();
      r.channels.push_back(std::move(ch));
    }
    const auto& v = j.at("verdict");
    r.verdict.label = parse_enum(v.at("label"), &parse_verdict, "verdict label");
    r.verdict.agree_score = v.at("agree_score").get<double>();
    r.verdict.disagree_score = v.at("disagree_score").get<double>();
    r.verdict.discuss_score = v.at("discuss_score").get<double>();
    r.verdict.top_score = v.at("top_score").get<double>();
    r.verdict.basis_channel = v.at("basis_channel").get<std::string>();
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError("<json>", 0, e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fakta
