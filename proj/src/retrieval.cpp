// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "binary_io.hpp"
#include "fakta/error.hpp"
#include "util.hpp"

namespace fakta {

namespace {

constexpr std::string_view kIndexMagic = "FKTAIDX1";
constexpr std::uint32_t kIndexVersion = 1;
constexpr const char* kIndexFile = "index.bin";

std::string require_string(const nlohmann::json& obj, const char* field, std::string_view source,
                           std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(std::string(source), line, std::string("missing string field '") + field + "'");
  }
  return it->get<std::string>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus

std::vector<DocumentRecord> parse_corpus(std::string_view jsonl, std::string_view source) {
  std::vector<DocumentRecord> docs;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(jsonl)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string(source), line_no, e.what());
    }
    if (!obj.is_object()) throw ParseError(std::string(source), line_no, "expected a JSON object");
    DocumentRecord doc;
    doc.doc_id = require_string(obj, "doc_id", source, line_no);
    doc.title = obj.value("title", std::string{});
    doc.body = require_string(obj, "body", source, line_no);
    doc.source_domain = obj.value("source_domain", std::string{});
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(detail::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Index

Index Index::build(std::vector<DocumentRecord> docs) {
  Index index;
  index.docs_ = std::move(docs);
  index.doc_lengths_.reserve(index.docs_.size());
  for (std::uint32_t d = 0; d < index.docs_.size(); ++d) {
    const auto& doc = index.docs_[d];
    if (!index.by_id_.emplace(doc.doc_id, d).second) {
      throw BuildError("duplicate doc_id '" + doc.doc_id + "'");
    }
    std::map<std::string, std::uint32_t> counts;
    std::uint32_t length = 0;
    for (const auto* field : {&doc.title, &doc.body}) {
      for (auto& tok : tokenize(*field)) {
        if (!tok.is_word()) continue;
        ++counts[std::move(tok.normalized)];
        ++length;
      }
    }
    index.doc_lengths_.push_back(length);
    for (auto& [term, tf] : counts) {
      auto& entry = index.terms_[term];
      entry.ctf += tf;
      entry.postings.push_back({d, tf});
    }
  }
  index.finalize_stats();
  return index;
}

void Index::finalize_stats() {
  stats_ = {};
  stats_.doc_count = docs_.size();
  for (auto len : doc_lengths_) stats_.total_tokens += len;
  stats_.avg_doc_len = stats_.doc_count == 0
                           ? 0.0
                           : static_cast<double>(stats_.total_tokens) /
                                 static_cast<double>(stats_.doc_count);
}

void Index::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  detail::BinaryWriter w;
  w.put_bytes(kIndexMagic);
  w.put<std::uint32_t>(kIndexVersion);
  w.put<std::uint64_t>(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    w.put_string(docs_[d].doc_id);
    w.put_string(docs_[d].title);
    w.put_string(docs_[d].body);
    w.put_string(docs_[d].source_domain);
    w.put<std::uint32_t>(doc_lengths_[d]);
  }
  std::vector<const std::pair<const std::string, TermEntry>*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& kv : terms_) sorted.push_back(&kv);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->first < b->first; });
  w.put<std::uint64_t>(sorted.size());
  for (const auto* kv : sorted) {
    w.put_string(kv->first);
    w.put<std::uint64_t>(kv->second.ctf);
    w.put<std::uint64_t>(kv->second.postings.size());
    for (const auto& p : kv->second.postings) {
      w.put<std::uint32_t>(p.doc);
      w.put<std::uint32_t>(p.tf);
    }
  }
  detail::write_file(dir / kIndexFile, w.data());
}

Index Index::load(const std::filesystem::path& dir) {
  const auto path = dir / kIndexFile;
  const std::string data = detail::read_file(path);
  detail::BinaryReader r(data, path.string());
  if (r.get_bytes(kIndexMagic.size()) != kIndexMagic) {
    throw IoError(path.string() + ": not a fakta index");
  }
  if (const auto version = r.get<std::uint32_t>(); version != kIndexVersion) {
    throw IoError(path.string() + ": unsupported index version " + std::to_string(version));
  }
  Index index;
  const auto n_docs = r.get<std::uint64_t>();
  for (std::uint64_t d = 0; d < n_docs; ++d) {
    DocumentRecord doc;
    doc.doc_id = r.get_string();
    doc.title = r.get_string();
    doc.body = r.get_string();
    doc.source_domain = r.get_string();
    index.by_id_.emplace(doc.doc_id, static_cast<std::uint32_t>(d));
    index.docs_.push_back(std::move(doc));
    index.doc_lengths_.push_back(r.get<std::uint32_t>());
  }
  const auto n_terms = r.get<std::uint64_t>();
  for (std::uint64_t t = 0; t < n_terms; ++t) {
    std::string term = r.get_string();
    TermEntry entry;
    entry.ctf = r.get<std::uint64_t>();
    const auto n_postings = r.get<std::uint64_t>();
    entry.postings.reserve(n_postings);
    for (std::uint64_t p = 0; p < n_postings; ++p) {
      Posting posting;
      posting.doc = r.get<std::uint32_t>();
      posting.tf = r.get<std::uint32_t>();
      if (posting.doc >= index.docs_.size()) throw IoError(path.string() + ": corrupt posting");
      entry.postings.push_back(posting);
    }
    index.terms_.emplace(std::move(term), std::move(entry));
  }
  if (!r.at_end()) throw IoError(path.string() + ": trailing bytes");
  index.finalize_stats();
  return index;
}

std::uint32_t Index::df(std::string_view term) const {
  return static_cast<std::uint32_t>(postings(term).size());
}

std::uint64_t Index::ctf(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  return it == terms_.end() ? 0 : it->second.ctf;
}

std::span<const Posting> Index::postings(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  if (it == terms_.end()) return {};
  return it->second.postings;
}

std::optional<std::uint32_t> Index::find(std::string_view doc_id) const {
  auto it = by_id_.find(std::string(doc_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Index::tf(std::string_view term, std::uint32_t doc) const {
  const auto list = postings(term);
  auto it = std::lower_bound(list.begin(), list.end(), doc,
                             [](const Posting& p, std::uint32_t d) { return p.doc < d; });
  return (it != list.end() && it->doc == doc) ? it->tf : 0;
}

// ---------------------------------------------------------------------------
// Models

RetrievalModel RetrievalModel::bm25(double k1, double b) {
  RetrievalModel m;
  m.kind = ModelKind::BM25;
  m.k1 = k1;
  m.b = b;
  return m;
}

RetrievalModel RetrievalModel::classic() {
  RetrievalModel m;
  m.kind = ModelKind::ClassicTFIDF;
  return m;
}

RetrievalModel RetrievalModel::dfi() {
  RetrievalModel m;
  m.kind = ModelKind::DFI;
  return m;
}

RetrievalModel RetrievalModel::dfr_h3(double mu) {
  RetrievalModel m;
  m.kind = ModelKind::DFR_H3;
  m.mu = mu;
  return m;
}

RetrievalModel RetrievalModel::dfr_z(double z) {
  RetrievalModel m;
  m.kind = ModelKind::DFR_Z;
  m.z = z;
  return m;
}

RetrievalModel RetrievalModel::ib_ll() {
  RetrievalModel m;
  m.kind = ModelKind::IB_LL;
  return m;
}

RetrievalModel RetrievalModel::ib_spl() {
  RetrievalModel m;
  m.kind = ModelKind::IB_SPL;
  return m;
}

RetrievalModel RetrievalModel::lm_dirichlet(double mu) {
  RetrievalModel m;
  m.kind = ModelKind::LMDirichlet;
  m.mu = mu;
  return m;
}

RetrievalModel RetrievalModel::lm_jelinek(double lambda) {
  RetrievalModel m;
  m.kind = ModelKind::LMJelinek;
  m.lambda = lambda;
  return m;
}

std::string RetrievalModel::name() const {
  switch (kind) {
    case ModelKind::BM25: return "bm25";
    case ModelKind::ClassicTFIDF: return "classic";
    case ModelKind::DFI: return "dfi";
    case ModelKind::DFR_H3: return "dfr_h3";
    case ModelKind::DFR_Z: return "dfr_z";
    case ModelKind::IB_LL: return "ib_ll";
    case ModelKind::IB_SPL: return "ib_spl";
    case ModelKind::LMDirichlet: return "lm_dirichlet";
    case ModelKind::LMJelinek: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "lm_jelinek_%.2f", lambda);
      return buf;
    }
  }
  return "unknown";
}

RetrievalModel RetrievalModel::parse(std::string_view name) {
  const std::string n = detail::to_lower_ascii(name);
  if (n == "bm25") return bm25();
  if (n == "classic") return classic();
  if (n == "dfi") return dfi();
  if (n == "dfr_h3") return dfr_h3();
  if (n == "dfr_z") return dfr_z();
  if (n == "ib_ll") return ib_ll();
  if (n == "ib_spl") return ib_spl();
  if (n == "lm_dirichlet") return lm_dirichlet();
  if (n == "lm_jelinek") return lm_jelinek(0.10);
  constexpr std::string_view prefix = "lm_jelinek_";
  if (n.starts_with(prefix)) {
    try {
      std::size_t used = 0;
      const std::string value = n.substr(prefix.size());
      const double lambda = std::stod(value, &used);
      if (used == value.size()) {
        auto m = lm_jelinek(lambda);
        m.validate();
        return m;
      }
    } catch (const std::logic_error&) {
    }
  }
  throw ArgumentError("unknown retrieval model '" + std::string(name) + "'");
}

std::vector<RetrievalModel> RetrievalModel::all_variants() {
  return {bm25(),         classic(),           dfi(),
          dfr_h3(),       dfr_z(),             ib_ll(),
          ib_spl(),       lm_dirichlet(),      lm_jelinek(0.05),
          lm_jelinek(0.10), lm_jelinek(0.20)};
}

void RetrievalModel::validate() const {
  auto fail = [&](const std::string& what) { throw ArgumentError(name() + ": " + what); };
  switch (kind) {
    case ModelKind::BM25:
      if (!(k1 >= 0)) fail("k1 must be >= 0");
      if (!(b >= 0 && b <= 1)) fail("b must be in [0, 1]");
      break;
    case ModelKind::DFR_H3:
    case ModelKind::LMDirichlet:
      if (!(mu > 0)) fail("mu must be > 0");
      break;
    case ModelKind::DFR_Z:
      if (!(z > 0 && z < 0.5)) fail("z must be in (0, 0.5)");
      break;
    case ModelKind::LMJelinek:
      if (!(lambda > 0 && lambda < 1)) fail("lambda must be in (0, 1)");
      break;
    default:
      break;
  }
}

double term_score(const RetrievalModel& m, const TermContext& c) {
  if (c.tf <= 0) return 0.0;
  switch (m.kind) {
    case ModelKind::BM25: {
      const double idf = std::log(1.0 + (c.n_docs - c.df + 0.5) / (c.df + 0.5));
      const double norm = m.k1 * (1.0 - m.b + m.b * c.dl / c.avg_doc_len);
      return idf * c.tf * (m.k1 + 1.0) / (c.tf + norm);
    }
    case ModelKind::ClassicTFIDF: {
      const double idf = 1.0 + std::log(c.n_docs / (c.df + 1.0));
      return std::sqrt(c.tf) * idf * idf / std::sqrt(c.dl);
    }
    case ModelKind::DFI: {
      const double expected = c.dl * c.ctf / c.total_tokens;
      if (c.tf <= expected) return 0.0;
      return std::log2(1.0 + (c.tf - expected) / std::sqrt(expected));
    }
    case ModelKind::DFR_H3:
    case ModelKind::DFR_Z: {
      const double tfn =
          m.kind == ModelKind::DFR_H3
              ? (c.tf + m.mu * c.ctf / c.total_tokens) * c.avg_doc_len / (c.dl + m.mu)
              : c.tf * std::pow((1.0 + c.avg_doc_len) / (1.0 + c.dl), m.z);
      const double basic = tfn * std::log2(1.0 + (c.n_docs + 1.0) / (c.ctf + 0.5));
      const double after_effect = (c.ctf + 1.0) / (c.df * (tfn + 1.0));
      return basic * after_effect;
    }
    case ModelKind::IB_LL:
    case ModelKind::IB_SPL: {
      const double tfn = c.tf * std::log2(1.0 + c.avg_doc_len / c.dl);
      double lambda = c.df / c.n_docs;
      if (m.kind == ModelKind::IB_LL) return -std::log(lambda / (lambda + tfn));
      if (lambda >= 1.0) lambda = 0.99;
      return -std::log((std::pow(lambda, tfn / (tfn + 1.0)) - lambda) / (1.0 - lambda));
    }
    case ModelKind::LMDirichlet: {
      const double p_collection = c.ctf / c.total_tokens;
      const double s = std::log(1.0 + c.tf / (m.mu * p_collection)) + std::log(m.mu / (c.dl + m.mu));
      return std::max(0.0, s);
    }
    case ModelKind::LMJelinek: {
      const double p_collection = c.ctf / c.total_tokens;
      return std::log(1.0 + ((1.0 - m.lambda) / m.lambda) * (c.tf / c.dl) / p_collection);
    }
  }
  return 0.0;
}

namespace {

TermContext context_for(const Index& index, std::string_view term, std::uint32_t tf,
                        std::uint32_t doc) {
  const auto& st = index.stats();
  TermContext c;
  c.tf = tf;
  c.dl = index.doc_length(doc);
  c.df = index.df(term);
  c.ctf = static_cast<double>(index.ctf(term));
  c.n_docs = static_cast<double>(st.doc_count);
  c.total_tokens = static_cast<double>(st.total_tokens);
  c.avg_doc_len = st.avg_doc_len;
  return c;
}

}  // namespace

double score(const RetrievalModel& model, const Query& query, std::string_view doc_id,
             const Index& index) {
  const auto doc = index.find(doc_id);
  if (!doc) throw NotFound("unknown doc_id '" + std::string(doc_id) + "'");
  double total = 0.0;
  for (const auto& term : query.terms) {
    const auto tf = index.tf(term, *doc);
    if (tf == 0) continue;
    total += term_score(model, context_for(index, term, tf, *doc));
  }
  return total;
}

std::vector<ScoredDocument> search(const Index& index, const Query& query,
                                   const RetrievalModel& model, std::size_t k,
                                   const DocumentFilter& filter) {
  if (query.empty()) throw EmptyQuery();
  if (k == 0) throw ArgumentError("k must be >= 1");
  model.validate();

  std::vector<double> acc(index.size(), 0.0);
  std::vector<bool> matched(index.size(), false);
  for (const auto& term : query.terms) {
    for (const auto& p : index.postings(term)) {
      acc[p.doc] += term_score(model, context_for(index, term, p.tf, p.doc));
      matched[p.doc] = true;
    }
  }

  std::vector<std::uint32_t> hits;
  for (std::uint32_t d = 0; d < index.size(); ++d) {
    if (matched[d] && (!filter || filter(index.document(d)))) hits.push_back(d);
  }
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return index.document(a).doc_id < index.document(b).doc_id;
  };
  const std::size_t n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(), better);

  std::vector<ScoredDocument> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({index.document(hits[i]).doc_id, acc[hits[i]], i + 1, std::nullopt});
  }
  return out;
}

}  // namespace fakta
