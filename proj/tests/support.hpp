// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fakta/retrieval.hpp"

namespace fakta::test {

inline std::filesystem::path data_dir() { return FAKTA_TEST_DATA; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fakta-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-300) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(rel * scale, abs_floor);
}

// ---------------------------------------------------------------------------
// Brute-force retrieval oracle. Works on lowercase, whitespace-separated
// toy documents and recomputes every statistic by direct counting.

struct ToyDoc {
  std::string id;
  std::vector<std::string> words;
};

struct ToyCorpus {
  std::vector<ToyDoc> docs;

  std::vector<DocumentRecord> records() const {
    std::vector<DocumentRecord> out;
    for (const auto& d : docs) {
      std::string body;
      for (const auto& w : d.words) body += (body.empty() ? "" : " ") + w;
      out.push_back({d.id, "", body, "en.wikipedia.org"});
    }
    return out;
  }
};

inline ToyCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs = 20, std::size_t vocab = 8) {
  static const char* kVocab[] = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel"};
  std::uniform_int_distribution<std::size_t> ndocs(1, max_docs);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  ToyCorpus c;
  const std::size_t n = ndocs(rng);
  for (std::size_t i = 0; i < n; ++i) {
    ToyDoc d;
    char id[32];
    std::snprintf(id, sizeof id, "d%02zu", i);
    d.id = id;
    const std::size_t l = len(rng);
    for (std::size_t j = 0; j < l; ++j) d.words.push_back(kVocab[word(rng)]);
    c.docs.push_back(std::move(d));
  }
  return c;
}

// Written directly from the closed forms, with natural-log / log2 spelled out
// per model. Terms absent from the document contribute nothing.
inline double oracle_score(const RetrievalModel& m, const ToyCorpus& c, const std::vector<std::string>& query,
                           std::size_t doc) {
  const double N = static_cast<double>(c.docs.size());
  double T = 0;
  for (const auto& d : c.docs) T += static_cast<double>(d.words.size());
  const double avgdl = T / N;
  const double dl = static_cast<double>(c.docs[doc].words.size());
  double total = 0.0;
  for (const auto& t : query) {
    double tf = 0, df = 0, ctf = 0;
    for (std::size_t i = 0; i < c.docs.size(); ++i) {
      double f = 0;
      for (const auto& w : c.docs[i].words) f += (w == t) ? 1 : 0;
      if (f > 0) df += 1;
      ctf += f;
      if (i == doc) tf = f;
    }
    if (tf == 0) continue;
    const double pc = ctf / T;
    double s = 0.0;
    switch (m.kind) {
      case ModelKind::BM25:
        s = std::log(1 + (N - df + 0.5) / (df + 0.5)) * tf * (m.k1 + 1) /
            (tf + m.k1 * (1 - m.b + m.b * dl / avgdl));
        break;
      case ModelKind::ClassicTFIDF: {
        const double idf = 1 + std::log(N / (df + 1));
        s = std::sqrt(tf) * idf * idf * (1 / std::sqrt(dl));
        break;
      }
      case ModelKind::DFI: {
        const double e = dl * ctf / T;
        s = tf > e ? std::log(1 + (tf - e) / std::sqrt(e)) / std::log(2.0) : 0.0;
        break;
      }
      case ModelKind::DFR_H3:
      case ModelKind::DFR_Z: {
        const double tfn = m.kind == ModelKind::DFR_H3 ? (tf + m.mu * pc) * avgdl / (dl + m.mu)
                                                       : tf * std::pow((1 + avgdl) / (1 + dl), m.z);
        const double inf = tfn * std::log(1 + (N + 1) / (ctf + 0.5)) / std::log(2.0);
        s = inf * (ctf + 1) / (df * (tfn + 1));
        break;
      }
      case ModelKind::IB_LL:
      case ModelKind::IB_SPL: {
        const double tfn = tf * std::log(1 + avgdl / dl) / std::log(2.0);
        double lam = df / N;
        if (m.kind == ModelKind::IB_LL) {
          s = std::log((lam + tfn) / lam);
        } else {
          if (lam == 1.0) lam = 0.99;
          s = -std::log((std::pow(lam, tfn / (tfn + 1)) - lam) / (1 - lam));
        }
        break;
      }
      case ModelKind::LMDirichlet:
        s = std::log(1 + tf / (m.mu * pc)) + std::log(m.mu / (dl + m.mu));
        if (s < 0) s = 0;
        break;
      case ModelKind::LMJelinek:
        s = std::log(1 + ((1 - m.lambda) / m.lambda) * (tf / dl) / pc);
        break;
    }
    total += s;
  }
  return total;
}

// Ranked (doc index, score) of documents sharing a query term: score desc,
// id asc, first k.
inline std::vector<std::pair<std::string, double>> oracle_search(const RetrievalModel& m,
                                                                 const ToyCorpus& c,
                                                                 const std::vector<std::string>& query,
                                                                 std::size_t k) {
  std::vector<std::pair<std::string, double>> out;
  const std::set<std::string> qs(query.begin(), query.end());
  for (std::size_t i = 0; i < c.docs.size(); ++i) {
    bool hit = false;
    for (const auto& w : c.docs[i].words) hit = hit || qs.count(w);
    if (hit) out.emplace_back(c.docs[i].id, oracle_score(m, c, query, i));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace fakta::test
