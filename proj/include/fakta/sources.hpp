// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fakta/error.hpp"
#include "fakta/query.hpp"
#include "fakta/retrieval.hpp"

namespace fakta {

enum class Reliability { Wikipedia, High, Mixed, Low };

inline constexpr std::array<Reliability, 4> kAllChannels = {
    Reliability::Wikipedia, Reliability::High, Reliability::Mixed, Reliability::Low};

std::string_view to_string(Reliability r);
std::optional<Reliability> parse_reliability(std::string_view label);

struct SourceRecord {
  std::string domain;
  Reliability reliability;
};

// Host part of a URL, lowercased ("https://News.Example.com/a" -> "news.example.com").
// A bare hostname is accepted. Throws InvalidUrl.
std::string host_of(std::string_view url);

// Media-reliability registry. Lookups are suffix-aware: a record for
// example.com also covers news.example.com.
class SourceRegistry {
 public:
  // CSV with header "domain,reliability". Duplicate domains: last row wins
  // and a warning is appended. Throws ParseError / IoError.
  static SourceRegistry load(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);
  static SourceRegistry parse(std::string_view csv, std::string_view source = "<memory>",
                              std::vector<std::string>* warnings = nullptr);

  std::optional<Reliability> lookup_host(std::string_view host) const;
  std::vector<std::string> domains(Reliability r) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::string, Reliability> records_;
};

// Suffix-matched class of the URL's host; nullopt when unregistered.
std::optional<Reliability> classify_domain(const SourceRegistry& registry, std::string_view url);

// A transport or protocol failure talking to a search provider.
class ProviderError : public Error {
 public:
  ProviderError(Reliability channel, const std::string& what)
      : Error(std::string(to_string(channel)) + ": " + what), channel_(channel) {}

  Reliability channel() const { return channel_; }

 private:
  Reliability channel_;
};

struct ExternalHit {
  std::string url;
  std::string title;
  std::string body;
};

// Web search restricted to a domain whitelist. Implementations must be safe
// to call from several threads at once.
class ExternalSearchProvider {
 public:
  virtual ~ExternalSearchProvider() = default;

  // Ranked results, best first. Throws any Error on transport failure.
  virtual std::vector<ExternalHit> search(const std::vector<std::string>& terms,
                                          const std::vector<std::string>& whitelist,
                                          std::size_t k) = 0;
};

// Reads canned results from `<dir>/<query-hash>.jsonl`, where the hash is
// query_fixture_key(terms). Each line is {"url","title","body"}; a line
// {"error": "..."} makes the call fail. A missing file means no results.
class StubSearchProvider : public ExternalSearchProvider {
 public:
  explicit StubSearchProvider(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string query_fixture_key(const std::vector<std::string>& terms);

  std::vector<ExternalHit> search(const std::vector<std::string>& terms,
                                  const std::vector<std::string>& whitelist,
                                  std::size_t k) override;

 private:
  std::filesystem::path dir_;
};

// Generic JSON search API adapter:
//   GET <base_url>?q=<terms>&sites=<d1,d2,...>&num=<k>&key=<api key>
// answering {"items": [{"link", "title", "snippet", "content"?}]}.
// Only http:// endpoints are supported.
class HttpSearchProvider : public ExternalSearchProvider {
 public:
  struct Options {
    std::string base_url;
    std::string api_key;  // defaults to $FAKTA_SEARCH_KEY when empty
    bool full_text = false;  // use "content" when present instead of title + snippet
    int timeout_seconds = 10;
  };

  explicit HttpSearchProvider(Options options);

  std::vector<ExternalHit> search(const std::vector<std::string>& terms,
                                  const std::vector<std::string>& whitelist,
                                  std::size_t k) override;

 private:
  Options options_;
  std::string host_;
  int port_ = 80;
  std::string path_;
};

struct ExternalDocument {
  DocumentRecord record;
  ScoredDocument hit;
};

// Queries the provider for one reliability channel. Results outside the
// channel are dropped, score_init = 1 / rank, at most k are returned.
// Provider failures are rethrown as ProviderError(channel).
std::vector<ExternalDocument> external_search(ExternalSearchProvider& provider,
                                              const SourceRegistry& registry, const Query& query,
                                              Reliability channel, std::size_t k);

}  // namespace fakta
