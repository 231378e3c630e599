// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/sources.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "util.hpp"

namespace fakta {

namespace {

bool valid_host_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool valid_host(std::string_view host) {
  if (host.empty() || host.front() == '.' || host.back() == '.') return false;
  if (host.find("..") != std::string_view::npos) return false;
  for (char c : host) {
    if (!valid_host_char(c)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Reliability r) {
  switch (r) {
    case Reliability::Wikipedia: return "wikipedia";
    case Reliability::High: return "high";
    case Reliability::Mixed: return "mixed";
    case Reliability::Low: return "low";
  }
  return "unknown";
}

std::optional<Reliability> parse_reliability(std::string_view label) {
  const std::string l = detail::to_lower_ascii(detail::trim(label));
  for (auto r : kAllChannels) {
    if (to_string(r) == l) return r;
  }
  return std::nullopt;
}

std::string host_of(std::string_view url) {
  std::string_view rest = detail::trim(url);
  bool has_scheme = false;
  if (auto pos = rest.find("://"); pos != std::string_view::npos) {
    const auto scheme = rest.substr(0, pos);
    if (scheme.empty() || scheme.find_first_of(" /?#") != std::string_view::npos) {
      throw InvalidUrl(std::string(url));
    }
    rest = rest.substr(pos + 3);
    has_scheme = true;
  }
  auto end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, end);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
  if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    authority = authority.substr(0, colon);
  }
  std::string host = detail::to_lower_ascii(authority);
  if (!valid_host(host) || (!has_scheme && host.find('.') == std::string::npos)) {
    throw InvalidUrl(std::string(url));
  }
  return host;
}

SourceRegistry SourceRegistry::parse(std::string_view csv, std::string_view source,
                                     std::vector<std::string>* warnings) {
  SourceRegistry registry;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (auto line : detail::split_lines(csv)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != 2) {
      throw ParseError(std::string(source), line_no, "expected 'domain,reliability'");
    }
    if (!header_seen) {
      header_seen = true;
      if (detail::trim(fields[0]) == "domain" && detail::trim(fields[1]) == "reliability") continue;
    }
    const auto reliability = parse_reliability(fields[1]);
    if (!reliability) {
      throw ParseError(std::string(source), line_no,
                       "unknown reliability label '" + std::string(detail::trim(fields[1])) + "'");
    }
    std::string domain;
    try {
      domain = host_of(fields[0]);
    } catch (const InvalidUrl&) {
      throw ParseError(std::string(source), line_no,
                       "invalid domain '" + std::string(detail::trim(fields[0])) + "'");
    }
    auto [it, inserted] = registry.records_.insert_or_assign(domain, *reliability);
    if (!inserted && warnings) {
      warnings->push_back(std::string(source) + ":" + std::to_string(line_no) +
                          ": duplicate domain '" + domain + "', last entry wins");
    }
  }
  return registry;
}

SourceRegistry SourceRegistry::load(const std::filesystem::path& path,
                                    std::vector<std::string>* warnings) {
  return parse(detail::read_file(path), path.string(), warnings);
}

std::optional<Reliability> SourceRegistry::lookup_host(std::string_view host) const {
  std::string h = detail::to_lower_ascii(host);
  while (!h.empty()) {
    if (auto it = records_.find(h); it != records_.end()) return it->second;
    const auto dot = h.find('.');
    if (dot == std::string::npos) break;
    h.erase(0, dot + 1);
  }
  return std::nullopt;
}

std::vector<std::string> SourceRegistry::domains(Reliability r) const {
  std::vector<std::string> out;
  for (const auto& [domain, rel] : records_) {
    if (rel == r) out.push_back(domain);
  }
  return out;
}

std::optional<Reliability> classify_domain(const SourceRegistry& registry, std::string_view url) {
  return registry.lookup_host(host_of(url));
}

// ---------------------------------------------------------------------------
// Providers

std::string StubSearchProvider::query_fixture_key(const std::vector<std::string>& terms) {
  std::string joined;
  for (const auto& t : terms) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  return detail::hex64(detail::fnv1a64(joined));
}

std::vector<ExternalHit> StubSearchProvider::search(const std::vector<std::string>& terms,
                                                    const std::vector<std::string>& /*whitelist*/,
                                                    std::size_t k) {
  const auto path = dir_ / (query_fixture_key(terms) + ".jsonl");
  if (!std::filesystem::exists(path)) return {};
  const std::string content = detail::read_file(path);
  std::vector<ExternalHit> hits;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(content)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    if (obj.contains("error")) throw Error("stub provider: " + obj["error"].get<std::string>());
    hits.push_back({obj.value("url", std::string{}), obj.value("title", std::string{}),
                    obj.value("body", std::string{})});
    if (hits.size() >= k) break;
  }
  return hits;
}

HttpSearchProvider::HttpSearchProvider(Options options) : options_(std::move(options)) {
  if (options_.api_key.empty()) {
    if (const char* key = std::getenv("FAKTA_SEARCH_KEY")) options_.api_key = key;
  }
  std::string_view url = options_.base_url;
  constexpr std::string_view scheme = "http://";
  if (!url.starts_with(scheme)) {
    throw ArgumentError("search endpoint must be an http:// URL: '" + options_.base_url + "'");
  }
  url.remove_prefix(scheme.size());
  const auto slash = url.find('/');
  std::string_view authority = url.substr(0, slash);
  path_ = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
  if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    port_ = std::atoi(std::string(authority.substr(colon + 1)).c_str());
    authority = authority.substr(0, colon);
  }
  host_ = std::string(authority);
  if (host_.empty() || port_ <= 0) throw ArgumentError("bad search endpoint '" + options_.base_url + "'");
}

std::vector<ExternalHit> HttpSearchProvider::search(const std::vector<std::string>& terms,
                                                    const std::vector<std::string>& whitelist,
                                                    std::size_t k) {
  std::string q;
  for (const auto& t : terms) q += (q.empty() ? "" : " ") + t;
  std::string sites;
  for (const auto& d : whitelist) sites += (sites.empty() ? "" : ",") + d;

  httplib::Params params{{"q", q}, {"sites", sites}, {"num", std::to_string(k)}};
  if (!options_.api_key.empty()) params.emplace("key", options_.api_key);

  httplib::Client client(host_, port_);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  auto res = client.Get(path_, params, httplib::Headers{});
  if (!res) throw Error("search request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error("search endpoint returned HTTP " + std::to_string(res->status));

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("search endpoint returned invalid JSON: ") + e.what());
  }
  std::vector<ExternalHit> hits;
  if (!body.contains("items")) return hits;
  for (const auto& item : body["items"]) {
    ExternalHit hit;
    hit.url = item.value("link", std::string{});
    hit.title = item.value("title", std::string{});
    const std::string snippet = item.value("snippet", std::string{});
    if (options_.full_text && item.contains("content")) {
      hit.body = item["content"].get<std::string>();
    } else {
      hit.body = hit.title.empty() ? snippet : hit.title + ". " + snippet;
    }
    hits.push_back(std::move(hit));
    if (hits.size() >= k) break;
  }
  return hits;
}

std::vector<ExternalDocument> external_search(ExternalSearchProvider& provider,
                                              const SourceRegistry& registry, const Query& query,
                                              Reliability channel, std::size_t k) {
  if (k == 0) throw ArgumentError("k must be >= 1");
  std::vector<ExternalHit> raw;
  try {
    raw = provider.search(query.terms, registry.domains(channel), k);
  } catch (const ProviderError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProviderError(channel, e.what());
  }
  std::vector<ExternalDocument> out;
  for (std::size_t i = 0; i < raw.size() && out.size() < k; ++i) {
    std::string host;
    try {
      host = host_of(raw[i].url);
    } catch (const InvalidUrl&) {
      continue;
    }
    if (registry.lookup_host(host) != channel) continue;
    ExternalDocument doc;
    doc.record = {raw[i].url, raw[i].title, raw[i].body, host};
    doc.hit.doc_id = raw[i].url;
    doc.hit.score_init = 1.0 / static_cast<double>(i + 1);
    doc.hit.rank = out.size() + 1;
    out.push_back(std::move(doc));
  }
  return out;
}

}  // namespace fakta
