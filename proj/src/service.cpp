// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/service.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fakta/error.hpp"
#include "fakta/serialize.hpp"
#include "util.hpp"

namespace fakta {

using nlohmann::json;

namespace {

HttpResponse error_response(int status, const std::string& message) {
  return {status, dump(json{{"error", message}, {"status", status}})};
}

// Applies the optional overrides of a check request.
PipelineConfig apply_overrides(PipelineConfig config, const json& req) {
  if (req.contains("k")) {
    if (!req["k"].is_number_integer() || req["k"].get<long long>() < 1) {
      throw ArgumentError("k must be a positive integer");
    }
    config.k = req["k"].get<std::size_t>();
  }
  if (req.contains("model")) {
    if (!req["model"].is_string()) throw ArgumentError("model must be a string");
    config.model = RetrievalModel::parse(req["model"].get<std::string>());
  }
  if (req.contains("label_mode")) {
    const auto m = req["label_mode"].is_string() ? parse_label_mode(req["label_mode"].get<std::string>())
                                                 : std::nullopt;
    if (!m) throw ArgumentError("label_mode must be 2lbl or 3lbl");
    config.label_mode = *m;
  }
  if (req.contains("channels")) {
    if (!req["channels"].is_array()) throw ArgumentError("channels must be an array");
    std::array<bool, 4> wanted{};
    for (const auto& c : req["channels"]) {
      const auto r = c.is_string() ? parse_reliability(c.get<std::string>()) : std::nullopt;
      if (!r) throw ArgumentError("unknown channel " + c.dump());
      wanted[static_cast<std::size_t>(*r)] = true;
    }
    for (auto r : kAllChannels) {
      auto& src = config.source(r);
      if (!wanted[static_cast<std::size_t>(r)]) {
        src = ChannelSource::Disabled;
      } else if (src == ChannelSource::Disabled) {
        src = ChannelSource::Local;
      }
    }
  }
  config.validate();
  return config;
}

bool resources_ready(const FactChecker& checker, const PipelineConfig& config) {
  const auto& res = checker.resources();
  if (!res.scorer) return false;
  for (auto r : kAllChannels) {
    if (config.source(r) == ChannelSource::Local && !res.index) return false;
  }
  return true;
}

}  // namespace

Service::Service(const FactChecker* checker, ServiceOptions options)
    : checker_(checker), options_(std::move(options)) {}

std::string Service::request_id(std::string_view claim) {
  return detail::hex64(detail::fnv1a64(detail::trim(claim)));
}

std::optional<FactCheckResult> Service::cached(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(id);
  if (it == cache_.end()) return std::nullopt;
  lru_.splice(lru_.begin(), lru_, it->second.second);
  return it->second.first;
}

void Service::remember(const std::string& id, const FactCheckResult& result) const {
  if (options_.cache_capacity == 0) return;
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(id); it != cache_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second.second);
    it->second.first = result;
    return;
  }
  lru_.push_front(id);
  cache_.emplace(id, std::make_pair(result, lru_.begin()));
  while (cache_.size() > options_.cache_capacity) {
    cache_.erase(lru_.back());
    lru_.pop_back();
  }
}

HttpResponse Service::health() const {
  return {200, dump(json{{"status", "ok"}, {"loaded", checker_ != nullptr}})};
}

HttpResponse Service::check(std::string_view request_body) const {
  json req;
  try {
    req = json::parse(request_body);
  } catch (const json::parse_error&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!req.is_object() || !req.contains("claim") || !req["claim"].is_string()) {
    return error_response(400, "request must be an object with a string 'claim'");
  }
  const std::string claim = req["claim"].get<std::string>();
  if (detail::trim(claim).empty()) return error_response(400, "claim is empty");
  if (!checker_) return error_response(503, "pipeline artifacts are not loaded");

  PipelineConfig config;
  try {
    config = apply_overrides(checker_->config(), req);
  } catch (const ArgumentError& e) {
    return error_response(400, e.what());
  }
  if (!resources_ready(*checker_, config)) {
    return error_response(503, "index or stance model is not loaded");
  }

  FactCheckResult result;
  try {
    result = checker_->check(claim, config);
  } catch (const PipelineError& e) {
    return error_response(502, e.what());
  } catch (const Error& e) {
    return error_response(500, e.what());
  }

  const std::string id = request_id(claim);
  remember(id, result);
  SerializeOptions so;
  so.request_id = id;
  HttpResponse res{200, dump(to_json(result, so))};

  bool any_external = false;
  bool all_external_failed = true;
  for (const auto& ch : result.channels) {
    if (ch.source != ChannelSource::External) continue;
    any_external = true;
    if (!ch.error) all_external_failed = false;
  }
  const auto* wiki = result.channel(Reliability::Wikipedia);
  if (any_external && all_external_failed && wiki && !wiki->error) res.status = 502;
  return res;
}

HttpResponse Service::document(std::string_view doc_id,
                               const std::map<std::string, std::string>& params) const {
  std::optional<StanceLabel> sort;
  if (auto it = params.find("sort"); it != params.end() && !it->second.empty()) {
    sort = parse_stance(it->second);
    if (!sort) return error_response(400, "sort must be agree, disagree, discuss or unrelated");
  }

  std::optional<FactCheckResult> result;
  std::string claim_id;
  if (auto it = params.find("claim_id"); it != params.end()) {
    claim_id = it->second;
    result = cached(claim_id);
    if (!result) return error_response(404, "unknown claim_id '" + claim_id + "'");
  } else if (auto it2 = params.find("claim"); it2 != params.end()) {
    if (detail::trim(it2->second).empty()) return error_response(400, "claim is empty");
    if (!checker_) return error_response(503, "pipeline artifacts are not loaded");
    claim_id = request_id(it2->second);
    result = cached(claim_id);
    if (!result) {
      try {
        result = checker_->check(it2->second);
      } catch (const Error& e) {
        return error_response(502, e.what());
      }
      remember(claim_id, *result);
    }
  } else {
    return error_response(400, "claim_id or claim is required");
  }

  for (const auto& ch : result->channels) {
    for (const auto& d : ch.documents) {
      if (d.record.doc_id != doc_id) continue;
      AnalyzedDocument doc = d;
      if (sort) doc.rationales = sort_rationales(std::move(doc.rationales), *sort);
      json out = to_json(doc);
      out["channel"] = to_string(ch.channel);
      out["claim_id"] = claim_id;
      out["claim"] = result->claim;
      out["sort"] = sort ? json(to_string(*sort)) : json(nullptr);
      return {200, dump(out)};
    }
  }
  return error_response(404, "document '" + std::string(doc_id) + "' is not part of this result");
}

// ---------------------------------------------------------------------------
// HTTP transport

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(const Service& s) : service(s) {}

  static void send(httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  }

  void configure() {
    const std::string origin = service.options().cors_origin;
    server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      send(res, service.health());
    });
    server.Post("/api/check", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.check(req.body));
    });
    server.Get(R"(/api/document/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> params;
      for (const auto& [k, v] : req.params) params[k] = v;
      send(res, service.document(req.matches[1].str(), params));
    });
    if (const auto& dir = service.options().static_dir) {
      server.set_mount_point("/", dir->string());
    }
  }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {
  impl_->configure();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace fakta
