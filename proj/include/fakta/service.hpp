// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "fakta/pipeline.hpp"

namespace fakta {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> static_dir;
  std::size_t cache_capacity = 256;
};

// Request handling for the JSON API, independent of any transport.
//
//   POST /api/check            {"claim": "...", "k"?, "model"?, "label_mode"?, "channels"?: [...]}
//   GET  /api/document/{id}    ?claim_id=<request id> | ?claim=<text>, optional &sort=<label>
//   GET  /api/health
class Service {
 public:
  // `checker` may be null, in which case every check answers 503.
  Service(const FactChecker* checker, ServiceOptions options = {});

  const ServiceOptions& options() const { return options_; }

  HttpResponse check(std::string_view request_body) const;
  HttpResponse document(std::string_view doc_id,
                        const std::map<std::string, std::string>& params) const;
  HttpResponse health() const;

  // Identifier echoed in check responses and accepted as claim_id.
  static std::string request_id(std::string_view claim);

 private:
  std::optional<FactCheckResult> cached(const std::string& id) const;
  void remember(const std::string& id, const FactCheckResult& result) const;

  const FactChecker* checker_;
  ServiceOptions options_;

  mutable std::mutex mutex_;
  mutable std::list<std::string> lru_;
  mutable std::unordered_map<std::string, std::pair<FactCheckResult, std::list<std::string>::iterator>>
      cache_;
};

// HTTP front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread; returns the bound port (useful
  // with port 0). Throws Error when binding fails.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fakta
