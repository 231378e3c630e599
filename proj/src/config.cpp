// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/config.hpp"

#include <charconv>
#include <cstdlib>

#include "fakta/error.hpp"
#include "util.hpp"

namespace fakta {

namespace {

struct Value {
  std::string text;
  bool quoted = false;
};

class ConfigReader {
 public:
  ConfigReader(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(std::string(source_), line_, what);
  }

  std::size_t to_size(const Value& v, std::string_view key) const {
    std::size_t out = 0;
    const auto* end = v.text.data() + v.text.size();
    auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
    if (ec != std::errc{} || ptr != end) fail("'" + std::string(key) + "' expects a non-negative integer");
    return out;
  }

  double to_double(const Value& v, std::string_view key) const {
    char* end = nullptr;
    const double out = std::strtod(v.text.c_str(), &end);
    if (v.text.empty() || end != v.text.c_str() + v.text.size()) {
      fail("'" + std::string(key) + "' expects a number");
    }
    return out;
  }

  bool to_bool(const Value& v, std::string_view key) const {
    if (v.text == "true") return true;
    if (v.text == "false") return false;
    fail("'" + std::string(key) + "' expects true or false");
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

AppConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                       std::string_view source) {
  AppConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    const auto line = detail::trim(strip_comment(raw));
    if (line.empty()) continue;
    ConfigReader r(source, line_no);
    if (line.front() == '[') {
      if (line.back() != ']') r.fail("unterminated section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "pipeline" && section != "channels" && section != "paths" &&
          section != "lexicons" && section != "provider" && section != "service") {
        r.fail("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) r.fail("expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    auto rhs = detail::trim(line.substr(eq + 1));
    Value v;
    if (rhs.size() >= 2 && rhs.front() == '"' && rhs.back() == '"') {
      v.text = std::string(rhs.substr(1, rhs.size() - 2));
      v.quoted = true;
    } else {
      v.text = std::string(rhs);
    }
    if (key.empty()) r.fail("empty key");
    if (section.empty()) r.fail("key '" + key + "' outside of a section");

    auto& p = cfg.pipeline;
    if (section == "pipeline") {
      if (key == "k") {
        p.k = r.to_size(v, key);
      } else if (key == "model") {
        try {
          p.model = RetrievalModel::parse(v.text);
        } catch (const ArgumentError& e) {
          r.fail(e.what());
        }
      } else if (key == "k1") {
        p.model.k1 = r.to_double(v, key);
      } else if (key == "b") {
        p.model.b = r.to_double(v, key);
      } else if (key == "mu") {
        p.model.mu = r.to_double(v, key);
      } else if (key == "z") {
        p.model.z = r.to_double(v, key);
      } else if (key == "lambda") {
        p.model.lambda = r.to_double(v, key);
      } else if (key == "nei_threshold") {
        p.nei_threshold = r.to_double(v, key);
      } else if (key == "label_mode") {
        auto m = parse_label_mode(v.text);
        if (!m) r.fail("label_mode must be 2lbl or 3lbl");
        p.label_mode = *m;
      } else if (key == "max_relaxations") {
        p.max_relaxations = r.to_size(v, key);
      } else if (key == "basis") {
        if (v.text == "mean") {
          p.basis.reset();
        } else {
          auto c = parse_reliability(v.text);
          if (!c) r.fail("basis must be a channel name or 'mean'");
          p.basis = *c;
        }
      } else if (key == "rerank") {
        p.rerank = r.to_bool(v, key);
      } else if (key == "rerank_depth") {
        p.rerank_depth = r.to_size(v, key);
      } else if (key == "count_mode") {
        if (v.text == "multiset") {
          p.count_mode = CountMode::Multiset;
        } else if (v.text == "types") {
          p.count_mode = CountMode::Types;
        } else {
          r.fail("count_mode must be multiset or types");
        }
      } else if (key == "word_cloud_top_n") {
        p.word_cloud_top_n = r.to_size(v, key);
      } else if (key == "threads") {
        p.threads = r.to_size(v, key);
      } else {
        r.fail("unknown key '" + key + "' in [pipeline]");
      }
    } else if (section == "channels") {
      auto c = parse_reliability(key);
      if (!c) r.fail("unknown channel '" + key + "'");
      auto s = parse_channel_source(v.text);
      if (!s) r.fail("channel source must be local, external or off");
      p.source(*c) = *s;
    } else if (section == "paths") {
      const auto path = resolve(base_dir, v.text);
      if (key == "index") {
        cfg.index_dir = path;
      } else if (key == "corpus") {
        cfg.corpus = path;
      } else if (key == "registry") {
        cfg.registry = path;
      } else if (key == "model") {
        cfg.model = path;
      } else {
        r.fail("unknown key '" + key + "' in [paths]");
      }
    } else if (section == "lexicons") {
      cfg.lexicons.emplace_back(key, resolve(base_dir, v.text));
    } else if (section == "provider") {
      auto& pr = cfg.provider;
      if (key == "kind") {
        if (v.text == "none") {
          pr.kind = ProviderConfig::Kind::None;
        } else if (v.text == "stub") {
          pr.kind = ProviderConfig::Kind::Stub;
        } else if (v.text == "http") {
          pr.kind = ProviderConfig::Kind::Http;
        } else {
          r.fail("provider kind must be none, stub or http");
        }
      } else if (key == "stub_dir") {
        pr.stub_dir = resolve(base_dir, v.text);
      } else if (key == "base_url") {
        pr.http.base_url = v.text;
      } else if (key == "full_text") {
        pr.http.full_text = r.to_bool(v, key);
      } else if (key == "timeout_seconds") {
        pr.http.timeout_seconds = static_cast<int>(r.to_size(v, key));
      } else {
        r.fail("unknown key '" + key + "' in [provider]");
      }
    } else if (section == "service") {
      if (key == "port") {
        cfg.service.port = static_cast<int>(r.to_size(v, key));
      } else if (key == "host") {
        cfg.service.host = v.text;
      } else if (key == "cors_origin") {
        cfg.service.cors_origin = v.text;
      } else if (key == "static_dir") {
        cfg.service.static_dir = resolve(base_dir, v.text);
      } else {
        r.fail("unknown key '" + key + "' in [service]");
      }
    }
  }
  try {
    cfg.pipeline.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(source), line_no, e.what());
  }
  return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
  const auto text = detail::read_file(path);
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(text, base, path.string());
}

std::optional<std::filesystem::path> config_path_from_env() {
  const char* v = std::getenv("FAKTA_CONFIG");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

PipelineResources Artifacts::resources() const {
  PipelineResources r;
  r.index = index.get();
  r.registry = registry.get();
  r.scorer = scorer.get();
  r.lexicons = lexicons;
  r.provider = provider.get();
  return r;
}

Artifacts load_artifacts(const AppConfig& config) {
  Artifacts a;
  if (config.index_dir) {
    a.index = std::make_unique<Index>(Index::load(*config.index_dir));
  } else if (config.corpus) {
    a.index = std::make_unique<Index>(Index::build(load_corpus(*config.corpus)));
  }
  if (config.registry) {
    a.registry = std::make_unique<SourceRegistry>(SourceRegistry::load(*config.registry, &a.warnings));
  }
  if (config.model) {
    a.scorer = std::make_unique<LinearStanceScorer>(StanceModel::load(*config.model));
  }
  for (const auto& [name, path] : config.lexicons) a.lexicons.push_back(load_lexicon(path, name));
  switch (config.provider.kind) {
    case ProviderConfig::Kind::None:
      break;
    case ProviderConfig::Kind::Stub:
      a.provider = std::make_unique<StubSearchProvider>(config.provider.stub_dir);
      break;
    case ProviderConfig::Kind::Http:
      a.provider = std::make_unique<HttpSearchProvider>(config.provider.http);
      break;
  }
  return a;
}

}  // namespace fakta
