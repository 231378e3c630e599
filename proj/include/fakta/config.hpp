// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fakta/pipeline.hpp"

namespace fakta {

struct ProviderConfig {
  enum class Kind { None, Stub, Http };
  Kind kind = Kind::None;
  std::filesystem::path stub_dir;
  HttpSearchProvider::Options http;
};

struct ServiceConfig {
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> static_dir;
};

// Everything a config file can set. Relative paths are resolved against the
// directory of the file they were read from.
struct AppConfig {
  PipelineConfig pipeline;
  std::optional<std::filesystem::path> index_dir;
  std::optional<std::filesystem::path> corpus;  // indexed in memory when index_dir is unset
  std::optional<std::filesystem::path> registry;
  std::optional<std::filesystem::path> model;
  std::vector<std::pair<std::string, std::filesystem::path>> lexicons;
  ProviderConfig provider;
  ServiceConfig service;
};

// Parses the INI/TOML-like format:
//
//   # comment
//   [pipeline]
//   k = 5
//   model = "dfr_z"
//   nei_threshold = 2.0
//   label_mode = "3lbl"        # or "2lbl"
//   basis = "wikipedia"        # any channel, or "mean"
//   [channels]
//   wikipedia = "local"        # local | external | off
//   [paths]
//   index = "index/"
//   [lexicons]
//   subjectivity = "lexicons/subjectivity.txt"
//   [provider]
//   kind = "stub"              # none | stub | http
//   [service]
//   port = 8080
//
// Unknown sections or keys and malformed values raise ParseError.
AppConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                       std::string_view source = "<memory>");
AppConfig load_config(const std::filesystem::path& path);

// $FAKTA_CONFIG, when set and non-empty.
std::optional<std::filesystem::path> config_path_from_env();

// Loaded, immutable artifacts plus the pipeline resources pointing into them.
struct Artifacts {
  std::unique_ptr<Index> index;
  std::unique_ptr<SourceRegistry> registry;
  std::unique_ptr<StanceScorer> scorer;
  std::vector<Lexicon> lexicons;
  std::unique_ptr<ExternalSearchProvider> provider;
  std::vector<std::string> warnings;

  PipelineResources resources() const;
};

// Loads whatever the config names; unset paths leave the matching member null.
Artifacts load_artifacts(const AppConfig& config);

}  // namespace fakta
