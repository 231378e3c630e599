// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fakta/pipeline.hpp"

namespace fakta {

struct SerializeOptions {
  bool include_timing = true;
  std::optional<std::string> request_id;
};

nlohmann::json to_json(const StanceDistribution& dist);
nlohmann::json to_json(const Query& query);
nlohmann::json to_json(const LinguisticProfile& profile);
nlohmann::json to_json(const WordCloudData& cloud);
nlohmann::json to_json(const SentenceRationale& rationale, std::string_view text);
nlohmann::json to_json(const AnalyzedDocument& doc);
nlohmann::json to_json(const FactCheckResult& result, const SerializeOptions& options = {});

// Inverse of to_json(FactCheckResult). Sentence token lists are not part of
// the wire format and come back empty. Throws ParseError on a schema mismatch.
FactCheckResult result_from_json(const nlohmann::json& j);

// Stable text form: two-space indentation, keys in lexicographic order.
std::string dump(const nlohmann::json& j);

}  // namespace fakta
