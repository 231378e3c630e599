// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <string_view>

namespace fakta::bundled {

extern const std::string_view kTagLexicon;
extern const std::string_view kGazetteer;
extern const std::string_view kStopwords;
extern const std::string_view kAbbreviations;

}  // namespace fakta::bundled
