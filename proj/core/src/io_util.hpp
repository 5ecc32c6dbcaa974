// Copyright 2026 The pvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text and file helpers shared by the core sources.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pvqc::detail {

std::string_view trim(std::string_view s);

/// Splits on commas; no quoting support beyond what the formats here need.
std::vector<std::string_view> split_csv(std::string_view line);

/// Shortest fixed-notation text that parses back to exactly `v`.
std::string format_decimal(double v);

/// Writes `contents` to a sibling temp file and renames it over `path`.
/// Throws IoError naming the path on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace pvqc::detail
