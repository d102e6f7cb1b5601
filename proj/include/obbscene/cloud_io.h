// Copyright 2026 The obbscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBBSCENE_CLOUD_IO_H_
#define OBBSCENE_CLOUD_IO_H_

#include <string>
#include <string_view>

#include "obbscene/point_cloud.h"

namespace obbscene {

enum class CloudFormat { kXyz, kCsv, kPlyAscii };

// Accepts "xyz", "csv" and "ply" / "ply-ascii".
CloudFormat ParseCloudFormat(std::string_view name);
std::string_view CloudFormatName(CloudFormat format);

// Format from the file extension (.xyz, .txt, .csv, .ply).
CloudFormat FormatFromPath(const std::string& path);

// xyz and csv: one "x y z" record per line, separated by whitespace or
// commas; blank lines and lines starting with '#' are skipped, extra columns
// are ignored. ply: ASCII PLY whose vertex element carries x, y, z; other
// properties and elements are ignored.
// Throws Error(kIoError) if the file cannot be opened, Error(kParseError)
// naming the line, and Error(kUnsupportedFormat) for binary PLY.
PointCloud load_cloud(const std::string& path, CloudFormat format);
PointCloud ParseCloud(std::string_view text, CloudFormat format);

// Writes coordinates with enough digits to round-trip doubles exactly.
void save_cloud(const std::string& path, const PointCloud& cloud,
                CloudFormat format);
std::string FormatCloud(const PointCloud& cloud, CloudFormat format);

}  // namespace obbscene

#endif  // OBBSCENE_CLOUD_IO_H_
