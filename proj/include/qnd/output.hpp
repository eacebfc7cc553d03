// Copyright 2026 The qndsim Authors
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

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/tomography.hpp"

namespace qnd {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Minimal CSV builder: numbers are written with format_double.
class CsvWriter {
   public:
    explicit CsvWriter(const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(std::string_view v);
    void end_row();

    const std::string& str() const { return text_; }

   private:
    std::string text_;
    bool row_open_ = false;
};

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

enum class ColorScale {
    diverging,  ///< fixed [-1, 1], blue - white - red
    log_counts  ///< log10(count) over [0, log10(max)], white - teal - navy
};

/// One rect per non-empty bin on a grey background. Rows of `values` follow i
/// (x axis), columns follow q (y axis, upward). NaN bins are left empty.
std::string render_heatmap_svg(const Eigen::ArrayXXd& values, const MapGrid& grid, ColorScale scale,
                               std::string_view title);

/// Per-bin map export: i, q, count, meanX, meanY, meanZ (empty cells are "nan").
std::string conditional_map_csv(const ConditionalMap& map, bool skip_empty = true);

}  // namespace qnd
