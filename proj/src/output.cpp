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

#include "qnd/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "qnd/errors.hpp"

namespace qnd {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
    for (const auto& h : header) cell(std::string_view(h));
    end_row();
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_double(v))); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::cell(std::string_view v) {
    if (row_open_) text_ += ',';
    row_open_ = true;
    if (v.find_first_of(",\"\n") == std::string_view::npos) {
        text_ += v;
        return *this;
    }
    text_ += '"';
    for (char c : v) {
        if (c == '"') text_ += '"';
        text_ += c;
    }
    text_ += '"';
    return *this;
}

void CsvWriter::end_row() {
    text_ += '\n';
    row_open_ = false;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into '" + path.string() + "'");
    }
}

namespace {

using Rgb = std::array<double, 3>;

Rgb mix(const Rgb& a, const Rgb& b, double t) {
    return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

Rgb ramp(const Rgb& lo, const Rgb& mid, const Rgb& hi, double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t < 0.5 ? mix(lo, mid, 2.0 * t) : mix(mid, hi, 2.0 * t - 1.0);
}

std::string hex(const Rgb& c) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "#";
    for (double v : c) {
        const int b = static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
        out += digits[b >> 4];
        out += digits[b & 15];
    }
    return out;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_heatmap_svg(const Eigen::ArrayXXd& values, const MapGrid& grid, ColorScale scale,
                               std::string_view title) {
    constexpr double plot = 480.0;
    constexpr double margin = 50.0;
    const Eigen::Index ni = values.rows();
    const Eigen::Index nq = values.cols();
    const double cw = plot / static_cast<double>(std::max<Eigen::Index>(ni, 1));
    const double ch = plot / static_cast<double>(std::max<Eigen::Index>(nq, 1));

    double top = 1.0;
    if (scale == ColorScale::log_counts) {
        double vmax = 0.0;
        for (Eigen::Index r = 0; r < ni; ++r)
            for (Eigen::Index c = 0; c < nq; ++c)
                if (std::isfinite(values(r, c))) vmax = std::max(vmax, values(r, c));
        top = vmax > 1.0 ? std::log10(vmax) : 1.0;
    }

    const double size = plot + 2.0 * margin;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(size) + "\" height=\"" +
           format_double(size) + "\" viewBox=\"0 0 " + format_double(size) + " " + format_double(size) + "\">\n";
    svg += "<title>" + escape_xml(title) + "</title>\n";
    svg += "<rect x=\"" + format_double(margin) + "\" y=\"" + format_double(margin) + "\" width=\"" +
           format_double(plot) + "\" height=\"" + format_double(plot) + "\" fill=\"#bdbdbd\"/>\n";

    const Rgb blue{33, 102, 172}, white{247, 247, 247}, red{178, 24, 43};
    const Rgb blank{255, 255, 255}, teal{65, 182, 196}, navy{8, 29, 88};
    for (Eigen::Index r = 0; r < ni; ++r) {
        for (Eigen::Index c = 0; c < nq; ++c) {
            const double v = values(r, c);
            if (!std::isfinite(v)) continue;
            Rgb color;
            if (scale == ColorScale::diverging) {
                color = ramp(blue, white, red, 0.5 * (v + 1.0));
            } else {
                if (v <= 0.0) continue;
                color = ramp(blank, teal, navy, std::log10(std::max(v, 1.0)) / top);
            }
            const double x = margin + static_cast<double>(r) * cw;
            const double y = margin + plot - static_cast<double>(c + 1) * ch;
            svg += "<rect x=\"" + format_double(x) + "\" y=\"" + format_double(y) + "\" width=\"" +
                   format_double(cw) + "\" height=\"" + format_double(ch) + "\" fill=\"" + hex(color) + "\"/>\n";
        }
    }

    svg += "<text x=\"" + format_double(margin + plot / 2) + "\" y=\"" + format_double(margin / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + escape_xml(title) +
           "</text>\n";
    svg += "<text x=\"" + format_double(margin + plot / 2) + "\" y=\"" + format_double(size - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">I [" + format_double(grid.lo) +
           ", " + format_double(grid.hi) + "]</text>\n";
    svg += "<text x=\"14\" y=\"" + format_double(margin + plot / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 " +
           format_double(margin + plot / 2) + ")\">Q [" + format_double(grid.lo) + ", " + format_double(grid.hi) +
           "]</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string conditional_map_csv(const ConditionalMap& map, bool skip_empty) {
    CsvWriter csv({"i", "q", "count", "meanX", "meanY", "meanZ"});
    const auto& grid = map.grid();
    const Eigen::ArrayXXd mx = map.means(Axis::X);
    const Eigen::ArrayXXd my = map.means(Axis::Y);
    const Eigen::ArrayXXd mz = map.means(Axis::Z);
    for (int r = 0; r < grid.bins; ++r) {
        for (int c = 0; c < grid.bins; ++c) {
            const auto n = map.counts()(r, c);
            if (skip_empty && n == 0) continue;
            csv.cell(grid.center(r)).cell(grid.center(c)).cell(static_cast<long long>(n));
            csv.cell(mx(r, c)).cell(my(r, c)).cell(mz(r, c));
            csv.end_row();
        }
    }
    return csv.str();
}

}  // namespace qnd
