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

#include "qnd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "qnd/errors.hpp"
#include "qnd/output.hpp"

namespace qnd {

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::ndjson: return "ndjson";
        case OutputFormat::svg: return "svg";
    }
    return "csv";
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "ndjson") return OutputFormat::ndjson;
    if (text == "svg") return OutputFormat::svg;
    throw ParseError("unknown output format '" + std::string(text) + "' (expected csv, ndjson or svg)");
}

CavityParams RunConfig::cavity() const {
    return {2.0 * std::numbers::pi * kappa_over_2pi, 2.0 * std::numbers::pi * chi_over_2pi};
}

StrongReadoutParams RunConfig::strong_readout() const {
    return {strong_s, qubit, drive, hist_bins, map_range};
}

ProtocolParams RunConfig::protocol(double nbar) const {
    DriveParams weak_drive = drive;
    weak_drive.nbar = nbar;
    ProtocolParams p;
    p.weak = strength_params(cavity(), weak_drive, amp);
    const double ratio = amp.q_ratio.value_or(geometric_q_ratio(p.weak.theta_disp));
    p.strong = {strong_s, ratio * strong_s, p.weak.theta_disp};
    p.qubit = qubit;
    p.eta = amp.eta;
    p.drive = drive;
    p.tau_pre_fraction = tau_pre_fraction;
    return p;
}

std::vector<double> RunConfig::sweep_nbar() const {
    std::vector<double> out;
    if (sweep_points == 1) return {sweep_nbar_max};
    for (int k = 0; k < sweep_points; ++k) {
        const double f = static_cast<double>(k) / (sweep_points - 1);
        out.push_back(sweep_nbar_max * f * f);
    }
    return out;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidParameter(msg); };
    if (!(kappa_over_2pi > 0.0) || !std::isfinite(kappa_over_2pi)) fail("cavity.kappa_over_2pi must be positive");
    if (!(chi_over_2pi > 0.0) || !std::isfinite(chi_over_2pi)) fail("cavity.chi_over_2pi must be positive");
    drive.validate();
    amp.validate();
    qubit.validate();
    if (drive.dt >= qubit.t1 / 10.0) fail("drive.dt must be below qubit.t1 / 10");
    if (!(strong_s >= 2.0)) fail("protocol.strong_s must be at least 2");
    if (!(tau_pre_fraction >= 0.0 && tau_pre_fraction <= 1.0)) fail("protocol.tau_pre_fraction must be in [0, 1]");
    if (!(post_select_threshold >= 0.0)) fail("protocol.post_select_threshold must be non-negative");
    if (map_bins < 1) fail("map.bins must be positive");
    if (!(map_range > 0.0)) fail("map.range must be positive");
    for (double n : map_nbar)
        if (!(n >= 0.0)) fail("map.nbar entries must be non-negative");
    if (!(jump_threshold > 0.0)) fail("jumps.threshold must be positive");
    const double ratio = record_duration / drive.dt;
    if (!(record_duration > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        fail("jumps.duration must be a positive multiple of drive.dt");
    for (double th : thetas)
        if (!(th >= 0.0 && th < 2.0 * std::numbers::pi)) fail("strong.thetas entries must be in [0, 2 pi)");
    if (hist_bins < 1) fail("strong.hist_bins must be positive");
    if (!(sweep_nbar_max >= 0.0)) fail("sweep.nbar_max must be non-negative");
    if (sweep_points < 1) fail("sweep.points must be positive");
    if (threads < 1) fail("run.threads must be at least 1");
    if (out_dir.empty()) fail("run.out_dir must not be empty");
}

namespace {

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ParseError(std::string(key) + ": not a number: '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw ParseError(std::string(key) + ": not a non-negative integer: '" + std::string(v) + "'");
    return out;
}

int parse_int(std::string_view key, std::string_view v) {
    int out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ParseError(std::string(key) + ": not an integer: '" + std::string(v) + "'");
    return out;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    while (true) {
        const auto comma = v.find(',');
        out.push_back(parse_double(key, trim(v.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ", ";
        out += format_double(values[k]);
    }
    return out;
}

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, std::string_view key, std::string_view value)> set;
};

#define QND_DOUBLE(KEY, MEMBER)                                                        \
    Field {                                                                            \
        KEY, [](const RunConfig& c) { return format_double(c.MEMBER); },               \
            [](RunConfig& c, std::string_view k, std::string_view v) { c.MEMBER = parse_double(k, v); } \
    }
#define QND_UINT(KEY, MEMBER)                                                          \
    Field {                                                                            \
        KEY, [](const RunConfig& c) { return std::to_string(c.MEMBER); },              \
            [](RunConfig& c, std::string_view k, std::string_view v) {                 \
                c.MEMBER = static_cast<decltype(c.MEMBER)>(parse_uint(k, v));          \
            }                                                                          \
    }
#define QND_INT(KEY, MEMBER)                                                           \
    Field {                                                                            \
        KEY, [](const RunConfig& c) { return std::to_string(c.MEMBER); },              \
            [](RunConfig& c, std::string_view k, std::string_view v) { c.MEMBER = parse_int(k, v); } \
    }
#define QND_LIST(KEY, MEMBER)                                                          \
    Field {                                                                            \
        KEY, [](const RunConfig& c) { return format_list(c.MEMBER); },                 \
            [](RunConfig& c, std::string_view k, std::string_view v) { c.MEMBER = parse_list(k, v); } \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table{
        QND_DOUBLE("cavity.kappa_over_2pi", kappa_over_2pi),
        QND_DOUBLE("cavity.chi_over_2pi", chi_over_2pi),
        QND_DOUBLE("drive.nbar", drive.nbar),
        QND_DOUBLE("drive.t_m", drive.t_m),
        QND_DOUBLE("drive.dt", drive.dt),
        QND_DOUBLE("amp.eta", amp.eta),
        Field{"amp.q_ratio",
              [](const RunConfig& c) { return c.amp.q_ratio ? format_double(*c.amp.q_ratio) : std::string("geometric"); },
              [](RunConfig& c, std::string_view k, std::string_view v) {
                  if (v == "geometric")
                      c.amp.q_ratio.reset();
                  else
                      c.amp.q_ratio = parse_double(k, v);
              }},
        QND_DOUBLE("qubit.t1", qubit.t1),
        QND_DOUBLE("qubit.t2", qubit.t2),
        QND_DOUBLE("qubit.p_eq", qubit.p_eq),
        QND_DOUBLE("qubit.tau", qubit.tau),
        QND_DOUBLE("protocol.strong_s", strong_s),
        QND_DOUBLE("protocol.tau_pre_fraction", tau_pre_fraction),
        QND_DOUBLE("protocol.post_select_threshold", post_select_threshold),
        QND_INT("map.bins", map_bins),
        QND_DOUBLE("map.range", map_range),
        QND_LIST("map.nbar", map_nbar),
        QND_DOUBLE("jumps.threshold", jump_threshold),
        QND_DOUBLE("jumps.duration", record_duration),
        QND_UINT("jumps.traces", traces),
        QND_UINT("jumps.export_records", export_records),
        QND_LIST("strong.thetas", thetas),
        QND_INT("strong.hist_bins", hist_bins),
        QND_DOUBLE("sweep.nbar_max", sweep_nbar_max),
        QND_INT("sweep.points", sweep_points),
        QND_UINT("run.trials", trials),
        QND_UINT("run.seed", seed),
        QND_UINT("run.threads", threads),
        Field{"run.out_dir", [](const RunConfig& c) { return c.out_dir; },
              [](RunConfig& c, std::string_view, std::string_view v) { c.out_dir = std::string(v); }},
        Field{"run.format", [](const RunConfig& c) { return std::string(to_string(c.format)); },
              [](RunConfig& c, std::string_view, std::string_view v) { c.format = parse_output_format(v); }},
    };
    return table;
}

#undef QND_DOUBLE
#undef QND_UINT
#undef QND_INT
#undef QND_LIST

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::set<std::string, std::less<>> seen;
    long line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
        if (it == table.end())
            throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second)
            throw ParseError("config line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
        try {
            it->set(base, key, value);
        } catch (const ParseError& e) {
            throw ParseError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string format_config(const RunConfig& config) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return format_config(a) == format_config(b); }

}  // namespace qnd
