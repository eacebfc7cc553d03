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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/params.hpp"
#include "qnd/tomography.hpp"

namespace qnd {

enum class OutputFormat { csv, ndjson, svg };

std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

/// Everything a run needs. Defaults reproduce the device and protocol values
/// of the reference experiment.
///
/// Text form is one `section.key = value` per line; `#` starts a comment.
/// Times are in seconds, cavity frequencies in Hz (angular value / 2 pi).
struct RunConfig {
    double kappa_over_2pi = 5.8e6;
    double chi_over_2pi = 5.4e6;
    DriveParams drive;
    AmpParams amp;
    QubitParams qubit;

    double strong_s = 2.4;  ///< strong readout strength (half the 4.8 sigma separation)
    double tau_pre_fraction = 0.5;
    double post_select_threshold = 1.5;
    int map_bins = 201;
    double map_range = 6.0;

    double jump_threshold = 4.0;
    double record_duration = 8e-6;
    std::uint64_t traces = 25000;
    std::uint64_t export_records = 100;

    std::vector<double> thetas{0.0, 1.5707963267948966, 3.141592653589793};
    int hist_bins = 240;

    std::vector<double> map_nbar{5e-3, 5e-2, 5e-1, 5.0};
    double sweep_nbar_max = 5.0;
    int sweep_points = 12;

    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::csv;

    CavityParams cavity() const;
    MapGrid grid() const { return {map_bins, -map_range, map_range}; }
    StrongReadoutParams strong_readout() const;
    /// Protocol at drive strength `nbar` for the variable measurement.
    ProtocolParams protocol(double nbar) const;
    /// nbar values of the figure sweep, linear in sqrt(nbar) from 0.
    std::vector<double> sweep_nbar() const;

    /// Throws InvalidParameter naming the offending key.
    void validate() const;
};

/// Applies `key = value` lines on top of `base`. Unknown keys, malformed
/// values and duplicate keys are ParseErrors carrying the line number.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace qnd
