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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/config.hpp"

namespace qnd {

/// Files a command wrote, in write order, plus a short human-readable digest.
struct CommandReport {
    std::vector<std::filesystem::path> files;
    std::string summary;
};

// Every command validates the config, creates config.out_dir, writes its
// outputs atomically and finishes with manifest.txt (the resolved config).
// CSV files depend only on the config minus run.threads.

/// strong_hist_theta_<k>.csv per entry of config.thetas (config.trials each)
/// and strong_readout_summary.csv with fitted separation and fidelity.
CommandReport cmd_strong_readout(const RunConfig& config);

/// config.traces thermal records for counting and as many records started in
/// the excited state for the decay fit. Writes jumps_summary.csv and the
/// first config.export_records thermal records (records.ndjson when the
/// format is ndjson, records.qndr otherwise).
CommandReport cmd_jumps(const RunConfig& config);

/// backaction_map_<k>.csv per entry of config.map_nbar and
/// backaction_summary.csv; with the svg format also heatmaps of counts and
/// of the X, Y, Z conditional means.
CommandReport cmd_backaction_map(const RunConfig& config);

/// figure4_sweep.csv over config.sweep_nbar(), simulated and predicted.
CommandReport cmd_figure4(const RunConfig& config);

/// Dispatch by subcommand name; throws InvalidParameter for unknown names.
CommandReport run_command(std::string_view name, const RunConfig& config);

}  // namespace qnd
