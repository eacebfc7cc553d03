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

// Command-line front end: qndsim <command> [--config PATH] [--seed N] ...

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qnd/commands.hpp"
#include "qnd/config.hpp"
#include "qnd/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulation of weak dispersive qubit measurement"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> format;

    const std::pair<const char*, const char*> commands[] = {
        {"strong-readout", "strong readout histograms and assignment fidelity"},
        {"jumps", "quantum jump records, T1 and equilibrium population"},
        {"backaction-map", "conditional back-action maps per drive strength"},
        {"figure4", "slope and dephasing sweep against theory"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--trials", trials, "trials per setting (traces for jumps)");
        sub->add_option("--format", format, "csv, ndjson or svg")->check(CLI::IsMember({"csv", "ndjson", "svg"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        qnd::RunConfig config = config_path.empty() ? qnd::RunConfig{} : qnd::load_config(config_path);
        if (seed) config.seed = *seed;
        if (threads) config.threads = *threads;
        if (out_dir) config.out_dir = *out_dir;
        if (trials) {
            config.trials = *trials;
            if (command == "jumps") config.traces = *trials;
        }
        if (format) config.format = qnd::parse_output_format(*format);

        const auto report = qnd::run_command(command, config);
        std::cout << report.summary;
        for (const auto& f : report.files) std::cout << "wrote " << f.string() << "\n";
        return 0;
    } catch (const qnd::Error& e) {
        std::cerr << "qndsim " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qndsim " << command << ": unexpected failure: " << e.what() << "\n";
        return 3;
    }
}
