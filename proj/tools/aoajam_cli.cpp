// SPDX-License-Identifier: Apache-2.0
//
// aoajam - AoA estimation under adversarial jamming in Rician fading
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "aoajam/aoajam.hpp"

namespace {

// Exit codes: 0 success, 1 runtime failure, 2 configuration/usage error.
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file")->required();
    cmd->add_option("--out", opts.out_path, "output CSV path")->required();
    cmd->add_option("--seed", opts.seed, "override the config seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "override the config trial count")->each([&](const std::string&) {
        opts.trials_set = true;
    });
}

aoajam::Scenario load_scenario(const CommonOptions& opts) {
    aoajam::Scenario s = aoajam::load_config(opts.config_path);
    if (opts.seed_set) s.seed = opts.seed;
    if (opts.trials_set) s.trials = opts.trials;
    s.validate();
    return s;
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string token =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (token.empty() || end != token.c_str() + token.size())
            throw aoajam::ConfigError("sweep: invalid value list '" + csv + "'");
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AoA estimation under jamming: CRB curves, ML spectra and parameter sweeps"};
    app.require_subcommand(1);

    CommonOptions crb_opts, spectrum_opts, sweep_opts;
    std::string sweep_param;
    std::vector<double> sweep_values;

    CLI::App* crb_cmd = app.add_subcommand("crb", "CRB vs angle for free/uniform/optimal jamming");
    add_common(crb_cmd, crb_opts);

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "first-trial normalized ML spectrum");
    add_common(spectrum_cmd, spectrum_opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "scenario summaries over a parameter sweep");
    add_common(sweep_cmd, sweep_opts);
    std::string sweep_values_csv;
    sweep_cmd->add_option("--param", sweep_param, "numeric scenario field to sweep")->required();
    sweep_cmd->add_option("--values", sweep_values_csv, "comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (crb_cmd->parsed()) {
            aoajam::run_crb_command(load_scenario(crb_opts), crb_opts.out_path);
        } else if (spectrum_cmd->parsed()) {
            aoajam::run_spectrum_command(load_scenario(spectrum_opts), spectrum_opts.out_path);
        } else if (sweep_cmd->parsed()) {
            sweep_values = parse_value_list(sweep_values_csv);
            aoajam::run_sweep_command(load_scenario(sweep_opts), sweep_param, sweep_values,
                                      sweep_opts.out_path);
        }
    } catch (const aoajam::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
