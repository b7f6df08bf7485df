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

#pragma once

#include <string>
#include <vector>

#include "aoajam/config.hpp"
#include "aoajam/csv.hpp"
#include "aoajam/sim.hpp"

namespace aoajam {

// CRB curves (no jammer / uniform jammer / optimal jammer) over the
// scenario's angle grid, written as [theta_deg, crb_free, crb_uniform,
// crb_optimal].
inline void run_crb_command(const Scenario& s, const std::string& out_path) {
    const CrbCurves curves = crb_sweep(s, s.angle_grid());
    OutputTable table;
    table.header = {"theta_deg", "crb_free", "crb_uniform", "crb_optimal"};
    for (Eigen::Index i = 0; i < curves.grid.size(); ++i)
        table.add_row({rad_to_deg(curves.grid(i)), curves.free(i), curves.uniform(i), curves.optimal(i)});
    table.write_file(out_path);
}

// First-trial normalized ML spectrum as [theta_deg, normalized_value], plus a
// one-row sidecar summary at <out>.summary.
inline void run_spectrum_command(const Scenario& s, const std::string& out_path) {
    const ScenarioResult result = run_scenario(s);
    const MLSpectrum& spectrum = *result.trials.front().spectrum;

    OutputTable table;
    table.header = {"theta_deg", "normalized_value"};
    for (Eigen::Index i = 0; i < spectrum.grid.size(); ++i)
        table.add_row({rad_to_deg(spectrum.grid(i)), spectrum.values(i)});
    table.write_file(out_path);

    OutputTable summary;
    summary.header = {"theta_hat_deg", "capture_rate", "var_theta_hat_rad2", "crb_at_theta_t_rad2",
                      "mean_sjnr_db"};
    summary.add_row({rad_to_deg(result.summary.mean_theta_hat), result.summary.capture_rate,
                     result.summary.var_theta_hat, result.summary.crb_at_theta_t,
                     result.summary.mean_sjnr_db});
    summary.write_file(out_path + ".summary");
}

// Numeric Scenario fields a sweep may vary.
inline void apply_sweep_parameter(Scenario& s, const std::string& name, double value) {
    if (name == "n_r")
        s.n_r = static_cast<int>(value);
    else if (name == "n_j")
        s.n_j = static_cast<int>(value);
    else if (name == "theta_t_deg")
        s.theta_t_deg = value;
    else if (name == "theta_j_deg")
        s.theta_j_deg = value;
    else if (name == "k_t_db")
        s.k_t_db = value;
    else if (name == "k_j_db")
        s.k_j_db = value;
    else if (name == "training_len")
        s.training_len = static_cast<int>(value);
    else if (name == "snr_db")
        s.snr_db = value;
    else if (name == "power_ratio")
        s.power_ratio = value;
    else if (name == "trials")
        s.trials = static_cast<int>(value);
    else
        throw ConfigError("sweep: unknown parameter '" + name + "'", 0, name);
}

// One scenario run per parameter value; per-row seeds derive from the master
// seed and the row index.
inline void run_sweep_command(const Scenario& base, const std::string& parameter,
                              const std::vector<double>& values, const std::string& out_path) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    {
        Scenario probe = base; // reject unknown parameter names up front
        apply_sweep_parameter(probe, parameter, values.front());
    }
    OutputTable table;
    table.header = {parameter,      "mean_theta_hat_deg",  "var_theta_hat_rad2", "capture_rate",
                    "crb_at_theta_t_rad2", "mean_sjnr_db", "var_over_crb"};
    for (std::size_t row = 0; row < values.size(); ++row) {
        Scenario s = base;
        apply_sweep_parameter(s, parameter, values[row]);
        s.seed = derive_seed(base.seed, 0x73776565u, static_cast<std::uint64_t>(row));
        const ScenarioResult result = run_scenario(s);
        table.add_row({values[row], rad_to_deg(result.summary.mean_theta_hat),
                       result.summary.var_theta_hat, result.summary.capture_rate,
                       result.summary.crb_at_theta_t, result.summary.mean_sjnr_db,
                       result.summary.var_theta_hat / result.summary.crb_at_theta_t});
    }
    table.write_file(out_path);
}

} // namespace aoajam
