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

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoajam/array.hpp"
#include "aoajam/channel.hpp"
#include "aoajam/estimation.hpp"
#include "aoajam/jammer.hpp"
#include "aoajam/rng.hpp"
#include "aoajam/training.hpp"

namespace aoajam {

enum class JammerMode { None, Unaware, UniformUnaware, Aware };
enum class ReceiverKnowledge { None, Statistical, PerfectCsi };

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// One Monte Carlo experiment. Fields are kept in the units the configuration
// files use (degrees, dB); conversions happen where values are consumed.
struct Scenario {
    int n_r = 4;
    int n_j = 4;
    double d_over_lambda = 0.5;
    double theta_t_deg = 12.0;
    double theta_j_deg = 50.0;
    double k_t_db = 10.0;
    double k_j_db = 10.0;
    int training_len = 64;
    double snr_db = 15.0;
    double power_ratio = 1.0; // P_j / P_t
    double p_t_max = 1.0;
    JammerMode jammer_mode = JammerMode::None;
    ReceiverKnowledge receiver_knowledge = ReceiverKnowledge::Statistical;
    int trials = 500;
    std::uint64_t seed = 1;
    double grid_min_deg = -90.0;
    double grid_max_deg = 90.0;
    double grid_step_deg = 0.1;
    bool refine = true;
    bool block_fading = true;
    bool keep_spectra = false;

    double theta_t_rad() const { return deg_to_rad(theta_t_deg); }
    double theta_j_rad() const { return deg_to_rad(theta_j_deg); }
    double k_t() const { return db_to_linear(k_t_db); }
    double k_j() const { return db_to_linear(k_j_db); }
    double sigma_n2() const { return p_t_max / db_to_linear(snr_db); }
    double p_j() const { return power_ratio * p_t_max; }
    ArrayGeometry rx_geometry() const { return {n_r, d_over_lambda, 1.0}; }
    ArrayGeometry jammer_tx_geometry() const { return {n_j, d_over_lambda, 1.0}; }

    Eigen::VectorXd angle_grid() const {
        if (!(grid_step_deg > 0.0)) throw std::invalid_argument("Scenario: grid step must be > 0");
        if (!(grid_max_deg >= grid_min_deg)) throw std::invalid_argument("Scenario: empty grid range");
        const int count = static_cast<int>(std::floor((grid_max_deg - grid_min_deg) / grid_step_deg + 1e-9)) + 1;
        Eigen::VectorXd grid(count);
        for (int i = 0; i < count; ++i) grid(i) = deg_to_rad(grid_min_deg + i * grid_step_deg);
        return grid;
    }

    void validate() const {
        if (n_r < 1) throw std::invalid_argument("Scenario: n_r must be >= 1");
        if (n_j < 1) throw std::invalid_argument("Scenario: n_j must be >= 1");
        if (!(d_over_lambda > 0.0)) throw std::invalid_argument("Scenario: d_over_lambda must be > 0");
        if (training_len < 1) throw std::invalid_argument("Scenario: training_len must be >= 1");
        if (trials < 1) throw std::invalid_argument("Scenario: trials must be >= 1");
        if (!(power_ratio >= 0.0)) throw std::invalid_argument("Scenario: power_ratio must be >= 0");
        if (!(p_t_max > 0.0)) throw std::invalid_argument("Scenario: p_t_max must be > 0");
        if (std::abs(theta_t_deg) > 90.0 || std::abs(theta_j_deg) > 90.0)
            throw std::invalid_argument("Scenario: angles must lie in [-90, 90] degrees");
        if (!(k_t() >= 0.0) || !(k_j() >= 0.0)) throw std::invalid_argument("Scenario: invalid Rician factor");
        (void)angle_grid();
    }
};

struct TrialRecord {
    int index = 0;
    double theta_hat = 0.0; // radians
    double sjnr_db = 0.0;
    std::uint64_t trial_seed = 0;
    std::optional<MLSpectrum> spectrum;
};

struct ScenarioSummary {
    double mean_theta_hat = 0.0; // radians
    double var_theta_hat = 0.0;  // radians^2
    double capture_rate = 0.0;   // fraction of trials estimating nearer the jammer
    double crb_at_theta_t = 0.0; // radians^2
    double mean_sjnr_db = 0.0;
};

struct ScenarioResult {
    ScenarioSummary summary;
    std::vector<TrialRecord> trials;
};

// Per-slot signal-to-jamming-and-noise ratio in dB.
inline double sjnr_db(const Eigen::MatrixXcd& h_t, cxd x_t_l, const Eigen::MatrixXcd& h_j,
                      const Eigen::VectorXcd& x_j_l, double sigma_n2) {
    if (h_j.cols() != x_j_l.size()) throw std::invalid_argument("sjnr_db: dimension mismatch");
    const double sig = (h_t * x_t_l).squaredNorm();
    const double jam = (h_j * x_j_l).squaredNorm();
    return linear_to_db(sig / (jam + sigma_n2));
}

namespace detail {

// Seed tags for the independent random substreams of a scenario.
inline constexpr std::uint64_t kTagTraining = 0x74726169;
inline constexpr std::uint64_t kTagTrial = 0x7472696C;
inline constexpr std::uint64_t kTagChanT = 1;
inline constexpr std::uint64_t kTagChanJ = 2;
inline constexpr std::uint64_t kTagNoise = 3;
inline constexpr std::uint64_t kTagJamSig = 4;

struct ScenarioModel {
    ArrayGeometry rx;
    RicianChannelSpec spec_t;
    RicianChannelSpec spec_j;
    TrainingSequence training;
    Eigen::MatrixXcd q_statistical; // jammer covariance the receiver assumes
    InterferenceCovariance rz_static; // valid unless knowledge = PerfectCsi
    Eigen::VectorXd grid;
};

inline ScenarioModel build_model(const Scenario& s) {
    s.validate();
    ScenarioModel m;
    m.rx = s.rx_geometry();
    m.spec_t = RicianChannelSpec(s.k_t(), s.theta_t_rad(), 0.0, m.rx, ArrayGeometry::single_element());
    m.spec_j = RicianChannelSpec(s.k_j(), s.theta_j_rad(), 0.0, m.rx, s.jammer_tx_geometry());
    m.training = make_training(s.training_len, s.p_t_max, derive_seed(s.seed, kTagTraining));
    m.grid = s.angle_grid();

    switch (s.jammer_mode) {
        case JammerMode::None:
            m.q_statistical = Eigen::MatrixXcd::Zero(s.n_j, s.n_j);
            break;
        case JammerMode::Unaware:
            m.q_statistical = unaware_allocation(s.n_j, s.n_r, s.k_j(), s.p_j()).covariance;
            break;
        case JammerMode::UniformUnaware:
        case JammerMode::Aware:
            m.q_statistical = (s.p_j() / s.n_j) * Eigen::MatrixXcd::Identity(s.n_j, s.n_j);
            break;
    }

    switch (s.receiver_knowledge) {
        case ReceiverKnowledge::None:
            m.rz_static.matrix = s.sigma_n2() * Eigen::MatrixXcd::Identity(s.n_r, s.n_r);
            m.rz_static.knowledge_level = KnowledgeLevel::Statistical;
            break;
        case ReceiverKnowledge::Statistical:
            if (s.jammer_mode == JammerMode::Aware)
                m.rz_static = rz_worst_case_aware(m.spec_t, m.spec_j, s.p_j(), s.p_t_max, s.sigma_n2());
            else
                m.rz_static = rz_statistical(m.spec_t, m.spec_j, m.q_statistical, s.p_t_max, s.sigma_n2());
            break;
        case ReceiverKnowledge::PerfectCsi:
            break; // built per trial from the realizations
    }
    return m;
}

} // namespace detail

inline ScenarioResult run_scenario(const Scenario& s) {
    const detail::ScenarioModel m = detail::build_model(s);
    const int length = s.training_len;
    const double sigma_n2 = s.sigma_n2();

    ScenarioResult result;
    result.trials.reserve(static_cast<std::size_t>(s.trials));
    std::optional<InterferenceCovariance> first_rz;

    for (int t = 0; t < s.trials; ++t) {
        try {
            const std::uint64_t trial_seed = derive_seed(s.seed, detail::kTagTrial, static_cast<std::uint64_t>(t));

            // Channel realizations, one per burst or one per slot.
            std::vector<Eigen::MatrixXcd> h_t(length), h_j(length);
            std::vector<Eigen::VectorXcd> h_t_nlos(length);
            if (s.block_fading) {
                const ChannelRealization ct = sample_channel(m.spec_t, derive_seed(trial_seed, detail::kTagChanT));
                const ChannelRealization cj = sample_channel(m.spec_j, derive_seed(trial_seed, detail::kTagChanJ));
                for (int l = 0; l < length; ++l) {
                    h_t[l] = ct.total;
                    h_t_nlos[l] = ct.nlos.col(0);
                    h_j[l] = cj.total;
                }
            } else {
                for (int l = 0; l < length; ++l) {
                    const auto lu = static_cast<std::uint64_t>(l);
                    const ChannelRealization ct =
                        sample_channel(m.spec_t, derive_seed(derive_seed(trial_seed, detail::kTagChanT), lu));
                    const ChannelRealization cj =
                        sample_channel(m.spec_j, derive_seed(derive_seed(trial_seed, detail::kTagChanJ), lu));
                    h_t[l] = ct.total;
                    h_t_nlos[l] = ct.nlos.col(0);
                    h_j[l] = cj.total;
                }
            }

            // Jammer signal per slot.
            std::vector<Eigen::VectorXcd> x_j(length, Eigen::VectorXcd::Zero(s.n_j));
            switch (s.jammer_mode) {
                case JammerMode::None:
                    break;
                case JammerMode::Unaware:
                case JammerMode::UniformUnaware:
                    x_j = sample_unaware_signal(m.q_statistical, length,
                                                derive_seed(trial_seed, detail::kTagJamSig));
                    break;
                case JammerMode::Aware:
                    x_j = aware_signal(h_j, m.training, s.p_j()).slots;
                    break;
            }

            // Received bursts.
            Rng noise_rng(derive_seed(trial_seed, detail::kTagNoise));
            const double noise_scale = std::sqrt(sigma_n2);
            std::vector<Eigen::VectorXcd> y(length);
            double sig_energy = 0.0, jam_noise_energy = 0.0;
            for (int l = 0; l < length; ++l) {
                Eigen::VectorXcd noise(s.n_r);
                for (int i = 0; i < s.n_r; ++i) noise(i) = noise_scale * noise_rng.next_cnormal();
                const Eigen::VectorXcd sig = h_t[l] * m.training.symbols(l);
                const Eigen::VectorXcd jam = h_j[l] * x_j[l];
                y[l] = sig + jam + noise;
                sig_energy += sig.squaredNorm();
                jam_noise_energy += jam.squaredNorm() + sigma_n2;
            }

            const InterferenceCovariance rz =
                (s.receiver_knowledge == ReceiverKnowledge::PerfectCsi)
                    ? rz_perfect_csi(h_t_nlos, h_j, m.training, x_j, sigma_n2)
                    : m.rz_static;
            if (t == 0) first_rz = rz;

            TrialRecord rec;
            rec.index = t;
            rec.trial_seed = trial_seed;
            rec.theta_hat = estimate_aoa(y, m.training, rz, m.rx, m.grid, s.refine);
            rec.sjnr_db = linear_to_db(sig_energy / jam_noise_energy);
            if (t == 0 || s.keep_spectra) rec.spectrum = ml_spectrum(y, m.training, rz, m.rx, m.grid);
            result.trials.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw std::runtime_error("run_scenario: trial " + std::to_string(t) + " failed: " + e.what());
        }
    }

    // Aggregate.
    const double n = static_cast<double>(result.trials.size());
    double mean = 0.0, sjnr_sum = 0.0;
    int captured = 0;
    for (const TrialRecord& r : result.trials) {
        mean += r.theta_hat;
        sjnr_sum += r.sjnr_db;
        if (std::abs(r.theta_hat - s.theta_j_rad()) < std::abs(r.theta_hat - s.theta_t_rad())) ++captured;
    }
    mean /= n;
    double var = 0.0;
    for (const TrialRecord& r : result.trials) var += (r.theta_hat - mean) * (r.theta_hat - mean);
    var = (result.trials.size() > 1) ? var / (n - 1.0) : 0.0;

    result.summary.mean_theta_hat = mean;
    result.summary.var_theta_hat = var;
    result.summary.capture_rate = captured / n;
    result.summary.mean_sjnr_db = sjnr_sum / n;

    // Bound reported against the receiver's whitening model; for per-trial
    // covariances (perfect CSI) the first trial's is used.
    result.summary.crb_at_theta_t = crb(s.theta_t_rad(), *first_rz, m.rx, length, s.k_t(), s.p_t_max);
    return result;
}

// CRB curves over an angle grid for three jamming situations at the
// scenario's operating point: no jammer, uniform power allocation, and the
// statistically optimal allocation.
struct CrbCurves {
    Eigen::VectorXd grid;    // radians
    Eigen::VectorXd free;    // radians^2
    Eigen::VectorXd uniform;
    Eigen::VectorXd optimal;
};

inline CrbCurves crb_sweep(const Scenario& s, const Eigen::VectorXd& grid) {
    s.validate();
    const ArrayGeometry rx = s.rx_geometry();
    const RicianChannelSpec spec_t(s.k_t(), s.theta_t_rad(), 0.0, rx, ArrayGeometry::single_element());
    const RicianChannelSpec spec_j(s.k_j(), s.theta_j_rad(), 0.0, rx, s.jammer_tx_geometry());

    const Eigen::MatrixXcd q_zero = Eigen::MatrixXcd::Zero(s.n_j, s.n_j);
    const Eigen::MatrixXcd q_uniform = (s.p_j() / s.n_j) * Eigen::MatrixXcd::Identity(s.n_j, s.n_j);
    const Eigen::MatrixXcd q_optimal = unaware_allocation(s.n_j, s.n_r, s.k_j(), s.p_j()).covariance;

    const InterferenceCovariance rz_free = rz_statistical(spec_t, spec_j, q_zero, s.p_t_max, s.sigma_n2());
    const InterferenceCovariance rz_uni = rz_statistical(spec_t, spec_j, q_uniform, s.p_t_max, s.sigma_n2());
    const InterferenceCovariance rz_opt = rz_statistical(spec_t, spec_j, q_optimal, s.p_t_max, s.sigma_n2());

    CrbCurves curves;
    curves.grid = grid;
    curves.free.resize(grid.size());
    curves.uniform.resize(grid.size());
    curves.optimal.resize(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        curves.free(i) = crb(grid(i), rz_free, rx, s.training_len, s.k_t(), s.p_t_max);
        curves.uniform(i) = crb(grid(i), rz_uni, rx, s.training_len, s.k_t(), s.p_t_max);
        curves.optimal(i) = crb(grid(i), rz_opt, rx, s.training_len, s.k_t(), s.p_t_max);
    }
    return curves;
}

} // namespace aoajam
