#include <catch2/catch.hpp>

#include <cmath>

#include "aoajam/sim.hpp"

using namespace aoajam;

namespace {

Scenario base_scenario() {
    Scenario s;
    s.n_r = 4;
    s.n_j = 4;
    s.theta_t_deg = 12.0;
    s.theta_j_deg = 50.0;
    s.k_t_db = 10.0;
    s.k_j_db = 10.0;
    s.training_len = 64;
    s.snr_db = 15.0;
    s.power_ratio = 1.0;
    s.jammer_mode = JammerMode::None;
    s.receiver_knowledge = ReceiverKnowledge::Statistical;
    s.trials = 50;
    s.seed = 42;
    s.grid_step_deg = 1.0;
    return s;
}

bool has_local_max_near(const MLSpectrum& spectrum, double target_deg, double cell_deg) {
    for (Eigen::Index i = 0; i < spectrum.grid.size(); ++i) {
        const bool up = (i == 0) || spectrum.values(i) > spectrum.values(i - 1);
        const bool down = (i == spectrum.grid.size() - 1) || spectrum.values(i) > spectrum.values(i + 1);
        if (up && down && std::abs(rad_to_deg(spectrum.grid(i)) - target_deg) <= cell_deg + 1e-9)
            return true;
    }
    return false;
}

} // namespace

TEST_CASE("identical scenarios produce bit-identical results") {
    const Scenario s = base_scenario();
    const ScenarioResult a = run_scenario(s);
    const ScenarioResult b = run_scenario(s);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].theta_hat == b.trials[i].theta_hat);
        CHECK(a.trials[i].sjnr_db == b.trials[i].sjnr_db);
    }
    CHECK(a.summary.mean_theta_hat == b.summary.mean_theta_hat);
    CHECK(a.summary.var_theta_hat == b.summary.var_theta_hat);
    CHECK(a.summary.capture_rate == b.summary.capture_rate);
    CHECK(a.summary.crb_at_theta_t == b.summary.crb_at_theta_t);
}

TEST_CASE("extending the trial count preserves earlier trials") {
    Scenario s = base_scenario();
    s.trials = 10;
    const ScenarioResult short_run = run_scenario(s);
    s.trials = 11;
    const ScenarioResult long_run = run_scenario(s);
    for (int i = 0; i < 10; ++i) {
        CHECK(short_run.trials[i].theta_hat == long_run.trials[i].theta_hat);
        CHECK(short_run.trials[i].trial_seed == long_run.trials[i].trial_seed);
    }
}

TEST_CASE("near-noiseless estimation is tight and unbiased") {
    Scenario s = base_scenario();
    s.jammer_mode = JammerMode::None;
    s.snr_db = 40.0;
    s.k_t_db = 60.0; // essentially pure LOS
    s.trials = 200;
    const ScenarioResult r = run_scenario(s);
    CHECK(r.summary.var_theta_hat <= 3.0 * r.summary.crb_at_theta_t);
    CHECK(std::abs(rad_to_deg(r.summary.mean_theta_hat) - 12.0) <= 0.2);
}

TEST_CASE("equal-power aligned jamming splits the spectrum into two lobes") {
    // Both the transmitter and jammer directions carry a lobe. Peak positions
    // shift by a few degrees: the jammer is phase-coherent with the training,
    // so the two lobes interfere through the 4-element beampattern.
    Scenario s = base_scenario();
    s.jammer_mode = JammerMode::Aware;
    s.receiver_knowledge = ReceiverKnowledge::None;
    s.trials = 1;
    const ScenarioResult r = run_scenario(s);
    REQUIRE(r.trials.front().spectrum.has_value());
    const MLSpectrum& spectrum = *r.trials.front().spectrum;
    CHECK(has_local_max_near(spectrum, 12.0, 7.0));
    CHECK(has_local_max_near(spectrum, 50.0, 7.0));
    CHECK_FALSE(has_local_max_near(spectrum, -45.0, 7.0));
}

TEST_CASE("double-power aligned jamming captures the estimator") {
    Scenario s = base_scenario();
    s.theta_t_deg = 43.0;
    s.theta_j_deg = -63.0;
    s.power_ratio = 2.0;
    s.jammer_mode = JammerMode::Aware;
    s.receiver_knowledge = ReceiverKnowledge::None;
    s.trials = 100;
    const ScenarioResult r = run_scenario(s);
    CHECK(r.summary.capture_rate >= 0.5);
}

TEST_CASE("capture rate grows with jamming power") {
    double prev = -1.0;
    for (double ratio : {1.0, 2.0, 4.0}) {
        Scenario s = base_scenario();
        s.jammer_mode = JammerMode::Aware;
        s.receiver_knowledge = ReceiverKnowledge::Statistical;
        s.power_ratio = ratio;
        s.trials = 100;
        const double rate = run_scenario(s).summary.capture_rate;
        CHECK(rate >= prev);
        prev = rate;
    }
}

TEST_CASE("per-slot SJNR formula") {
    Eigen::MatrixXcd h_t(2, 1);
    h_t << 1.0, 0.0;
    Eigen::MatrixXcd h_j = Eigen::MatrixXcd::Identity(2, 2);
    const double sigma_n2 = 0.25;

    // ||H_t x||^2 = sigma_n^2 and no jamming: exactly 0 dB.
    const cxd x{0.5, 0.0};
    CHECK(sjnr_db(h_t, x, h_j, Eigen::VectorXcd::Zero(2), sigma_n2) == 0.0);

    // More jamming power, lower SJNR.
    Eigen::VectorXcd weak(2), strong(2);
    weak << 0.1, 0.0;
    strong << 3.0, 0.0;
    CHECK(sjnr_db(h_t, x, h_j, strong, sigma_n2) < sjnr_db(h_t, x, h_j, weak, sigma_n2));
    CHECK_THROWS_AS(sjnr_db(h_t, x, h_j, Eigen::VectorXcd::Zero(3), sigma_n2), std::invalid_argument);
}

TEST_CASE("equal-power jamming pushes the mean SJNR below 0 dB") {
    Scenario s = base_scenario();
    s.jammer_mode = JammerMode::Unaware;
    s.power_ratio = 1.0;
    s.trials = 50;
    const ScenarioResult r = run_scenario(s);
    CHECK(r.summary.mean_sjnr_db < 0.0);
}

TEST_CASE("CRB sweep keeps the free <= uniform <= optimal ordering") {
    Scenario s = base_scenario();
    Eigen::VectorXd grid(161);
    for (int i = 0; i < 161; ++i) grid(i) = deg_to_rad(-80.0 + i * 1.0);
    const CrbCurves curves = crb_sweep(s, grid);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        CHECK(curves.free(i) <= curves.uniform(i) * (1.0 + 1e-12));
        CHECK(curves.uniform(i) <= curves.optimal(i) * (1.0 + 1e-12));
    }
}

TEST_CASE("uniform and optimal CRB curves coincide for a Rayleigh jammer") {
    Scenario s = base_scenario();
    s.k_j_db = -std::numeric_limits<double>::infinity(); // k_j = 0
    Eigen::VectorXd grid(33);
    for (int i = 0; i < 33; ++i) grid(i) = deg_to_rad(-80.0 + i * 5.0);
    const CrbCurves curves = crb_sweep(s, grid);
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        CHECK(std::abs(curves.uniform(i) - curves.optimal(i)) <= 1e-10 * curves.uniform(i));
}

TEST_CASE("scenario validation rejects bad fields") {
    Scenario s = base_scenario();
    s.trials = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = base_scenario();
    s.theta_j_deg = 120.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = base_scenario();
    s.grid_step_deg = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
