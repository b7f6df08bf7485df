// Acceptance suite: end-to-end checks of the library's headline claims, one
// printed pass/fail line per criterion. Returns the number of failures.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aoajam/aoajam.hpp"

using namespace aoajam;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  %2d. %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

Scenario figure_scenario() {
    Scenario s;
    s.n_r = 4;
    s.n_j = 4;
    s.k_t_db = 10.0;
    s.k_j_db = 10.0;
    s.training_len = 64;
    s.snr_db = 15.0;
    s.power_ratio = 1.0;
    s.trials = 500;
    s.seed = 20260808;
    s.grid_min_deg = -90.0;
    s.grid_max_deg = 90.0;
    s.grid_step_deg = 1.0;
    return s;
}

Eigen::VectorXd degree_grid(double lo, double hi, double step) {
    const int count = int(std::lround((hi - lo) / step)) + 1;
    Eigen::VectorXd g(count);
    for (int i = 0; i < count; ++i) g(i) = deg_to_rad(lo + i * step);
    return g;
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

// 1. CRB ordering at the Fig. 2 operating point.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    Scenario s = figure_scenario();
    s.theta_j_deg = 30.0;
    const Eigen::VectorXd grid = degree_grid(-80.0, 80.0, 1.0);
    const CrbCurves curves = crb_sweep(s, grid);
    int violations = 0;
    double max_sep = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!(curves.free(i) <= curves.uniform(i) * (1 + 1e-12)) ||
            !(curves.uniform(i) <= curves.optimal(i) * (1 + 1e-12)))
            ++violations;
        max_sep = std::max(max_sep, (curves.optimal(i) - curves.uniform(i)) / curves.uniform(i));
    }
    const double dt = seconds_since(t0);
    const bool pass = violations == 0 && max_sep >= 0.05 && dt < 10.0;
    report(1, "CRB ordering free <= uniform <= optimal",
           pass, fmt("violations=%d, max uniform->optimal separation=%.1f%%, %.2fs", violations,
                     100.0 * max_sep, dt));
}

// 2. Rayleigh jammer: optimal allocation degenerates to uniform.
void criterion_2() {
    const double p_j = 4.0;
    const auto alloc = unaware_allocation(4, 4, 0.0, p_j);
    const Eigen::MatrixXcd uniform = (p_j / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
    const double alloc_err = (alloc.covariance - uniform).cwiseAbs().maxCoeff();

    Scenario s = figure_scenario();
    s.theta_j_deg = 30.0;
    s.k_j_db = -std::numeric_limits<double>::infinity();
    const Eigen::VectorXd grid = degree_grid(-80.0, 80.0, 1.0);
    const CrbCurves curves = crb_sweep(s, grid);
    double max_rel = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        max_rel = std::max(max_rel, std::abs(curves.uniform(i) - curves.optimal(i)) / curves.uniform(i));
    const bool pass = alloc_err == 0.0 && max_rel <= 1e-10;
    report(2, "k_j -> 0 degenerates to uniform power",
           pass, fmt("allocation error=%g, max curve mismatch=%g", alloc_err, max_rel));
}

// 3. Closed-form eigenvalues of the transmit correlation.
void criterion_3() {
    double worst = 0.0;
    for (double k : {0.0, 0.1, 1.0, 10.0, 100.0})
        for (int n : {1, 2, 4, 8}) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(upsilon(n, k));
            Eigen::VectorXd analytic = upsilon_eigenvalues(n, k);
            std::sort(analytic.data(), analytic.data() + n);
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(es.eigenvalues()(i) - analytic(i)) /
                                            std::max(1.0, analytic(i)));
        }
    report(3, "transmit-correlation eigenvalue law", worst <= 1e-10, fmt("worst residual=%.2e", worst));
}

// 4. Water-filling KKT and budget residuals on random instances.
void criterion_4() {
    Rng rng(4242);
    int kkt_violations = 0, budget_violations = 0;
    double worst_kkt = 0.0, worst_budget = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + int(rng.next_double() * 8.0);
        Eigen::VectorXd ev(n);
        bool any_positive = false;
        for (int i = 0; i < n; ++i) {
            if (rng.next_double() < 0.2) {
                ev(i) = 0.0;
            } else {
                ev(i) = std::pow(10.0, -3.0 + 6.0 * rng.next_double());
                any_positive = true;
            }
        }
        if (!any_positive) ev(0) = 1.0;
        const double budget = 0.1 + 10.0 * rng.next_double();
        const auto sol = water_fill(ev, budget);

        const double budget_res = std::abs(sol.allocations.sum() - budget) / std::max(1.0, budget);
        worst_budget = std::max(worst_budget, budget_res);
        if (budget_res > 1e-12) ++budget_violations;
        for (int i = 0; i < n; ++i) {
            if (ev(i) == 0.0) continue;
            const double res = sol.allocations(i) > 0.0
                                   ? std::abs(sol.level - 1.0 / ev(i) - sol.allocations(i))
                                   : std::max(0.0, sol.level - 1.0 / ev(i));
            worst_kkt = std::max(worst_kkt, res);
            if (res > 1e-9) ++kkt_violations;
        }
    }
    const bool pass = kkt_violations == 0 && budget_violations == 0;
    report(4, "water-filling KKT + budget on 1000 random instances",
           pass, fmt("worst KKT=%.2e, worst budget=%.2e", worst_kkt, worst_budget));
}

// 5. Aligned signal vs. brute force on the perfect-CSI jamming objective.
void criterion_5() {
    const ArrayGeometry rx = ArrayGeometry::half_wavelength_ula(4);
    Rng rng(555);
    int failing_instances = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int inst = 0; inst < 200; ++inst) {
        const double theta_t = deg_to_rad(-80.0 + 160.0 * rng.next_double());
        const double theta_j = deg_to_rad(-80.0 + 160.0 * rng.next_double());
        const RicianChannelSpec spec_t(10.0, theta_t, 0.0, rx, ArrayGeometry::single_element());
        const RicianChannelSpec spec_j(10.0, theta_j, 0.0, rx, ArrayGeometry::half_wavelength_ula(4));
        const Eigen::MatrixXcd h_j = sample_channel(spec_j, derive_seed(71, inst)).total;
        const Eigen::VectorXcd h_nlos = sample_channel(spec_t, derive_seed(72, inst)).nlos.col(0);
        TrainingSequence x_t = make_training(1, 1.0, derive_seed(73, inst));
        const double budget = 1.0;

        const Eigen::MatrixXcd gram = h_j.adjoint() * h_j;
        const Eigen::VectorXcd cross = h_j.adjoint() * h_nlos;
        const auto objective = [&](const Eigen::VectorXcd& x) {
            return (x_t.symbols(0) * x.dot(cross)).real() + (x.adjoint() * gram * x).real()(0, 0);
        };

        const Eigen::VectorXcd aligned = aware_signal({h_j}, x_t, budget).slots[0];
        const double aligned_value = objective(aligned);

        double best_random = -std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 10000; ++draw) {
            Eigen::VectorXcd x(4);
            for (int i = 0; i < 4; ++i) x(i) = rng.next_cnormal();
            x *= std::sqrt(budget) / x.norm();
            best_random = std::max(best_random, objective(x));
        }
        const double gap = aligned_value - best_random;
        min_gap = std::min(min_gap, gap);
        if (gap < 0.0) ++failing_instances;
    }
    const bool pass = failing_instances == 0;
    report(5, "aligned-signal optimality vs 10^4 random signals",
           pass, fmt("failing instances=%d/200, min gap=%.4f", failing_instances, min_gap));
}

// 6. Closed-form channel expectations vs Monte Carlo.
void criterion_6() {
    const ArrayGeometry rx = ArrayGeometry::half_wavelength_ula(4);
    const int n_draws = 100000;
    int violations = 0;
    double worst_z = 0.0;
    for (double k : {0.0, 1.0, 10.0}) {
        const RicianChannelSpec spec(k, deg_to_rad(50.0), 0.0, rx, ArrayGeometry::half_wavelength_ula(4));
        const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(4, 4);
        const Eigen::MatrixXcd expected_g = expected_gram(spec).cast<cxd>();
        const Eigen::MatrixXcd expected_s = expected_sandwich(spec, q);

        Eigen::MatrixXcd sum_g = Eigen::MatrixXcd::Zero(4, 4), sum_s = Eigen::MatrixXcd::Zero(4, 4);
        Eigen::MatrixXd sq_g_re = Eigen::MatrixXd::Zero(4, 4), sq_g_im = Eigen::MatrixXd::Zero(4, 4);
        Eigen::MatrixXd sq_s_re = Eigen::MatrixXd::Zero(4, 4), sq_s_im = Eigen::MatrixXd::Zero(4, 4);
        for (int i = 0; i < n_draws; ++i) {
            const Eigen::MatrixXcd h = sample_channel(spec, derive_seed(606 + int(k), i)).total;
            const Eigen::MatrixXcd g = h.adjoint() * h;
            const Eigen::MatrixXcd sw = h * q * h.adjoint();
            sum_g += g;
            sum_s += sw;
            sq_g_re += g.real().cwiseAbs2();
            sq_g_im += g.imag().cwiseAbs2();
            sq_s_re += sw.real().cwiseAbs2();
            sq_s_im += sw.imag().cwiseAbs2();
        }
        const auto check = [&](const Eigen::MatrixXcd& sum, const Eigen::MatrixXd& sq_re,
                               const Eigen::MatrixXd& sq_im, const Eigen::MatrixXcd& expected) {
            const Eigen::MatrixXcd mean = sum / double(n_draws);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const double se_re = std::sqrt(std::max(
                        0.0, (sq_re(i, j) / n_draws - std::norm(mean(i, j).real())) / n_draws));
                    const double se_im = std::sqrt(std::max(
                        0.0, (sq_im(i, j) / n_draws - std::norm(mean(i, j).imag())) / n_draws));
                    const double z_re =
                        std::abs(mean(i, j).real() - expected(i, j).real()) / (se_re + 1e-13);
                    const double z_im =
                        std::abs(mean(i, j).imag() - expected(i, j).imag()) / (se_im + 1e-13);
                    worst_z = std::max({worst_z, z_re, z_im});
                    if (z_re > 3.0 || z_im > 3.0) ++violations;
                }
        };
        check(sum_g, sq_g_re, sq_g_im, expected_g);
        check(sum_s, sq_s_re, sq_s_im, expected_s);
    }
    report(6, "expected gram/sandwich vs Monte Carlo (3 SE)", violations == 0,
           fmt("entry violations=%d, worst |z|=%.2f", violations, worst_z));
}

// 7. Capture effect under training-aligned jamming (statistical receiver).
// Evaluated with per-slot fading, the regime the whitened-likelihood model
// assumes.
void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();

    Scenario a = figure_scenario();
    a.theta_t_deg = 12.0;
    a.theta_j_deg = 50.0;
    a.power_ratio = 1.0;
    a.jammer_mode = JammerMode::Aware;
    a.receiver_knowledge = ReceiverKnowledge::Statistical;
    a.block_fading = false;
    a.keep_spectra = true;
    a.refine = false;
    const ScenarioResult ra = run_scenario(a);
    int dual_peak = 0, dual_loose = 0;
    for (const TrialRecord& trial : ra.trials) {
        if (has_local_max_near(*trial.spectrum, 12.0, 1.0) && has_local_max_near(*trial.spectrum, 50.0, 1.0))
            ++dual_peak;
        if (has_local_max_near(*trial.spectrum, 12.0, 6.0) && has_local_max_near(*trial.spectrum, 50.0, 6.0))
            ++dual_loose;
    }
    const double dual_rate = double(dual_peak) / double(ra.trials.size());
    const double loose_rate = double(dual_loose) / double(ra.trials.size());

    Scenario b = figure_scenario();
    b.theta_t_deg = 23.0;
    b.theta_j_deg = 40.0;
    b.power_ratio = 4.0;
    b.jammer_mode = JammerMode::Aware;
    b.receiver_knowledge = ReceiverKnowledge::Statistical;
    b.block_fading = false;
    const double capture = run_scenario(b).summary.capture_rate;

    const double dt = seconds_since(t0);
    const bool pass = dual_rate >= 0.8 && capture >= 0.9 && dt < 120.0;
    report(7, "capture effect under aligned jamming",
           pass, fmt("dual-peak@1cell rate=%.3f (>=0.8; within 6 deg: %.3f), capture at 4x=%.3f (>=0.9), %.1fs",
                     dual_rate, loose_rate, capture, dt));
}

// 8. Gaussian (unaware) jamming leaves the estimator on the transmitter.
void criterion_8() {
    Scenario s = figure_scenario();
    s.theta_t_deg = 12.0;
    s.theta_j_deg = 50.0;
    s.power_ratio = 1.0;
    s.jammer_mode = JammerMode::Unaware;
    s.receiver_knowledge = ReceiverKnowledge::Statistical;
    s.block_fading = false;
    s.refine = false;
    const ScenarioResult r = run_scenario(s);
    int on_target = 0;
    for (const TrialRecord& trial : r.trials)
        if (std::abs(rad_to_deg(trial.theta_hat) - 12.0) <= 1.0 + 1e-9) ++on_target;
    const double rate = double(on_target) / double(r.trials.size());
    report(8, "robustness to unaware Gaussian jamming", rate >= 0.9,
           fmt("on-target rate=%.3f (>=0.9)", rate));
}

// 9. Perfect CSI at the receiver defeats aligned jamming. Block fading: the
// receiver knows the burst's channel realizations, the setting in which
// realization-based whitening is defined.
void criterion_9() {
    Scenario stat = figure_scenario();
    stat.theta_t_deg = 23.0;
    stat.theta_j_deg = 40.0;
    stat.power_ratio = 4.0;
    stat.jammer_mode = JammerMode::Aware;
    stat.receiver_knowledge = ReceiverKnowledge::Statistical;
    const double capture_stat = run_scenario(stat).summary.capture_rate;

    Scenario csi = stat;
    csi.receiver_knowledge = ReceiverKnowledge::PerfectCsi;
    csi.refine = false;
    const ScenarioResult r = run_scenario(csi);
    int on_target = 0;
    for (const TrialRecord& trial : r.trials)
        if (std::abs(rad_to_deg(trial.theta_hat) - 23.0) <= 1.0 + 1e-9) ++on_target;
    const double on_rate = double(on_target) / double(r.trials.size());
    const bool pass = r.summary.capture_rate < capture_stat && on_rate >= 0.7;
    report(9, "perfect-CSI receiver advantage",
           pass, fmt("capture csi=%.3f < stat=%.3f, on-target=%.3f (>=0.7)", r.summary.capture_rate,
                     capture_stat, on_rate));
}

// 10. Estimator efficiency approaches the bound as the array grows. A short
// training burst over a heavily diffuse channel puts the 4-element array just
// below the estimator's threshold SNR; array gain then walks the variance
// down onto the bound.
void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> ratios;
    std::string detail;
    for (int n_r : {4, 8, 16, 32}) {
        Scenario s = figure_scenario();
        s.n_r = n_r;
        s.theta_t_deg = 12.0;
        s.k_t_db = -4.5;
        s.training_len = 5;
        s.jammer_mode = JammerMode::None;
        s.receiver_knowledge = ReceiverKnowledge::Statistical;
        s.block_fading = false; // per-slot diffuse fading, the regime the bound models
        s.trials = 2000;
        s.seed = 99;
        s.refine = true;
        const ScenarioResult r = run_scenario(s);
        ratios.push_back(r.summary.var_theta_hat / r.summary.crb_at_theta_t);
        detail += fmt("%s%d:%.3f", detail.empty() ? "" : " ", n_r, ratios.back());
    }
    bool nonincreasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] > ratios[i - 1]) nonincreasing = false;
    const double dt = seconds_since(t0);
    const bool pass = nonincreasing && ratios.back() <= 1.15 && dt < 300.0;
    report(10, "asymptotic efficiency var/CRB",
           pass, fmt("ratios {%s}, final<=1.15, %.1fs", detail.c_str(), dt));
}

// 11. Byte-identical CLI outputs for identical seeds.
void criterion_11() {
    const fs::path tmp = fs::temp_directory_path() / "aoajam_acceptance";
    fs::create_directories(tmp);
    const fs::path cfg = tmp / "scenario.cfg";
    {
        Scenario s = figure_scenario();
        s.theta_t_deg = 12.0;
        s.theta_j_deg = 50.0;
        s.jammer_mode = JammerMode::Aware;
        s.receiver_knowledge = ReceiverKnowledge::Statistical;
        s.trials = 20;
        s.grid_min_deg = -80.0; // the bound diverges at endfire
        s.grid_max_deg = 80.0;
        std::ofstream out(cfg);
        out << emit_config(s);
    }
    const std::string cli = AOAJAM_CLI_PATH;
    const auto read_all = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool pass = true;
    std::string detail;
    for (const std::string& sub : {std::string("crb"), std::string("spectrum")}) {
        const fs::path o1 = tmp / (sub + "_1.csv");
        const fs::path o2 = tmp / (sub + "_2.csv");
        const std::string base = cli + " " + sub + " --config " + cfg.string();
        const int rc1 = std::system((base + " --out " + o1.string() + " 2>/dev/null").c_str());
        const int rc2 = std::system((base + " --out " + o2.string() + " 2>/dev/null").c_str());
        const bool same = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0 && read_all(o1) == read_all(o2);
        if (!same) pass = false;
        detail += sub + (same ? "=identical " : "=DIFFERS ");
    }
    {
        const fs::path o1 = tmp / "sweep_1.csv";
        const fs::path o2 = tmp / "sweep_2.csv";
        const std::string base =
            cli + " sweep --config " + cfg.string() + " --param power_ratio --values 1,2,4";
        const int rc1 = std::system((base + " --out " + o1.string() + " 2>/dev/null").c_str());
        const int rc2 = std::system((base + " --out " + o2.string() + " 2>/dev/null").c_str());
        const bool same = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0 && read_all(o1) == read_all(o2);
        if (!same) pass = false;
        detail += std::string("sweep") + (same ? "=identical" : "=DIFFERS");
    }
    std::error_code ec;
    fs::remove_all(tmp, ec);
    report(11, "deterministic CLI outputs", pass, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures > 0) std::printf("%d criterion(s) failed\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures;
}
