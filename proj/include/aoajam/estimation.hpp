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
#include <limits>
#include <stdexcept>
#include <vector>

#include "aoajam/array.hpp"
#include "aoajam/channel.hpp"
#include "aoajam/linalg.hpp"
#include "aoajam/training.hpp"

namespace aoajam {

// How much the receiver knows about what it is whitening against.
enum class KnowledgeLevel {
    PerfectCsi,    // realizations of both channels and the jamming signal
    Statistical,   // channel statistics and a jamming covariance
    WorstCaseAware // channel statistics plus "assume a training-aligned jammer"
};

// Covariance of everything the receiver treats as interference: diffuse
// component, jamming and thermal noise.
struct InterferenceCovariance {
    Eigen::MatrixXcd matrix;
    KnowledgeLevel knowledge_level = KnowledgeLevel::Statistical;

    void validate() const {
        const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("InterferenceCovariance: not Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9 * scale)
            throw std::invalid_argument("InterferenceCovariance: not positive semidefinite");
    }
};

// Sample interference covariance from known realizations:
//
//   R_z = 1/L sum_l (h_nlos[l] x[l] + H_j[l] X_j[l]) (...)^H + sigma_n^2 I
//
// expanded into its four cross terms. The noise enters through its covariance
// rather than a sample.
inline InterferenceCovariance rz_perfect_csi(const std::vector<Eigen::VectorXcd>& h_t_nlos,
                                             const std::vector<Eigen::MatrixXcd>& h_j,
                                             const TrainingSequence& x_t,
                                             const std::vector<Eigen::VectorXcd>& x_j,
                                             double sigma_n2) {
    const std::size_t slots = h_t_nlos.size();
    if (slots == 0) throw std::invalid_argument("rz_perfect_csi: no slots");
    if (h_j.size() != slots || x_j.size() != slots || static_cast<std::size_t>(x_t.length()) != slots)
        throw std::invalid_argument("rz_perfect_csi: slot count mismatch");
    const Eigen::Index n_r = h_t_nlos.front().size();

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n_r, n_r);
    for (std::size_t l = 0; l < slots; ++l) {
        if (h_t_nlos[l].size() != n_r || h_j[l].rows() != n_r || h_j[l].cols() != x_j[l].size())
            throw std::invalid_argument("rz_perfect_csi: dimension mismatch");
        const cxd x = x_t.symbols(static_cast<Eigen::Index>(l));
        const Eigen::VectorXcd jam = h_j[l] * x_j[l];
        acc += std::norm(x) * (h_t_nlos[l] * h_t_nlos[l].adjoint());
        acc += x * (h_t_nlos[l] * jam.adjoint());
        acc += std::conj(x) * (jam * h_t_nlos[l].adjoint());
        acc += jam * jam.adjoint();
    }
    InterferenceCovariance rz;
    rz.matrix = acc / static_cast<double>(slots) +
                sigma_n2 * Eigen::MatrixXcd::Identity(n_r, n_r);
    rz.knowledge_level = KnowledgeLevel::PerfectCsi;
    rz.validate();
    return rz;
}

// Statistical interference covariance for a jammer with covariance Q:
//
//   R_z = (p_max/(1+k_t) + sigma_n^2) I + E[H_j Q H_j^H]
inline InterferenceCovariance rz_statistical(const RicianChannelSpec& spec_t,
                                             const RicianChannelSpec& spec_j,
                                             const Eigen::MatrixXcd& q_j, double p_max,
                                             double sigma_n2) {
    const int n_r = spec_t.rx_geom.n_elements;
    if (spec_j.rx_geom.n_elements != n_r)
        throw std::invalid_argument("rz_statistical: receive dimensions differ");
    const double diffuse = p_max / (1.0 + spec_t.k_factor);
    InterferenceCovariance rz;
    rz.matrix = (diffuse + sigma_n2) * Eigen::MatrixXcd::Identity(n_r, n_r);
    if (q_j.size() > 0) rz.matrix += expected_sandwich(spec_j, q_j);
    rz.knowledge_level = KnowledgeLevel::Statistical;
    rz.validate();
    return rz;
}

// Statistical covariance a receiver assumes when it anticipates a
// training-aligned jammer but knows only its power budget: the jamming term
// is the expected sandwich of the isotropic trace-P_j covariance.
inline InterferenceCovariance rz_worst_case_aware(const RicianChannelSpec& spec_t,
                                                  const RicianChannelSpec& spec_j, double p_j,
                                                  double p_max, double sigma_n2) {
    const int n_j = spec_j.tx_geom.n_elements;
    const Eigen::MatrixXcd q = (p_j / n_j) * Eigen::MatrixXcd::Identity(n_j, n_j);
    InterferenceCovariance rz = rz_statistical(spec_t, spec_j, q, p_max, sigma_n2);
    rz.knowledge_level = KnowledgeLevel::WorstCaseAware;
    return rz;
}

// Cramer-Rao bound for the LOS angle at theta:
//
//   CRB(theta) = (1 + k_t) / (2 L k_t p_max * Dw^H G~(theta) Dw)
//
// where Dw = R_z^{-1/2} D and G~ projects onto the complement of the
// whitened steering vector R_z^{-1/2} a. The information term expands to
// D^H R^{-1} D - |a^H R^{-1} D|^2 / (a^H R^{-1} a), which equals the
// unwhitened projector form whenever R_z is a scaled identity and is monotone
// nonincreasing in R_z in the Loewner order (more interference never shrinks
// the bound). k_t may be +inf (pure LOS), in which case the leading factor
// is 1.
inline double crb(double theta, const InterferenceCovariance& rz, const ArrayGeometry& geom,
                  int length, double k_t, double p_max) {
    if (length < 1) throw std::invalid_argument("crb: length must be >= 1");
    if (!(k_t > 0.0)) throw std::invalid_argument("crb: k_t must be > 0");
    if (!(p_max > 0.0)) throw std::invalid_argument("crb: p_max must be > 0");
    const Eigen::MatrixXcd w_half = inverse_sqrt_hermitian(rz.matrix);
    const Eigen::MatrixXcd w = w_half * w_half;
    const Eigen::VectorXcd a = steering_vector(geom, theta).entries;
    const Eigen::VectorXcd d = steering_derivative(geom, theta);
    const Eigen::VectorXcd wd = w * d;
    const double info = (d.adjoint() * wd).real()(0, 0) - std::norm(a.dot(wd)) / a.dot(w * a).real();
    if (info <= 1e-15) throw std::runtime_error("crb: angle unidentifiable (information vanishes)");
    const double rician = std::isinf(k_t) ? 1.0 : (1.0 + k_t) / k_t;
    return rician / (2.0 * length * p_max * info);
}

struct MLSpectrum {
    Eigen::VectorXd grid;   // angles, radians
    Eigen::VectorXd values; // normalized so the maximum is 1
    double argmax = 0.0;    // radians
};

// Internals of the ML spectrum shared by the grid scan and the refinement
// stage: whitener W = R_z^{-1} and the training-correlated statistic
// B = R_xy^H / R_xx.
struct SpectrumContext {
    Eigen::MatrixXcd whitener;
    Eigen::VectorXcd b;
    Eigen::VectorXcd wb; // whitener * b
    ArrayGeometry geom;
};

inline SpectrumContext make_spectrum_context(const std::vector<Eigen::VectorXcd>& y,
                                             const TrainingSequence& x_t,
                                             const InterferenceCovariance& rz,
                                             const ArrayGeometry& geom) {
    const std::size_t slots = y.size();
    if (slots == 0) throw std::invalid_argument("ml_spectrum: no observations");
    if (static_cast<std::size_t>(x_t.length()) != slots)
        throw std::invalid_argument("ml_spectrum: observation/training length mismatch");
    const Eigen::Index n_r = y.front().size();
    if (n_r != geom.n_elements) throw std::invalid_argument("ml_spectrum: geometry mismatch");

    double r_xx = 0.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n_r);
    for (std::size_t l = 0; l < slots; ++l) {
        if (y[l].size() != n_r) throw std::invalid_argument("ml_spectrum: ragged observations");
        const cxd x = x_t.symbols(static_cast<Eigen::Index>(l));
        r_xx += std::norm(x);
        b += std::conj(x) * y[l]; // (x[l] Y[l]^H)^H accumulated
    }
    r_xx /= static_cast<double>(slots);
    if (!(r_xx > 0.0)) throw std::invalid_argument("ml_spectrum: degenerate training (R_xx = 0)");
    b /= (static_cast<double>(slots) * r_xx);

    SpectrumContext ctx;
    const Eigen::MatrixXcd w_half = inverse_sqrt_hermitian(rz.matrix);
    ctx.whitener = w_half * w_half;
    ctx.b = std::move(b);
    ctx.wb = ctx.whitener * ctx.b;
    ctx.geom = geom;
    return ctx;
}

// Unnormalized spectrum value |a^H R^{-1} B|^2 / (a^H R^{-1} a) at theta.
inline double spectrum_value(const SpectrumContext& ctx, double theta) {
    const Eigen::VectorXcd a = steering_vector(ctx.geom, theta).entries;
    const cxd num = a.dot(ctx.wb); // a^H (W B)
    const double den = a.dot(ctx.whitener * a).real();
    return std::norm(num) / den;
}

inline MLSpectrum ml_spectrum(const std::vector<Eigen::VectorXcd>& y, const TrainingSequence& x_t,
                              const InterferenceCovariance& rz, const ArrayGeometry& geom,
                              const Eigen::VectorXd& grid) {
    if (grid.size() == 0) throw std::invalid_argument("ml_spectrum: empty grid");
    const SpectrumContext ctx = make_spectrum_context(y, x_t, rz, geom);

    MLSpectrum out;
    out.grid = grid;
    out.values.resize(grid.size());
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        out.values(i) = spectrum_value(ctx, grid(i));
        if (out.values(i) > out.values(best)) best = i;
    }
    const double peak = out.values(best);
    if (peak > 0.0) out.values /= peak;
    out.argmax = grid(best);
    return out;
}

// Golden-section maximization of f over [lo, hi] to the given tolerance.
template <typename F>
inline double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Grid argmax of the ML spectrum, optionally refined by one golden-section
// pass within +/- one grid cell.
inline double estimate_aoa(const std::vector<Eigen::VectorXcd>& y, const TrainingSequence& x_t,
                           const InterferenceCovariance& rz, const ArrayGeometry& geom,
                           const Eigen::VectorXd& grid, bool refine) {
    if (grid.size() == 0) throw std::invalid_argument("estimate_aoa: empty grid");
    const SpectrumContext ctx = make_spectrum_context(y, x_t, rz, geom);

    Eigen::Index best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double v = spectrum_value(ctx, grid(i));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double theta_hat = grid(best);
    if (refine && grid.size() > 1) {
        const double step = (best > 0) ? grid(best) - grid(best - 1)
                                       : grid(best + 1) - grid(best);
        const double lo = std::max(grid(best) - step, -std::numbers::pi / 2.0);
        const double hi = std::min(grid(best) + step, std::numbers::pi / 2.0);
        const double refined =
            golden_section_max([&](double t) { return spectrum_value(ctx, t); }, lo, hi, 1e-6);
        if (spectrum_value(ctx, refined) >= best_val) theta_hat = refined;
    }
    return theta_hat;
}

} // namespace aoajam
