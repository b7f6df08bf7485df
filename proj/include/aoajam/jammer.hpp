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
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aoajam/channel.hpp"
#include "aoajam/rng.hpp"
#include "aoajam/training.hpp"
#include "aoajam/waterfill.hpp"

namespace aoajam {

// Optimal covariance of a jammer that knows only the channel statistics.
// In the eigenbasis of the transmit correlation the allocation is diagonal:
// with threshold tau = k(1+k) / (n_r (1 + n_j k)) and per-mode share p = P/n_j,
//
//   q_1 = min(p, tau) * n_j + (p - tau)^+        (dominant mode)
//   q_i = (p - tau)^+ ,  i > 1
//
// which reduces to uniform power at k = 0 and always meets the budget with
// equality. `covariance` is the same allocation rotated back to antenna
// coordinates, i.e. what a transmitter with n_j physical antennas emits.
struct UnawareAllocation {
    Eigen::VectorXd eigenbasis_diag; // q_1, q_2, ..., q_{n_j}
    Eigen::MatrixXcd covariance;     // n_j x n_j, Hermitian PSD, trace = budget
    double threshold = 0.0;
};

inline UnawareAllocation unaware_allocation(int n_j, int n_r, double k_j, double budget) {
    if (n_j < 1) throw std::invalid_argument("unaware_allocation: n_j must be >= 1");
    if (n_r < 1) throw std::invalid_argument("unaware_allocation: n_r must be >= 1");
    if (!(k_j >= 0.0)) throw std::invalid_argument("unaware_allocation: k_j must be >= 0");
    if (!(budget >= 0.0)) throw std::invalid_argument("unaware_allocation: negative budget");

    const double share = budget / n_j;
    const double tau = k_j * (1.0 + k_j) / (n_r * (1.0 + n_j * k_j));
    const double rest = std::max(0.0, share - tau);
    const double first = std::min(share, tau) * n_j + rest;

    UnawareAllocation out;
    out.threshold = tau;
    out.eigenbasis_diag = Eigen::VectorXd::Constant(n_j, rest);
    out.eigenbasis_diag(0) = first;

    // The dominant eigenvector of the transmit correlation is the normalized
    // all-ones vector; the remaining eigenmodes share the constant `rest`, so
    // the rotation back to antenna coordinates has the closed form
    // rest * I + (first - rest)/n_j * ones.
    out.covariance = rest * Eigen::MatrixXcd::Identity(n_j, n_j) +
                     ((first - rest) / n_j) * Eigen::MatrixXcd::Ones(n_j, n_j);
    return out;
}

// L i.i.d. draws from CN(0, Q). Q may be singular; modes with zero variance
// produce exact zeros.
inline std::vector<Eigen::VectorXcd> sample_unaware_signal(const Eigen::MatrixXcd& q, int length,
                                                           std::uint64_t seed) {
    check_psd(q);
    const Eigen::Index n = q.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q);
    Eigen::VectorXd scale = es.eigenvalues();
    const double floor = 1e-14 * std::max(1.0, scale.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) scale(i) = scale(i) > floor ? std::sqrt(scale(i)) : 0.0;

    Rng rng(seed);
    std::vector<Eigen::VectorXcd> slots;
    slots.reserve(static_cast<std::size_t>(length));
    for (int l = 0; l < length; ++l) {
        Eigen::VectorXcd g(n);
        for (Eigen::Index i = 0; i < n; ++i) g(i) = scale(i) == 0.0 ? cxd(0, 0) : scale(i) * rng.next_cnormal();
        slots.push_back(es.eigenvectors() * g);
    }
    return slots;
}

// Signal-aware jammer: per slot, water-fill the budget over the eigenmodes of
// H_j^H H_j and phase-lock every active mode to the training symbol. The
// per-slot vector is renormalized to spend exactly the budget; the power the
// literal 1/|x|^2 alignment scale would have produced is kept for diagnostics.
struct AwareSignal {
    std::vector<Eigen::VectorXcd> slots;
    std::vector<double> pre_normalization_power;
};

inline AwareSignal aware_signal(const std::vector<Eigen::MatrixXcd>& h_j_slots,
                                const TrainingSequence& x_t, double budget) {
    if (h_j_slots.empty()) throw std::invalid_argument("aware_signal: no channel slots");
    if (static_cast<int>(h_j_slots.size()) != x_t.length())
        throw std::invalid_argument("aware_signal: slot count mismatch with training length");
    if (!(budget >= 0.0)) throw std::invalid_argument("aware_signal: negative budget");

    const Eigen::Index n_r = h_j_slots.front().rows();
    const Eigen::Index n_j = h_j_slots.front().cols();
    const Eigen::Index n_active = std::min(n_r, n_j);

    AwareSignal out;
    out.slots.reserve(h_j_slots.size());
    out.pre_normalization_power.reserve(h_j_slots.size());

    for (std::size_t l = 0; l < h_j_slots.size(); ++l) {
        const Eigen::MatrixXcd& h = h_j_slots[l];
        if (h.rows() != n_r || h.cols() != n_j)
            throw std::invalid_argument("aware_signal: inconsistent channel dimensions");
        const cxd x = x_t.symbols(static_cast<Eigen::Index>(l));
        const double x_pow = std::norm(x);
        if (!(x_pow > 0.0)) throw std::invalid_argument("aware_signal: zero training symbol");

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.adjoint() * h);
        // Sort modes by decreasing gain; stable so equal gains keep the
        // decomposition's native order.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n_j));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return es.eigenvalues()(a) > es.eigenvalues()(b);
        });

        Eigen::VectorXd gains = Eigen::VectorXd::Zero(n_active);
        for (Eigen::Index i = 0; i < n_active; ++i) gains(i) = std::max(0.0, es.eigenvalues()(order[i]));

        Eigen::VectorXcd rotated = Eigen::VectorXcd::Zero(n_j);
        if (budget > 0.0) {
            const WaterFillingSolution wf = water_fill(gains, budget);
            const cxd unit_phase = x / std::sqrt(x_pow);
            for (Eigen::Index i = 0; i < n_active; ++i)
                rotated(i) = std::sqrt(wf.allocations(i)) * unit_phase;
        }
        out.pre_normalization_power.push_back(budget / x_pow);

        Eigen::VectorXcd signal = Eigen::VectorXcd::Zero(n_j);
        for (Eigen::Index i = 0; i < n_j; ++i) signal += rotated(i) * es.eigenvectors().col(order[i]);
        out.slots.push_back(std::move(signal));
    }
    return out;
}

} // namespace aoajam
