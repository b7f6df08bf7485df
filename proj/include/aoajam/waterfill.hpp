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
#include <cmath>
#include <stdexcept>
#include <vector>

namespace aoajam {

// Water-filling over channel eigenmodes: allocation_i = (level - 1/lambda_i)^+
// with the level set so the allocations sum to the power budget. Modes with
// zero gain receive zero power.
struct WaterFillingSolution {
    Eigen::VectorXd allocations;
    double level = 0.0;
};

inline WaterFillingSolution water_fill(const Eigen::VectorXd& eigenvalues, double budget) {
    const Eigen::Index n = eigenvalues.size();
    if (n == 0) throw std::invalid_argument("water_fill: empty eigenvalue set");
    if (!(budget >= 0.0)) throw std::invalid_argument("water_fill: negative budget");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(eigenvalues(i) >= 0.0)) throw std::invalid_argument("water_fill: negative eigenvalue");

    std::vector<double> inv; // 1/lambda for usable modes
    inv.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        if (eigenvalues(i) > 0.0) inv.push_back(1.0 / eigenvalues(i));

    WaterFillingSolution sol;
    sol.allocations = Eigen::VectorXd::Zero(n);
    if (inv.empty()) {
        if (budget > 0.0) throw std::invalid_argument("water_fill: no usable mode for positive budget");
        sol.level = 0.0;
        return sol;
    }
    const double inv_min = *std::min_element(inv.begin(), inv.end());
    if (budget == 0.0) {
        sol.level = inv_min; // every mode inactive, KKT level <= 1/lambda_i holds
        return sol;
    }

    // Bisection on the water level; poured(level) is monotone nondecreasing.
    auto poured = [&](double level) {
        double s = 0.0;
        for (double v : inv) s += std::max(0.0, level - v);
        return s;
    };
    double lo = inv_min;
    double hi = inv_min + budget;
    while (poured(hi) < budget) hi = inv_min + 2.0 * (hi - inv_min);
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (poured(mid) < budget)
            lo = mid;
        else
            hi = mid;
    }
    // Prune to the active set found by the bisection and solve the level
    // exactly on it, driving the budget residual to rounding error.
    const double approx_level = 0.5 * (lo + hi);
    double inv_sum = 0.0;
    int n_active = 0;
    for (double v : inv)
        if (approx_level > v) {
            inv_sum += v;
            ++n_active;
        }
    if (n_active == 0) { // budget vanishingly small relative to the spread
        n_active = 1;
        inv_sum = inv_min;
    }
    sol.level = (budget + inv_sum) / n_active;
    for (Eigen::Index i = 0; i < n; ++i)
        if (eigenvalues(i) > 0.0) sol.allocations(i) = std::max(0.0, sol.level - 1.0 / eigenvalues(i));
    return sol;
}

} // namespace aoajam
