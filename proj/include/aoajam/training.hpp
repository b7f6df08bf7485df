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
#include <cstdint>
#include <stdexcept>

#include "aoajam/rng.hpp"

namespace aoajam {

// Known training sequence of length L, constrained per symbol (p_max) and in
// total (p_tot).
struct TrainingSequence {
    Eigen::VectorXcd symbols;
    double p_max = 1.0;
    double p_tot = 0.0;

    int length() const { return static_cast<int>(symbols.size()); }

    void validate() const {
        if (symbols.size() == 0) throw std::invalid_argument("TrainingSequence: empty");
        if (!(p_max > 0.0)) throw std::invalid_argument("TrainingSequence: p_max must be > 0");
        double total = 0.0;
        for (Eigen::Index l = 0; l < symbols.size(); ++l) {
            const double p = std::norm(symbols(l));
            if (p > p_max * (1.0 + 1e-12))
                throw std::invalid_argument("TrainingSequence: per-symbol power exceeds p_max");
            total += p;
        }
        if (total > p_tot * (1.0 + 1e-12))
            throw std::invalid_argument("TrainingSequence: total power exceeds p_tot");
    }
};

// Full-power training: every symbol at sqrt(p_max) with a random phase. Keeps
// both power constraints tight, which is also what the closed-form CRB
// assumes of the training energy.
inline TrainingSequence make_training(int length, double p_max, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("make_training: length must be >= 1");
    if (!(p_max > 0.0)) throw std::invalid_argument("make_training: p_max must be > 0");
    Rng rng(seed);
    TrainingSequence ts;
    ts.symbols.resize(length);
    const double amp = std::sqrt(p_max);
    for (int l = 0; l < length; ++l) ts.symbols(l) = std::polar(amp, rng.next_phase());
    ts.p_max = p_max;
    ts.p_tot = length * p_max;
    ts.validate();
    return ts;
}

} // namespace aoajam
