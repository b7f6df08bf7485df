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
#include <stdexcept>

namespace aoajam {

// Hermitian inverse square root via eigendecomposition. Eigenvalues are
// floored at floor_rel * lambda_max to guard numerically singular inputs.
inline Eigen::MatrixXcd inverse_sqrt_hermitian(const Eigen::MatrixXcd& m, double floor_rel = 1e-12) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse_sqrt_hermitian: not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("inverse_sqrt_hermitian: eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lmax = ev.maxCoeff();
    if (!(lmax > 0.0)) throw std::invalid_argument("inverse_sqrt_hermitian: matrix not positive");
    const double floor = floor_rel * lmax;
    Eigen::VectorXd inv_sqrt(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) inv_sqrt(i) = 1.0 / std::sqrt(std::max(ev(i), floor));
    return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace aoajam
