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
#include <complex>
#include <numbers>
#include <stdexcept>

namespace aoajam {

using cxd = std::complex<double>;

// Uniform linear array: n equally spaced elements on a line. Angles are
// measured from broadside and restricted to [-pi/2, pi/2]; outside that range
// a ULA response is ambiguous (front/back mirror).
struct ArrayGeometry {
    int n_elements = 1;
    double spacing = 0.5;    // element spacing, meters
    double wavelength = 1.0; // carrier wavelength, meters

    ArrayGeometry() = default;
    ArrayGeometry(int n, double d, double lambda) : n_elements(n), spacing(d), wavelength(lambda) {
        if (n_elements < 1) throw std::invalid_argument("ArrayGeometry: n_elements must be >= 1");
        if (!(spacing > 0.0)) throw std::invalid_argument("ArrayGeometry: spacing must be > 0");
        if (!(wavelength > 0.0)) throw std::invalid_argument("ArrayGeometry: wavelength must be > 0");
    }

    static ArrayGeometry half_wavelength_ula(int n) { return {n, 0.5, 1.0}; }
    static ArrayGeometry single_element() { return {1, 0.5, 1.0}; }

    // 2*pi*d/lambda, the phase advance per element per unit sin(theta).
    double phase_constant() const { return 2.0 * std::numbers::pi * spacing / wavelength; }
};

inline void check_angle_domain(double theta) {
    if (!(theta >= -std::numbers::pi / 2.0 && theta <= std::numbers::pi / 2.0))
        throw std::invalid_argument("angle outside [-pi/2, pi/2]");
}

struct SteeringVector {
    Eigen::VectorXcd entries;
    double angle = 0.0;
};

// a(theta) = [1, z, z^2, ..., z^{N-1}]^T with z = exp(-j*2*pi*d*sin(theta)/lambda).
inline SteeringVector steering_vector(const ArrayGeometry& geom, double theta) {
    check_angle_domain(theta);
    const double psi = -geom.phase_constant() * std::sin(theta);
    Eigen::VectorXcd a(geom.n_elements);
    for (int m = 0; m < geom.n_elements; ++m)
        a(m) = std::polar(1.0, psi * static_cast<double>(m));
    return {std::move(a), theta};
}

// Entrywise analytic derivative of the steering vector with respect to theta:
// entry m is (-j*2*pi*d*m*cos(theta)/lambda) * z^m.
inline Eigen::VectorXcd steering_derivative(const ArrayGeometry& geom, double theta) {
    check_angle_domain(theta);
    const double beta = geom.phase_constant() * std::cos(theta);
    const double psi = -geom.phase_constant() * std::sin(theta);
    Eigen::VectorXcd d(geom.n_elements);
    for (int m = 0; m < geom.n_elements; ++m) {
        const double md = static_cast<double>(m);
        d(m) = cxd(0.0, -beta * md) * std::polar(1.0, psi * md);
    }
    return d;
}

// Orthogonal projector onto the complement of span{a}: I - a a^H / (a^H a).
inline Eigen::MatrixXcd projector_complement(const SteeringVector& a) {
    const double n = a.entries.squaredNorm();
    if (!(n > 0.0)) throw std::invalid_argument("projector_complement: zero vector");
    const Eigen::Index dim = a.entries.size();
    return Eigen::MatrixXcd::Identity(dim, dim) - (a.entries * a.entries.adjoint()) / n;
}

// D^H D in closed form for the ULA: (2*pi*d*cos(theta)/lambda)^2 * sum_{m} m^2.
inline double ula_sigma(const ArrayGeometry& geom, double theta) {
    check_angle_domain(theta);
    const double beta = geom.phase_constant() * std::cos(theta);
    double sum_sq = 0.0;
    for (int m = 0; m < geom.n_elements; ++m) sum_sq += static_cast<double>(m) * static_cast<double>(m);
    return beta * beta * sum_sq;
}

} // namespace aoajam
