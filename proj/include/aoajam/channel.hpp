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
#include <stdexcept>

#include "aoajam/array.hpp"
#include "aoajam/rng.hpp"

namespace aoajam {

// Rician flat-fading channel between a transmit array and a receive array.
// The channel splits into a deterministic line-of-sight part and a diffuse
// Rayleigh part:
//
//   H      = H_los + H_nlos
//   H_los  = mu * (1+j)/sqrt(2) * a_r(aoa) a_t(aod)^H
//   H_nlos = entries i.i.d. zero-mean complex Gaussian, per-entry variance
//            2*sigma^2 (real and imaginary parts each N(0, sigma^2))
//
// with mu = sqrt(k/(1+k)), sigma = sqrt(1/(2(1+k))), so mu^2 + 2*sigma^2 = 1
// and each entry has unit mean-square magnitude. k is the LOS-to-diffuse
// power ratio: k = 0 is Rayleigh, k -> inf approaches a pure LOS channel.
struct RicianChannelSpec {
    double k_factor = 1.0;
    double aoa = 0.0; // angle of arrival at the receive array, radians
    double aod = 0.0; // angle of departure at the transmit array, radians
    ArrayGeometry rx_geom;
    ArrayGeometry tx_geom;

    RicianChannelSpec() = default;
    RicianChannelSpec(double k, double theta, double phi, ArrayGeometry rx, ArrayGeometry tx)
        : k_factor(k), aoa(theta), aod(phi), rx_geom(rx), tx_geom(tx) {
        if (!(k_factor >= 0.0)) throw std::invalid_argument("RicianChannelSpec: k_factor must be >= 0");
        check_angle_domain(aoa);
        check_angle_domain(aod);
    }

    // LOS amplitude scale; recomputed from k so it can never drift.
    double mu() const { return std::sqrt(k_factor / (1.0 + k_factor)); }
    // Per-dimension diffuse scale (real and imaginary parts each have
    // standard deviation sigma()).
    double sigma() const { return std::sqrt(1.0 / (2.0 * (1.0 + k_factor))); }
};

struct ChannelRealization {
    Eigen::MatrixXcd los;
    Eigen::MatrixXcd nlos;
    Eigen::MatrixXcd total;
};

// Deterministic LOS component, including the fixed (1+j)/sqrt(2) phase.
inline Eigen::MatrixXcd los_matrix(const RicianChannelSpec& spec) {
    const cxd phase(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
    const Eigen::VectorXcd ar = steering_vector(spec.rx_geom, spec.aoa).entries;
    const Eigen::VectorXcd at = steering_vector(spec.tx_geom, spec.aod).entries;
    return (spec.mu() * phase) * (ar * at.adjoint());
}

inline ChannelRealization sample_channel(const RicianChannelSpec& spec, std::uint64_t seed) {
    const int nr = spec.rx_geom.n_elements;
    const int nt = spec.tx_geom.n_elements;
    Rng rng(seed);
    const double s = spec.sigma();
    Eigen::MatrixXcd nlos(nr, nt);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            const double re = rng.next_normal();
            const double im = rng.next_normal();
            nlos(i, j) = cxd(s * re, s * im);
        }
    ChannelRealization out;
    out.los = los_matrix(spec);
    out.nlos = std::move(nlos);
    out.total = out.los + out.nlos;
    return out;
}

// Transmit-side channel correlation of an n_j-antenna Rician jammer:
// ones on the diagonal, k/(1+k) off the diagonal. Nonsingular for all
// finite k >= 0.
inline Eigen::MatrixXd upsilon(int n_j, double k_j) {
    if (n_j < 1) throw std::invalid_argument("upsilon: n_j must be >= 1");
    if (!(k_j >= 0.0)) throw std::invalid_argument("upsilon: k_j must be >= 0");
    const double off = k_j / (1.0 + k_j);
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n_j, n_j, off);
    m.diagonal().setOnes();
    return m;
}

// Closed-form eigenvalues of upsilon(n_j, k_j): (1 + n_j*k)/(1+k) once and
// 1/(1+k) with multiplicity n_j - 1.
inline Eigen::VectorXd upsilon_eigenvalues(int n_j, double k_j) {
    if (n_j < 1) throw std::invalid_argument("upsilon_eigenvalues: n_j must be >= 1");
    Eigen::VectorXd ev = Eigen::VectorXd::Constant(n_j, 1.0 / (1.0 + k_j));
    ev(0) = (1.0 + n_j * k_j) / (1.0 + k_j);
    return ev;
}

// E[H^H H] = n_r * upsilon(n_j, k_j) for a jammer departing at broadside.
inline Eigen::MatrixXd expected_gram(const RicianChannelSpec& spec) {
    return spec.rx_geom.n_elements * upsilon(spec.tx_geom.n_elements, spec.k_factor);
}

inline void check_psd(const Eigen::MatrixXcd& q, double tol = 1e-9) {
    if (q.rows() != q.cols()) throw std::invalid_argument("check_psd: matrix not square");
    const double herm_err = (q - q.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("check_psd: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("check_psd: matrix has a negative eigenvalue");
}

// E[H Q H^H] for H drawn from the spec and a fixed transmit covariance Q:
//
//   mu^2 * Psi Q Psi^H + 2*sigma^2 * tr(Q) * I
//
// with Psi the phase-scaled LOS dyad a_r a_t^H. The LOS part is a rank-one
// beamforming term; the diffuse part contributes isotropically through tr(Q).
inline Eigen::MatrixXcd expected_sandwich(const RicianChannelSpec& spec, const Eigen::MatrixXcd& q) {
    const int nj = spec.tx_geom.n_elements;
    if (q.rows() != nj || q.cols() != nj)
        throw std::invalid_argument("expected_sandwich: Q dimension mismatch");
    check_psd(q);
    const cxd phase(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
    const Eigen::VectorXcd ar = steering_vector(spec.rx_geom, spec.aoa).entries;
    const Eigen::VectorXcd at = steering_vector(spec.tx_geom, spec.aod).entries;
    const Eigen::MatrixXcd psi = phase * (ar * at.adjoint());
    const double mu2 = spec.k_factor / (1.0 + spec.k_factor);
    const double two_sigma2 = 1.0 / (1.0 + spec.k_factor);
    const int nr = spec.rx_geom.n_elements;
    return mu2 * (psi * q * psi.adjoint()) +
           two_sigma2 * q.trace().real() * Eigen::MatrixXcd::Identity(nr, nr);
}

} // namespace aoajam
