// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>

#include "qnd/params.hpp"

namespace qnd {

/// Qubit Bloch vector (x, y, z). z = +1 is |e>, which sits at positive I.
template <typename Scalar>
using BlochVector = Eigen::Matrix<Scalar, 3, 1>;
using Bloch = BlochVector<double>;

enum class Axis { X, Y, Z };

/// theta = 2 atan(chi / kappa).
template <typename Scalar>
Scalar dispersive_angle(Scalar kappa, Scalar chi) {
    using std::atan;
    return Scalar(2) * atan(chi / kappa);
}

inline double dispersive_angle(const CavityParams& cavity) {
    return dispersive_angle(cavity.kappa, cavity.chi);
}

/// Ibar/sigma = sqrt(2 nbar eta kappa T_m) sin(theta/2).
template <typename Scalar>
Scalar apparent_strength(Scalar nbar, Scalar eta, Scalar kappa, Scalar t_m, Scalar theta) {
    using std::sin;
    using std::sqrt;
    return sqrt(Scalar(2) * nbar * eta * kappa * t_m) * sin(theta / Scalar(2));
}

double apparent_strength(const CavityParams& cavity, const DriveParams& drive, double eta);

/// cot(theta/2): the Q offset ratio implied by pointer states at phases +-theta/2.
inline double geometric_q_ratio(double theta) { return 1.0 / std::tan(theta / 2.0); }

/// Observed-channel statistics for a drive, with qbar = q_ratio * s.
StrengthParams strength_params(const CavityParams& cavity, const DriveParams& drive,
                               const AmpParams& amp);

namespace detail {

// Quantities shared by both update forms. Keeping a single evaluation path is
// what makes update_general(+y) reproduce update_from_plus_y bit for bit.
template <typename Scalar>
struct Kick {
    Scalar x;        // i * s
    Scalar decay;    // exp(-2|x|)
    Scalar half;     // exp(-|x|)
    Scalar phase;    // q s + qbar s (1 - eta) / eta
    Scalar damping;  // exp(-s^2 (1 - eta) / eta)
};

template <typename Scalar>
Kick<Scalar> kick(Scalar i, Scalar q, Scalar s, Scalar qbar, Scalar eta) {
    using std::abs;
    using std::exp;
    const Scalar lost = (Scalar(1) - eta) / eta;
    const Scalar x = i * s;
    const Scalar ax = abs(x);
    return {x, exp(Scalar(-2) * ax), exp(-ax), q * s + qbar * s * lost, exp(-(s * s) * lost)};
}

}  // namespace detail

/// Final Bloch vector for a qubit that starts on the +y pole, given a scaled
/// outcome (i, q), strength s, offset qbar and efficiency eta.
///
/// tanh and sech are evaluated from exp(-|is|), which neither overflows nor
/// loses the saturation z -> +-1 for large |is|.
template <typename Scalar>
BlochVector<Scalar> update_from_plus_y(Scalar i, Scalar q, Scalar s, Scalar qbar, Scalar eta) {
    using std::cos;
    using std::sin;
    const auto k = detail::kick(i, q, s, qbar, eta);
    const Scalar one(1);
    const Scalar mag = (one - k.decay) / (one + k.decay);
    const Scalar tanh_x = k.x < Scalar(0) ? -mag : mag;
    const Scalar sech_x = Scalar(2) * k.half / (one + k.decay);
    return {sech_x * sin(k.phase) * k.damping, sech_x * cos(k.phase) * k.damping, tanh_x};
}

inline Bloch update_from_plus_y(const Outcome& out, const StrengthParams& sp, double eta) {
    return update_from_plus_y(out.i, out.q, sp.s, sp.qbar, eta);
}

/// Bayesian back-action on an arbitrary initial state.
///
/// Populations follow the two-hypothesis Bayes rule with likelihood ratio
/// exp(2 i s); the coherence x + i y is scaled by sech(is) / (1 + z tanh(is)),
/// rotated about z by -phase and damped by the lost-information factor.
template <typename Scalar>
BlochVector<Scalar> update_general(const BlochVector<Scalar>& init, Scalar i, Scalar q, Scalar s,
                                   Scalar qbar, Scalar eta) {
    using std::cos;
    using std::sin;
    const auto k = detail::kick(i, q, s, qbar, eta);
    const Scalar half(0.5);
    const Scalar p_e = half * (Scalar(1) + init.z());
    const Scalar p_g = half * (Scalar(1) - init.z());
    const Scalar w_e = k.x < Scalar(0) ? p_e * k.decay : p_e;
    const Scalar w_g = k.x < Scalar(0) ? p_g : p_g * k.decay;
    const Scalar norm = w_e + w_g;
    const Scalar factor = k.half / norm;
    const Scalar c = cos(k.phase);
    const Scalar sn = sin(k.phase);
    const Scalar cx = init.x() * c + init.y() * sn;
    const Scalar cy = -init.x() * sn + init.y() * c;
    return {factor * cx * k.damping, factor * cy * k.damping, (w_e - w_g) / norm};
}

inline Bloch update_general(const Bloch& init, const Outcome& out, const StrengthParams& sp,
                            double eta) {
    return update_general(init, out.i, out.q, sp.s, sp.qbar, eta);
}

/// Right-handed rotation about +x or +y (Axis::Z rotates about +z).
template <typename Scalar>
BlochVector<Scalar> rotate(const BlochVector<Scalar>& b, Axis axis, Scalar angle) {
    using Vec = BlochVector<Scalar>;
    const Vec u = axis == Axis::X ? Vec::UnitX() : axis == Axis::Y ? Vec::UnitY() : Vec::UnitZ();
    return Eigen::AngleAxis<Scalar>(angle, u) * b;
}

template <typename Scalar>
Scalar purity(const BlochVector<Scalar>& b) {
    return b.norm();
}

/// Free evolution for `duration`: z relaxes toward equilibrium with T1 and the
/// transverse components decay with T2.
template <typename Scalar>
BlochVector<Scalar> decohere(const BlochVector<Scalar>& b, const QubitParams& qp, Scalar duration) {
    using std::exp;
    if (duration <= Scalar(0)) return b;
    const Scalar z_eq(qp.z_eq());
    const Scalar f1 = exp(-duration / Scalar(qp.t1));
    const Scalar f2 = exp(-duration / Scalar(qp.t2));
    return {b.x() * f2, b.y() * f2, z_eq + (b.z() - z_eq) * f1};
}

/// Rotates the coherence back by the deterministic lost-channel phase
/// qbar s (1 - eta) / eta, i.e. the software phase correction an observer who
/// knows qbar could apply.
template <typename Scalar>
BlochVector<Scalar> undo_phase_offset(const BlochVector<Scalar>& b, Scalar s, Scalar qbar,
                                      Scalar eta) {
    const Scalar offset = qbar * s * ((Scalar(1) - eta) / eta);
    return rotate(b, Axis::Z, offset);
}

}  // namespace qnd
