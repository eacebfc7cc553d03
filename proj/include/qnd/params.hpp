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

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace qnd {

// Unit conventions: times in seconds, rates in rad/s. Outcomes, strengths and
// thresholds are scaled by the per-quadrature outcome standard deviation, so
// sigma == 1 everywhere.

struct CavityParams {
    double kappa = 2.0 * std::numbers::pi * 5.8e6;  ///< resonator linewidth, rad/s
    double chi = 2.0 * std::numbers::pi * 5.4e6;    ///< dispersive shift, rad/s

    void validate() const;
};

struct DriveParams {
    double nbar = 5.0;    ///< mean intracavity photon number
    double t_m = 240e-9;  ///< integration window, s
    double dt = 20e-9;    ///< sample period, s

    /// Number of samples in one integration window.
    long samples_per_window() const { return std::lround(t_m / dt); }
    void validate() const;
};

struct AmpParams {
    double eta = 0.2;  ///< quantum efficiency of the amplification chain
    /// Qbar/Ibar. Empty means the geometric value cot(theta/2).
    std::optional<double> q_ratio = 1.28;

    void validate() const;
};

struct QubitParams {
    double t1 = 2.8e-6;
    double t2 = 0.698e-6;
    double p_eq = 0.08;  ///< equilibrium excited-state population
    double tau = 380e-9; ///< dead time between weak measurement and tomography

    /// Equilibrium polarization 2 p_eq - 1.
    double z_eq() const { return 2.0 * p_eq - 1.0; }
    /// Excited -> ground rate.
    double gamma_down() const { return (1.0 - p_eq) / t1; }
    /// Ground -> excited rate.
    double gamma_up() const { return p_eq / t1; }
    void validate() const;

    /// Ideal qubit: no relaxation, no dephasing, zero temperature, no dead time.
    static QubitParams ideal() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf, 0.0, 0.0};
    }
};

/// Measurement statistics in scaled units: outcomes for |e> (|g>) are centered
/// at (+s, qbar) ((-s, qbar)) with unit variance per quadrature.
struct StrengthParams {
    double s = 0.0;
    double qbar = 0.0;
    double theta_disp = std::numbers::pi / 2;

    void validate() const;
};

/// One scaled heterodyne outcome (I_m / sigma, Q_m / sigma).
struct Outcome {
    double i = 0.0;
    double q = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

}  // namespace qnd
