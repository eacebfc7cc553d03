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

#include <cmath>

#include "qnd/bloch.hpp"
#include "qnd/errors.hpp"
#include "qnd/params.hpp"

namespace qnd {

void CavityParams::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidParameter("cavity.kappa must be positive");
    if (!(chi > 0.0) || !std::isfinite(chi)) throw InvalidParameter("cavity.chi must be positive");
}

void DriveParams::validate() const {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidParameter("drive.nbar must be non-negative");
    if (!(t_m > 0.0)) throw InvalidParameter("drive.t_m must be positive");
    if (!(dt > 0.0)) throw InvalidParameter("drive.dt must be positive");
    const double ratio = t_m / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw InvalidParameter("drive.t_m must be an integer multiple of drive.dt");
}

void AmpParams::validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("amp.eta must be in (0, 1]");
    if (q_ratio && !std::isfinite(*q_ratio)) throw InvalidParameter("amp.q_ratio must be finite");
}

void QubitParams::validate() const {
    if (!(t1 > 0.0)) throw InvalidParameter("qubit.t1 must be positive");
    if (!(t2 > 0.0)) throw InvalidParameter("qubit.t2 must be positive");
    if (t2 > 2.0 * t1) throw InvalidParameter("qubit.t2 must not exceed 2 * qubit.t1");
    if (!(p_eq >= 0.0 && p_eq < 0.5)) throw InvalidParameter("qubit.p_eq must be in [0, 0.5)");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParameter("qubit.tau must be non-negative");
}

void StrengthParams::validate() const {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidParameter("strength s must be non-negative");
    if (!std::isfinite(qbar)) throw InvalidParameter("strength qbar must be finite");
}

double apparent_strength(const CavityParams& cavity, const DriveParams& drive, double eta) {
    return apparent_strength(drive.nbar, eta, cavity.kappa, drive.t_m, dispersive_angle(cavity));
}

StrengthParams strength_params(const CavityParams& cavity, const DriveParams& drive,
                               const AmpParams& amp) {
    const double theta = dispersive_angle(cavity);
    const double s = apparent_strength(cavity, drive, amp.eta);
    const double ratio = amp.q_ratio.value_or(geometric_q_ratio(theta));
    return {s, ratio * s, theta};
}

}  // namespace qnd
