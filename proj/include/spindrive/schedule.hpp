// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file schedule.hpp
 * @brief Sweep schedule: the time-rescaled parameter trajectory R(t) and the
 *        velocity profile v(t) driving the accelerated sweep.
 *
 * The sweep parameter is R; the exchange coupling follows J = R and the
 * transverse field Bx = B0 - R. The velocity v(t) = vbar (1 - cos(2 pi t/Tff))
 * vanishes at both ends, and R advances by its integral:
 * R(t) = R0 + vbar [t - (Tff / 2 pi) sin(2 pi t / Tff)].
 */

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spindrive {

struct Schedule {
    double b0 = 10.0;    ///< transverse field at R = 0
    double r0 = 0.0;     ///< sweep start
    double vbar = 100.0; ///< mean rescaled velocity
    double tff = 0.1;    ///< accelerated sweep duration

    void validate() const {
        if (!(tff > 0.0)) throw std::invalid_argument("schedule: tff must be positive");
        if (!(vbar >= 0.0)) throw std::invalid_argument("schedule: vbar must be >= 0");
        if (!(b0 > 0.0)) throw std::invalid_argument("schedule: b0 must be positive");
    }

    double velocity(double t) const {
        check_time(t);
        return vbar * (1.0 - std::cos(2.0 * std::numbers::pi * t / tff));
    }

    double advanced_r(double t) const {
        check_time(t);
        const double u = 2.0 * std::numbers::pi * t / tff;
        return r0 + vbar * (t - tff / (2.0 * std::numbers::pi) * std::sin(u));
    }

    double j_at(double r) const { return r; }
    double bx_at(double r) const { return b0 - r; }

  private:
    void check_time(double t) const {
        if (!(t >= 0.0) || !(t <= tff))
            throw std::domain_error("schedule: t outside [0, Tff]");
    }
};

}  // namespace spindrive
