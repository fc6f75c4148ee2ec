// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace spindrive {

/// Instantaneous spectrum too degenerate for the requested computation.
struct degenerate_point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The core linear system has no solution within tolerance (wrong ansatz or
/// degenerate sweep point). Carries the offending residual.
struct inconsistent_system_error : std::runtime_error {
    double residual;
    inconsistent_system_error(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

/// Norm drift exceeded the integrator budget; rerun with more steps.
struct step_size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spindrive
