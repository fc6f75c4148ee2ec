// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file regsolver.hpp
 * @brief The core linear system for the driving strengths and its solvers.
 *
 * The driving term H = i M(weights) must satisfy M C = dC/dR (hbar = 1; the
 * geometric-phase term vanishes because C^T dC/dR = 0). `assemble` keeps all
 * 2^N rows; the symmetry-induced row repetition is a tested property, not a
 * code path. `solve` is a rank-revealing minimum-norm least squares;
 * `closed_form` transcribes the per-geometry solution formulas; `verify_core`
 * measures how well a candidate solution satisfies the system.
 */

#pragma once

#include <cmath>
#include <vector>

#include "spindrive/cluster.hpp"
#include "spindrive/errors.hpp"
#include "spindrive/groundstate.hpp"
#include "spindrive/linalg.hpp"
#include "spindrive/operators.hpp"

namespace spindrive {

inline constexpr double kSvdRcond = 1e-10;
inline constexpr double kResidualGate = 1e-8;

struct CoreSystem {
    Mat matrix;               ///< 2^N rows, one column per unknown
    std::vector<double> rhs;  ///< dC/dR
    int n_pair_classes = 0;
    bool has_q = false;
    int effective_rank = 0;   ///< singular values above kSvdRcond * sigma_max
};

struct RegularizationSolution {
    RegWeights weights;
    double residual = 0.0;  ///< inf-norm of M(weights) C - dC/dR
    int rank = 0;
};

inline CoreSystem assemble(const ClusterGeometry& g, const GroundState& gs,
                           const GroundStateDerivative& d) {
    const int dim = g.dim();
    if (static_cast<int>(gs.components.size()) != dim ||
        static_cast<int>(d.dc_dr.size()) != dim)
        throw std::invalid_argument("assemble: dimension mismatch");
    const int p = g.unknown_count();
    CoreSystem sys;
    sys.matrix = Mat(dim, p);
    sys.rhs = d.dc_dr;
    sys.n_pair_classes = g.pair_class_count();
    sys.has_q = g.q_included;
    for (int j = 0; j < p; ++j) {
        const std::vector<double> col = matvec(reg_unit_matrix(g, j), gs.components);
        for (int i = 0; i < dim; ++i) sys.matrix(i, j) = col[i];
    }
    sys.effective_rank =
        svd_least_squares(sys.matrix, sys.rhs, kSvdRcond).rank;
    return sys;
}

/// Minimum-norm least-squares solve. Throws inconsistent_system_error when
/// the best fit misses the rhs by more than kResidualGate.
inline RegularizationSolution solve(const CoreSystem& sys) {
    const LstsqSolution ls = svd_least_squares(sys.matrix, sys.rhs, kSvdRcond);
    if (ls.residual_inf > kResidualGate)
        throw inconsistent_system_error(
            "solve: core system inconsistent (wrong ansatz or degenerate point)",
            ls.residual_inf);
    RegularizationSolution sol;
    sol.weights.w.assign(ls.x.begin(), ls.x.begin() + sys.n_pair_classes);
    sol.weights.q = sys.has_q ? ls.x.back() : 0.0;
    sol.residual = ls.residual_inf;
    sol.rank = ls.rank;
    return sol;
}

namespace detail {

inline double rep(const ClusterGeometry& g, const std::vector<double>& v, int label) {
    // value at 1-based basis index `label` (a class representative)
    return v[label - 1];
}

inline void check_denominator(double d) {
    if (std::abs(d) < 1e-12)
        throw degenerate_point_error("closed_form: vanishing denominator");
}

}  // namespace detail

/// Transcription of the per-geometry closed-form solutions (hbar = 1).
/// The square 3-body line is dimensionally corrected: the printed form
/// divides by an extra C2, inconsistent with the system it solves; the
/// version here follows from that system directly and matches `solve`.
inline RegularizationSolution closed_form(const ClusterGeometry& g, const GroundState& gs,
                                          const GroundStateDerivative& der) {
    auto c = [&](int i) { return detail::rep(g, gs.components, i); };
    auto d = [&](int i) { return detail::rep(g, der.dc_dr, i); };
    RegularizationSolution sol;
    switch (g.name) {
        case Geometry::triangle: {
            detail::check_denominator(c(1));
            sol.weights.w = {d(2) / (2 * c(1))};
            break;
        }
        case Geometry::chain3: {
            const double den = c(1) + 2 * c(2) + c(3);
            detail::check_denominator(den);
            sol.weights.w = {-(d(1) - d(3)) / (2 * den),
                             -(d(1) - 2 * d(2) + d(3)) / (2 * den)};
            break;
        }
        case Geometry::pyramid: {
            const double den = c(1) - c(6);
            detail::check_denominator(den);
            sol.weights.w = {d(2) / (3 * den)};
            sol.weights.q = (d(1) + 3 * d(6)) / (24 * den);
            break;
        }
        case Geometry::square: {
            const double den = 3 * c(1) - c(10) - 2 * c(6);
            detail::check_denominator(den * c(2));
            const double w1 = -(c(1) * d(1) - 4 * c(2) * d(2) + (c(1) + c(10)) * d(6) -
                                (c(1) - 2 * c(6)) * d(10)) /
                              (8 * den * c(2));
            const double w2 =
                -(c(1) * d(1) - (c(1) - 2 * c(6) - c(10)) * d(6) + c(1) * d(10)) /
                (4 * den * c(2));
            sol.weights.w = {w1, w2};
            sol.weights.q = (d(1) + 2 * d(6) + d(10)) / (8 * den);
            break;
        }
        case Geometry::star: {
            const double den = (c(1) - c(6)) * (c(1) + 3 * c(6));
            detail::check_denominator(den);
            const double w1 = (c(1) * d(4) + 3 * c(6) * d(2)) / (3 * den);
            const double w2 =
                (3 * (c(1) + c(6)) * d(2) - (c(1) - 3 * c(6)) * d(4)) / (6 * den);
            detail::check_denominator(c(1) * den);
            const double q =
                (3 * (c(1) * c(1) + 2 * c(1) * c(6) - 3 * c(6) * c(6)) * d(6) -
                 3 * (3 * c(2) * c(6) + c(1) * c(4)) * d(2) -
                 (3 * c(1) * c(2) - 2 * c(1) * c(4) + 3 * c(4) * c(6)) * d(4)) /
                (24 * c(1) * den);
            sol.weights.w = {w1, w2};
            sol.weights.q = q;
            break;
        }
        case Geometry::chain4: {
            const double pair_sum = c(2) + c(3);
            const double even_sum = c(1) + c(6) + c(7) + c(10);
            const double den_k = -3 * c(1) + c(6) + c(7) + c(10);
            detail::check_denominator(pair_sum * den_k);
            detail::check_denominator(even_sum);
            const double kappa =
                (c(1) * d(1) + (c(2) - c(3)) * (d(2) - d(3)) +
                 c(1) * (d(6) + d(7) + d(10))) /
                (2 * pair_sum * den_k);
            const double gamma1 = (d(2) - d(3)) / (2 * even_sum);
            const double gamma2 = (d(6) + d(10)) / (4 * pair_sum) + kappa;
            const double w1 = (d(7) + d(10)) / (4 * pair_sum) + kappa;
            const double w3 = (d(6) + d(7)) / (4 * pair_sum) + kappa;
            const double q =
                (4 * (c(2) - c(3)) * (d(2) - d(3)) +
                 even_sum * (d(1) + d(6) + d(7) + d(10))) /
                (8 * (3 * c(1) - c(6) - c(7) - c(10)) * even_sum);
            sol.weights.w = {w1, -gamma1 + gamma2, w3, gamma1 + gamma2};
            sol.weights.q = q;
            break;
        }
    }
    const std::vector<double> mc = matvec(reg_matrix(g, sol.weights), gs.components);
    double res = 0.0;
    for (int i = 0; i < g.dim(); ++i)
        res = std::max(res, std::abs(mc[i] - der.dc_dr[i]));
    sol.residual = res;
    sol.rank = g.unknown_count();
    return sol;
}

/// Inf-norm of H C - i dC/dR for the candidate strengths (equals
/// ||M(weights) C - dC/dR||_inf since H = i M).
inline double verify_core(const ClusterGeometry& g, const RegularizationSolution& sol,
                          const GroundState& gs, const GroundStateDerivative& d) {
    const std::vector<double> mc = matvec(reg_matrix(g, sol.weights), gs.components);
    double res = 0.0;
    for (int i = 0; i < g.dim(); ++i)
        res = std::max(res, std::abs(mc[i] - d.dc_dr[i]));
    return res;
}

}  // namespace spindrive
