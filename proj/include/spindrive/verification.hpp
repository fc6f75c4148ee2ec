// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file verification.hpp
 * @brief Self-check battery: reference-matrix equality, closed-form vs
 *        least-squares agreement, the rank table, normalization identities,
 *        and the end-to-end fidelity threshold.
 *
 * Shared by the `verify` CLI command and the test suites.
 */

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spindrive/fastforward.hpp"
#include "spindrive/regsolver.hpp"

namespace spindrive {

struct CheckResult {
    std::string name;
    std::string geometry;
    bool pass = false;
    double metric = 0.0;  ///< the quantity compared against the threshold
    double threshold = 0.0;
    std::string detail;
};

inline const std::map<Geometry, int>& expected_rank_table() {
    static const std::map<Geometry, int> t = {
        {Geometry::triangle, 1}, {Geometry::chain3, 2}, {Geometry::pyramid, 2},
        {Geometry::square, 3},   {Geometry::star, 3},   {Geometry::chain4, 5}};
    return t;
}

/// Max entrywise |build_reg - golden_reg_matrix| over `trials` random weights.
inline double golden_max_diff(const ClusterGeometry& g, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        RegWeights w;
        for (int k = 0; k < g.pair_class_count(); ++k) w.w.push_back(uni(rng));
        if (g.name == Geometry::pyramid) w.q = uni(rng);  // the only table with a 3-body part
        const Operator a = build_reg(g, w);
        const Operator b = golden_reg_matrix(g, w);
        for (size_t k = 0; k < a.a.size(); ++k)
            worst = std::max(worst, std::abs(a.a[k] - b.a[k]));
    }
    return worst;
}

/// Max vector-relative disagreement between the SVD solve and the closed
/// forms over an R grid (J = R, Bx = B0 - R).
inline double closed_form_max_reldiff(const ClusterGeometry& g, const Schedule& sched,
                                      int points, double r_lo, double r_hi) {
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const double r = r_lo + (r_hi - r_lo) * k / (points - 1);
        const GroundState gs = ground_symmetric(g, sched.j_at(r), sched.bx_at(r));
        const GroundStateDerivative d = derivative(g, sched, r);
        const RegularizationSolution a = solve(assemble(g, gs, d));
        const RegularizationSolution b = closed_form(g, gs, d);
        double diff = std::abs(a.weights.q - b.weights.q);
        double scale = std::abs(b.weights.q);
        for (int i = 0; i < g.pair_class_count(); ++i) {
            diff = std::max(diff, std::abs(a.weights.w[i] - b.weights.w[i]));
            scale = std::max(scale, std::abs(b.weights.w[i]));
        }
        worst = std::max(worst, diff / std::max(scale, 1e-300));
    }
    return worst;
}

/// |C . dC/dR| at `points` schedule positions.
inline double normalization_identity_max(const ClusterGeometry& g, const Schedule& sched,
                                         int points, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.1, sched.b0 - 0.1);
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const double r = uni(rng);
        const GroundState gs = ground_symmetric(g, sched.j_at(r), sched.bx_at(r));
        const GroundStateDerivative d = derivative(g, sched, r);
        worst = std::max(worst, std::abs(dot(gs.components, d.dc_dr)));
    }
    return worst;
}

inline double min_fidelity(const std::vector<EvolutionRecord>& records) {
    double fmin = 1.0;
    for (const auto& r : records) fmin = std::min(fmin, r.fidelity);
    return fmin;
}

/// Full check battery over the given geometries.
inline std::vector<CheckResult> run_verification(const Schedule& sched,
                                                 const std::vector<Geometry>& geoms,
                                                 long steps) {
    std::vector<CheckResult> out;
    for (Geometry which : geoms) {
        const ClusterGeometry& g = catalog(which);
        const std::string name(to_string(which));

        if (which != Geometry::triangle) {
            CheckResult c{"golden_matrices", name};
            c.threshold = 1e-15;
            c.metric = golden_max_diff(g, 100, 1234u + static_cast<unsigned>(which));
            c.pass = c.metric <= c.threshold;
            out.push_back(c);
        }
        {
            CheckResult c{"closed_form_agreement", name};
            c.threshold = 1e-9;
            c.metric = closed_form_max_reldiff(g, sched, 50, 0.01 * sched.b0,
                                               0.99 * sched.b0);
            c.pass = c.metric <= c.threshold;
            out.push_back(c);
        }
        {
            CheckResult c{"rank_table", name};
            const double r = 0.37 * sched.b0;
            const GroundState gs = ground_symmetric(g, sched.j_at(r), sched.bx_at(r));
            const GroundStateDerivative d = derivative(g, sched, r);
            const CoreSystem sys = assemble(g, gs, d);
            c.metric = sys.effective_rank;
            c.threshold = expected_rank_table().at(which);
            c.pass = sys.effective_rank == expected_rank_table().at(which);
            c.detail = "effective rank at generic R";
            out.push_back(c);
        }
        {
            CheckResult c{"normalization_identity", name};
            c.threshold = 1e-10;
            c.metric = normalization_identity_max(g, sched, 20, 77u + static_cast<unsigned>(which));
            c.pass = c.metric <= c.threshold;
            out.push_back(c);
        }
        {
            CheckResult c{"fidelity_threshold", name};
            c.threshold = 1.0 - 1e-6;
            c.metric = min_fidelity(evolve(g, sched, steps));
            c.pass = c.metric >= c.threshold;
            c.detail = "min fidelity over the sweep";
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace spindrive
