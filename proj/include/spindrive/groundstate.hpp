// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file groundstate.hpp
 * @brief Instantaneous ground state of the reference Hamiltonian, by three
 *        routes, plus its parameter derivative.
 *
 * Routes:
 *  - ground_numeric: blind Jacobi diagonalization of the full 2^N matrix.
 *  - ground_analytic: the closed-form eigenvector components per geometry
 *    (evaluated in long double; principal-branch complex cube roots).
 *  - ground_symmetric: diagonalization inside the component-class invariant
 *    subspace. The partition of the basis into component classes is equitable
 *    for H0, so this subspace is exactly invariant and contains the ground
 *    state for Bx > 0; the sector gap stays O(J + Bx) even where the full
 *    spectrum degenerates (Bx -> 0), which keeps the sweep endpoint stable.
 *
 * The derivative dC/dR uses first-order perturbation theory. Couplings of
 * the ground state to anything outside the invariant subspace vanish
 * identically (d_R H0 is block-preserving), so the sum is evaluated in the
 * reduced sector; a full-space evaluation is kept in the test suite as an
 * independent oracle.
 */

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "spindrive/cluster.hpp"
#include "spindrive/errors.hpp"
#include "spindrive/linalg.hpp"
#include "spindrive/operators.hpp"
#include "spindrive/schedule.hpp"

namespace spindrive {

inline constexpr double kGapThreshold = 1e-8;

struct GroundState {
    double energy = 0.0;
    std::vector<double> components;  ///< unit norm, all-positive convention
    double gap = 0.0;                ///< E1 - E0 (NaN for the analytic route)
};

struct GroundStateDerivative {
    std::vector<double> dc_dr;
};

/// Orthonormal indicator vectors of the component classes (dim x n_classes).
inline Mat class_basis(const ClusterGeometry& g) {
    const int nc = static_cast<int>(g.component_classes.size());
    Mat u(g.dim(), nc);
    for (int c = 0; c < nc; ++c) {
        const auto& cls = g.component_classes[c];
        const double val = 1.0 / std::sqrt(static_cast<double>(cls.size()));
        for (int idx : cls) u(idx - 1, c) = val;
    }
    return u;
}

namespace detail {

struct ReducedBlocks {
    Mat u;         // class basis
    Mat coupling;  // u^T K u
    Mat field;     // u^T X u
    Mat dh;        // coupling - field: d_R H0 for dJ/dR = 1, dBx/dR = -1
};

inline const ReducedBlocks& reduced_blocks(const ClusterGeometry& g) {
    static const std::array<ReducedBlocks, 6> table = [] {
        std::array<ReducedBlocks, 6> t;
        for (Geometry which : all_geometries) {
            const ClusterGeometry& cg = catalog(which);
            ReducedBlocks& r = t[static_cast<size_t>(which)];
            r.u = class_basis(cg);
            const Mat ut = transpose(r.u);
            r.coupling = matmul(ut, matmul(coupling_matrix(cg), r.u));
            r.field = matmul(ut, matmul(field_matrix(cg), r.u));
            r.dh = Mat(r.coupling.rows, r.coupling.cols);
            for (size_t k = 0; k < r.dh.a.size(); ++k)
                r.dh.a[k] = r.coupling.a[k] - r.field.a[k];
        }
        return t;
    }();
    return table[static_cast<size_t>(g.name)];
}

inline void sign_fix(std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += v;
    if (s < 0.0)
        for (double& v : c) v = -v;
}

// Principal-branch complex cube root in extended precision.
inline std::complex<long double> cbrt_principal(std::complex<long double> z) {
    const long double r = std::abs(z);
    const long double phi = std::arg(z);
    const long double rr = std::pow(r, 1.0L / 3.0L);
    return {rr * std::cos(phi / 3.0L), rr * std::sin(phi / 3.0L)};
}

struct AnalyticResult {
    long double e0;
    std::vector<long double> class_values;  // one value per component class
};

inline AnalyticResult analytic_components(Geometry which, long double j, long double bx) {
    const long double r3 = std::sqrt(3.0L);
    using C = std::complex<long double>;
    AnalyticResult out{};
    switch (which) {
        case Geometry::triangle: {
            const long double s = std::sqrt(bx * bx + 2 * bx * j + 4 * j * j);
            out.e0 = -s - bx / 2 + j;
            out.class_values = {1.0L, (2 * s + bx + 4 * j) / (3 * bx)};
            break;
        }
        case Geometry::chain3: {
            const C beta = cbrt_principal(
                C(18 * j * j * bx - 8 * bx * bx * bx, 0.0L) +
                C(0.0L, 6 * j) * std::sqrt(48 * j * j * j * j + 39 * bx * bx * j * j +
                                           24 * bx * bx * bx * bx));
            out.e0 = -(bx + 2 * beta.real() + 2 * r3 * beta.imag()) / 6;
            const long double e0 = out.e0;
            const long double v1 =
                (3 * bx * bx - 8 * j * bx - 4 * bx * e0 - 4 * e0 * e0 - 8 * e0 * j) /
                (4 * j * bx);
            const long double v2 = -v1 / 2 - (2 * j + e0) / bx;
            out.class_values = {v1, v2, 1.0L};
            break;
        }
        case Geometry::pyramid: {
            const long double j2 = j * j, b2 = bx * bx;
            const C beta = cbrt_principal(
                C(35 * j2 * j - 18 * b2 * j, 0.0L) +
                C(0.0L, 3.0L) * std::sqrt(108 * j2 * j2 * j2 + 309 * b2 * j2 * j2 +
                                          3 * b2 * b2 * j2 + 3 * b2 * b2 * b2));
            out.e0 = (-2 * beta.real() + 4 * j - 2 * r3 * beta.imag()) / 3;
            const long double v2 = (2 * beta.real() + 14 * j + 2 * r3 * beta.imag()) / (6 * bx);
            const C bsq = beta * beta;
            const long double v6 =
                -(4 * bsq.real() - 20 * j * beta.real() - 48 * j2 - 15 * b2 -
                  4 * r3 * bsq.imag() - 20 * r3 * j * beta.imag()) /
                (27 * b2);
            out.class_values = {1.0L, v2, v6};
            break;
        }
        case Geometry::square: {
            const long double b2 = std::sqrt(16 * j * j * j * j + bx * bx * bx * bx);
            const long double b1 = std::sqrt(8 * j * j + 2 * bx * bx + 2 * b2);
            out.e0 = -b1;
            const long double shared = 4 * j * j - bx * bx + b2;
            const long double v1 = (b1 - 4 * j) * shared / (8 * j * j * bx);
            const long double v6 = (b1 * b1 - 4 * b2) * b1 / (16 * j * j * bx);
            const long double v10 = (b1 + 4 * j) * shared / (8 * j * j * bx);
            out.class_values = {v1, 1.0L, v6, v10};
            break;
        }
        case Geometry::star: {
            const long double j2 = j * j, b2 = bx * bx;
            const long double beta =
                std::sqrt(2 * b2 + 5 * j2 + 2 * std::sqrt(b2 * b2 + b2 * j2 + 4 * j2 * j2));
            out.e0 = -beta;
            const long double v1 =
                (-j * (7 * b2 + 3 * j2) + beta * (4 * b2 + 3 * beta * j - beta * beta + j2)) /
                (5 * j * b2);
            const long double v2 =
                (-2 * j * (9 * j2 - 4 * b2) +
                 beta * (4 * b2 - 2 * beta * j - beta * beta + 21 * j2)) /
                (30 * j2 * bx);
            const long double v4 =
                (-2 * j * (j2 + 4 * b2) -
                 beta * (4 * b2 - 2 * beta * j - beta * beta + j2)) /
                (10 * j2 * bx);
            out.class_values = {v1, v2, v4, 1.0L};
            break;
        }
        case Geometry::chain4: {
            const long double j2 = j * j, b2 = bx * bx;
            const long double j4 = j2 * j2, b4 = b2 * b2;
            const C beta1 = cbrt_principal(
                C(64 * j4 * j2 + 15 * j4 * b2 + 21 * b4 * j2 + 8 * b4 * b2, 0.0L) +
                C(0.0L, 3 * r3 * j2 * bx) *
                    std::sqrt(128 * j4 * j2 + 93 * j4 * b2 + 51 * b4 * j2 + 25 * b4 * b2));
            const long double beta2 = std::sqrt(4 * beta1.real() + 11 * j2 + 4 * b2);
            out.e0 = -beta2 / r3;
            const long double p1 = beta2, p2 = beta2 * beta2;
            const long double p3 = p2 * p1, p4 = p2 * p2, p5 = p4 * p1;
            const long double j3 = j2 * j, j5 = j4 * j;
            const long double v2 =
                -(r3 * j2 * p1 * (180 * b2 + 144 * j2) - r3 * p3 * (12 * b2 + 33 * j2) +
                  r3 * p5 - 162 * j5) /
                (162 * j4 * bx);
            const long double v3 =
                (r3 * j2 * p1 * (180 * b2 + 198 * j2) - r3 * p3 * (12 * b2 + 33 * j2) +
                 r3 * p5 + 324 * j5) /
                (162 * j4 * bx);
            const long double v6 =
                (-r3 * j2 * p1 * (144 * b2 + 81 * j2) - j * p2 * (36 * b2 + 90 * j2) +
                 r3 * p3 * (12 * b2 + 30 * j2) + 3 * j * p4 - r3 * p5 + 243 * j5 +
                 648 * b2 * j3) /
                (216 * b2 * j3);
            const long double v7 =
                -(r3 * j2 * p1 * (144 * b2 + 81 * j2) - j * p2 * (36 * b2 + 90 * j2) -
                  r3 * p3 * (12 * b2 + 30 * j2) + 3 * j * p4 + r3 * p5 + 243 * j5 +
                  324 * j3 * b2) /
                (108 * b2 * j3);
            const long double v10 =
                -(r3 * j2 * p1 * (144 * b2 - 9 * j2) + j * p2 * (108 * b2 + 54 * j2) +
                  6 * r3 * p3 * (2 * b2 + j2) - 9 * j * p4 - r3 * p5 + 648 * b2 * j3 -
                  81 * j5) /
                (648 * b2 * j3);
            out.class_values = {1.0L, v2, v3, v6, v7, v10};
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Lowest eigenpair of a real-symmetric operator, all-positive eigenvector
/// convention, with the gap to the first excited level.
inline GroundState ground_numeric(const Operator& h0) {
    const int n = h0.dim;
    Mat m(n, n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(h0(i, j)));
    const double tol = 1e-12 * std::max(1.0, scale);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (std::abs(h0(i, j).imag()) > tol ||
                std::abs(h0(i, j).real() - h0(j, i).real()) > tol)
                throw std::invalid_argument("ground_numeric: matrix not real symmetric");
            m(i, j) = 0.5 * (h0(i, j).real() + h0(j, i).real());
        }
    const SymEig eig = eigh(std::move(m));
    GroundState gs;
    gs.energy = eig.values[0];
    gs.gap = eig.values[1] - eig.values[0];
    gs.components.resize(n);
    for (int i = 0; i < n; ++i) gs.components[i] = eig.vectors(i, 0);
    detail::sign_fix(gs.components);
    return gs;
}

/// Closed-form ground state. Requires Bx > 0; the chain3/square/star/chain4
/// component formulas carry inverse powers of J and are guarded by J > 1e-6.
/// The gap is not available on this route and is reported as NaN.
inline GroundState ground_analytic(const ClusterGeometry& g, double j, double bx) {
    if (!(bx > 0.0)) throw std::domain_error("ground_analytic: requires Bx > 0");
    if (g.name != Geometry::triangle && g.name != Geometry::pyramid && !(j > 1e-6))
        throw std::domain_error("ground_analytic: component formulas singular as J -> 0");
    const detail::AnalyticResult res = detail::analytic_components(g.name, j, bx);
    long double nrm = 0.0L;
    for (size_t c = 0; c < g.component_classes.size(); ++c)
        nrm += g.component_classes[c].size() * res.class_values[c] * res.class_values[c];
    const long double zeta = 1.0L / std::sqrt(nrm);
    GroundState gs;
    gs.energy = static_cast<double>(res.e0);
    gs.gap = std::numeric_limits<double>::quiet_NaN();
    gs.components.assign(g.dim(), 0.0);
    for (size_t c = 0; c < g.component_classes.size(); ++c)
        for (int idx : g.component_classes[c])
            gs.components[idx - 1] = static_cast<double>(res.class_values[c] * zeta);
    detail::sign_fix(gs.components);
    return gs;
}

/// Ground state from the component-class invariant subspace. Identical to
/// ground_numeric for Bx > 0 but stable through the Bx -> 0 endpoint; the
/// reported gap is the gap within the invariant sector.
inline GroundState ground_symmetric(const ClusterGeometry& g, double j, double bx) {
    const auto& rb = detail::reduced_blocks(g);
    const int nc = rb.coupling.rows;
    Mat h(nc, nc);
    for (size_t k = 0; k < h.a.size(); ++k)
        h.a[k] = j * rb.coupling.a[k] + bx * rb.field.a[k];
    const SymEig eig = eigh(std::move(h));
    GroundState gs;
    gs.energy = eig.values[0];
    gs.gap = eig.values[1] - eig.values[0];
    std::vector<double> y(nc);
    for (int c = 0; c < nc; ++c) y[c] = eig.vectors(c, 0);
    detail::sign_fix(y);
    gs.components.assign(g.dim(), 0.0);
    for (int c = 0; c < nc; ++c)
        for (int idx : g.component_classes[c])
            gs.components[idx - 1] = y[c] / std::sqrt(double(g.component_classes[c].size()));
    return gs;
}

/// dC/dR by first-order perturbation theory with dJ/dR = 1, dBx/dR = -1,
/// evaluated in the invariant sector (see file comment). Throws when the
/// sector gap falls below kGapThreshold.
inline GroundStateDerivative derivative(const ClusterGeometry& g, const Schedule& sched,
                                        double r) {
    const double j = sched.j_at(r), bx = sched.bx_at(r);
    const auto& rb = detail::reduced_blocks(g);
    const int nc = rb.coupling.rows;
    Mat h(nc, nc);
    for (size_t k = 0; k < h.a.size(); ++k)
        h.a[k] = j * rb.coupling.a[k] + bx * rb.field.a[k];
    const SymEig eig = eigh(std::move(h));
    if (eig.values[1] - eig.values[0] < kGapThreshold)
        throw degenerate_point_error("derivative: ground level degenerate at this R");

    std::vector<double> y0(nc);
    for (int c = 0; c < nc; ++c) y0[c] = eig.vectors(c, 0);
    detail::sign_fix(y0);
    const std::vector<double> dh_y0 = matvec(rb.dh, y0);

    std::vector<double> dy(nc, 0.0);
    for (int m = 1; m < nc; ++m) {
        double num = 0.0;
        for (int c = 0; c < nc; ++c) num += eig.vectors(c, m) * dh_y0[c];
        const double coef = num / (eig.values[0] - eig.values[m]);
        for (int c = 0; c < nc; ++c) dy[c] += coef * eig.vectors(c, m);
    }

    GroundStateDerivative d;
    d.dc_dr.assign(g.dim(), 0.0);
    for (int c = 0; c < nc; ++c)
        for (int idx : g.component_classes[c])
            d.dc_dr[idx - 1] = dy[c] / std::sqrt(double(g.component_classes[c].size()));
    return d;
}

}  // namespace spindrive
