// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file operators.hpp
 * @brief Dense operator algebra in the cluster basis: Pauli embeddings, the
 *        transverse-Ising reference Hamiltonian, and the driving-term
 *        (regularization) matrices, both programmatic and hand-transcribed.
 *
 * Units: hbar = 1, energies dimensionless. All builders return Hermitian
 * matrices; the driving builders return i times a real antisymmetric matrix.
 */

#pragma once

#include <complex>
#include <vector>

#include "spindrive/cluster.hpp"
#include "spindrive/linalg.hpp"

namespace spindrive {

/// Dense complex operator on the 2^N cluster Hilbert space.
struct Operator {
    int dim = 0;
    std::vector<cxd> a;

    Operator() = default;
    explicit Operator(int d) : dim(d), a(static_cast<size_t>(d) * d, cxd{}) {}

    cxd& operator()(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
    cxd operator()(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
};

inline std::vector<cxd> apply(const Operator& h, const std::vector<cxd>& x) {
    std::vector<cxd> y(h.dim, cxd{});
    for (int i = 0; i < h.dim; ++i) {
        cxd s{};
        const cxd* row = h.a.data() + static_cast<size_t>(i) * h.dim;
        for (int j = 0; j < h.dim; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

/// Strengths of the driving ansatz: one value per pair class, plus the
/// universal 3-body strength (zero when the geometry excludes it).
struct RegWeights {
    std::vector<double> w;
    double q = 0.0;
};

enum class Axis { x, y, z };

namespace detail {

inline int basis_index_of(const std::vector<unsigned>& masks, unsigned m) {
    for (size_t k = 0; k < masks.size(); ++k)
        if (masks[k] == m) return static_cast<int>(k);
    throw std::logic_error("configuration missing from basis table");
}

// +1 if the site points up in configuration m, -1 otherwise.
inline int zval(unsigned m, int site) { return ((m >> (site - 1)) & 1u) ? -1 : 1; }

// sigma^y phase divided by i: flipping up->down carries +i, down->up -i.
inline int yph(unsigned m, int site) { return ((m >> (site - 1)) & 1u) ? -1 : 1; }

}  // namespace detail

/// sigma^axis embedded at one site of an N-site cluster (cluster basis order).
inline Operator single_site(int n_sites, int site, Axis axis) {
    if (site < 1 || site > n_sites)
        throw std::invalid_argument("single_site: site outside 1..N");
    const auto& masks = detail::basis_masks_for(n_sites);
    const int dim = 1 << n_sites;
    Operator op(dim);
    for (int k = 0; k < dim; ++k) {
        const unsigned m = masks[k];
        switch (axis) {
            case Axis::z:
                op(k, k) = detail::zval(m, site);
                break;
            case Axis::x:
                op(detail::basis_index_of(masks, m ^ (1u << (site - 1))), k) = 1.0;
                break;
            case Axis::y:
                op(detail::basis_index_of(masks, m ^ (1u << (site - 1))), k) =
                    cxd(0.0, detail::yph(m, site));
                break;
        }
    }
    return op;
}

/// Ising coupling part: sum over nearest-neighbour bonds of sigma^z sigma^z.
inline Mat coupling_matrix(const ClusterGeometry& g) {
    const int dim = g.dim();
    Mat k(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const unsigned m = g.basis_masks[i];
        int d = 0;
        for (const auto& e : g.h0_edges) d += detail::zval(m, e.a) * detail::zval(m, e.b);
        k(i, i) = d;
    }
    return k;
}

/// Transverse-field part: the matrix multiplying Bx, i.e. -1/2 sum sigma^x.
inline Mat field_matrix(const ClusterGeometry& g) {
    const int dim = g.dim();
    Mat x(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const unsigned m = g.basis_masks[k];
        for (int s = 1; s <= g.n_sites; ++s)
            x(detail::basis_index_of(g.basis_masks, m ^ (1u << (s - 1))), k) += -0.5;
    }
    return x;
}

namespace detail {

struct GeometryCache {
    Mat coupling, field;
    /// Real antisymmetric generators M_j with H_j = i M_j, one per unknown
    /// (pair classes in label order, then the 3-body term when included).
    std::vector<Mat> reg_units;
};

inline Mat pair_class_unit(const ClusterGeometry& g, const std::vector<SitePair>& cls) {
    const int dim = g.dim();
    Mat m(dim, dim);
    for (const auto& pr : cls) {
        for (int k = 0; k < dim; ++k) {
            const unsigned cfg = g.basis_masks[k];
            // sigma^y_a sigma^z_b flips a; sigma^z_a sigma^y_b flips b.
            m(basis_index_of(g.basis_masks, cfg ^ (1u << (pr.a - 1))), k) +=
                yph(cfg, pr.a) * zval(cfg, pr.b);
            m(basis_index_of(g.basis_masks, cfg ^ (1u << (pr.b - 1))), k) +=
                yph(cfg, pr.b) * zval(cfg, pr.a);
        }
    }
    return m;
}

// (sigma^x_i sigma^y_j + sigma^y_i sigma^x_j) sigma^z_k summed over every
// unordered site triple and every choice of the z leg within it.
inline Mat three_body_unit(const ClusterGeometry& g) {
    const int dim = g.dim();
    const int n = g.n_sites;
    Mat m(dim, dim);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                const int trip[3] = {a, b, c};
                for (int kz = 0; kz < 3; ++kz) {
                    const int zk = trip[kz];
                    const int i = trip[(kz + 1) % 3], j = trip[(kz + 2) % 3];
                    for (int k = 0; k < dim; ++k) {
                        const unsigned cfg = g.basis_masks[k];
                        const int ph = yph(cfg, i) + yph(cfg, j);  // 0 when anti-aligned
                        if (ph == 0) continue;
                        const unsigned flipped =
                            cfg ^ (1u << (i - 1)) ^ (1u << (j - 1));
                        m(basis_index_of(g.basis_masks, flipped), k) +=
                            ph * zval(cfg, zk);
                    }
                }
            }
    return m;
}

inline const GeometryCache& geometry_cache(const ClusterGeometry& g) {
    static const std::array<GeometryCache, 6> table = [] {
        std::array<GeometryCache, 6> t;
        for (Geometry which : all_geometries) {
            const ClusterGeometry& cg = catalog(which);
            GeometryCache& c = t[static_cast<size_t>(which)];
            c.coupling = coupling_matrix(cg);
            c.field = field_matrix(cg);
            for (const auto& cls : cg.w_classes)
                c.reg_units.push_back(pair_class_unit(cg, cls));
            if (cg.q_included) c.reg_units.push_back(three_body_unit(cg));
        }
        return t;
    }();
    return table[static_cast<size_t>(g.name)];
}

}  // namespace detail

/// H0 = J sum_{NN} sigma^z sigma^z - (Bx/2) sum sigma^x, as a real matrix.
inline Mat h0_matrix(const ClusterGeometry& g, double j, double bx) {
    const auto& c = detail::geometry_cache(g);
    Mat h(g.dim(), g.dim());
    for (size_t k = 0; k < h.a.size(); ++k)
        h.a[k] = j * c.coupling.a[k] + bx * c.field.a[k];
    return h;
}

inline Operator build_h0(const ClusterGeometry& g, double j, double bx) {
    const Mat h = h0_matrix(g, j, bx);
    Operator op(g.dim());
    for (size_t k = 0; k < h.a.size(); ++k) op.a[k] = h.a[k];
    return op;
}

/// Real antisymmetric generator of unknown `index` (H = i M). Index order:
/// pair classes, then the 3-body term.
inline const Mat& reg_unit_matrix(const ClusterGeometry& g, int index) {
    const auto& units = detail::geometry_cache(g).reg_units;
    if (index < 0 || index >= static_cast<int>(units.size()))
        throw std::invalid_argument("reg_unit_matrix: unknown index out of range");
    return units[static_cast<size_t>(index)];
}

/// Real antisymmetric combination M(weights); the driving term is i M.
inline Mat reg_matrix(const ClusterGeometry& g, const RegWeights& weights) {
    if (static_cast<int>(weights.w.size()) != g.pair_class_count())
        throw std::invalid_argument("reg weights: wrong number of pair classes");
    if (!g.q_included && weights.q != 0.0)
        throw std::invalid_argument("reg weights: 3-body term not part of this ansatz");
    const auto& units = detail::geometry_cache(g).reg_units;
    Mat m(g.dim(), g.dim());
    for (int j = 0; j < g.pair_class_count(); ++j) {
        const double w = weights.w[j];
        for (size_t k = 0; k < m.a.size(); ++k) m.a[k] += w * units[j].a[k];
    }
    if (g.q_included) {
        const double q = weights.q;
        for (size_t k = 0; k < m.a.size(); ++k) m.a[k] += q * units.back().a[k];
    }
    return m;
}

/// Driving Hamiltonian for the given strengths (purely imaginary entries).
inline Operator build_reg(const ClusterGeometry& g, const RegWeights& weights) {
    const Mat m = reg_matrix(g, weights);
    Operator op(g.dim());
    for (size_t k = 0; k < m.a.size(); ++k) op.a[k] = cxd(0.0, m.a[k]);
    return op;
}

// ---------------------------------------------------------------------------
// Hand-transcribed reference matrices. Each table below was copied entry by
// entry from the printed matrix, independent of the programmatic builders,
// and pins down every sign and the 3-body summation convention.
// ---------------------------------------------------------------------------

namespace golden {

// chain3: entry = i * (c1 * W1 + c2 * W2); tables hold (c1, c2).
inline constexpr int kChain3W1[8][8] = {
    {0, -1, -2, -1, 0, 0, 0, 0},  {1, 0, 0, 0, 0, -1, 0, 0},
    {2, 0, 0, 0, 1, 0, 1, 0},     {1, 0, 0, 0, 0, -1, 0, 0},
    {0, 0, -1, 0, 0, 0, 0, 1},    {0, 1, 0, 1, 0, 0, 0, 2},
    {0, 0, -1, 0, 0, 0, 0, 1},    {0, 0, 0, 0, -1, -2, -1, 0}};
inline constexpr int kChain3W2[8][8] = {
    {0, -1, 0, -1, 0, 0, 0, 0},   {1, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, -1, 0, -1, 0},   {1, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 1, 0, 0, 0, 0, 1},     {0, -1, 0, -1, 0, 0, 0, 0},
    {0, 0, 1, 0, 0, 0, 0, 1},     {0, 0, 0, 0, -1, 0, -1, 0}};

// pyramid: entry = i * c * W; table holds c.
inline constexpr int kPyramidW[16][16] = {
    {0, -3, -3, -3, -3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {3, 0, 0, 0, 0, -1, 0, 0, -1, -1, 0, 0, 0, 0, 0, 0},
    {3, 0, 0, 0, 0, -1, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0},
    {3, 0, 0, 0, 0, 0, -1, -1, 0, -1, 0, 0, 0, 0, 0, 0},
    {3, 0, 0, 0, 0, 0, 0, -1, -1, 0, -1, 0, 0, 0, 0, 0},
    {0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0},
    {0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
    {0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0},
    {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0},
    {0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0},
    {0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, -1, -1, 0, 0, -1, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, -1, 0, 0, -1, 0, -1, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, -1, -1, 0, 0, -1, 0, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -3, -3, -3, -3, 0}};

// square / star / chain4: entry = i * sign(v) * A_{|v|}; tables hold v.
inline constexpr int kSquareA[16][16] = {
    {0, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, -2, 0, 0, -2, -3, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, -2, -2, 0, 0, 0, -3, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, -2, -2, 0, -3, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, -2, -2, 0, -3, 0, 0, 0, 0, 0},
    {0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0},
    {0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 2, 0},
    {0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0},
    {0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0},
    {0, 3, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 3, 0},
    {0, 0, 3, 0, 3, 0, 0, 0, 0, 0, 0, 3, 0, 3, 0, 0},
    {0, 0, 0, 0, 0, 0, -2, -2, 0, 0, -3, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, -2, -2, -3, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, -2, 0, 0, -2, 0, -3, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, -2, -2, 0, 0, -3, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -1, -1, -1, 0}};

inline constexpr int kStarA[16][16] = {
    {0, -1, -1, -2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, -3, 0, 0, -3, -3, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, -3, -3, 0, 0, 0, -3, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, 0, 4, 4, 0, 4, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, -3, -3, 0, -3, 0, 0, 0, 0, 0},
    {0, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -4, 3, 0},
    {0, 0, 3, -4, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 3, 0},
    {0, 0, 0, -4, 3, 0, 0, 0, 0, 0, 0, 3, 3, 0, 0, 0},
    {0, 3, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 3, -4, 0, 0},
    {0, 3, 0, -4, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 3, 0},
    {0, 0, 3, 0, 3, 0, 0, 0, 0, 0, 0, 3, 0, -4, 0, 0},
    {0, 0, 0, 0, 0, 0, -3, -3, 0, 0, -3, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, -3, -3, -3, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 4, 0, 0, 4, 0, 4, 0, 0, 0, 0, 2},
    {0, 0, 0, 0, 0, -3, -3, 0, 0, -3, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -1, -2, -1, 0}};

inline constexpr int kChain4A[16][16] = {
    {0, -1, -2, -2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, -3, 0, 0, -4, -5, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, -6, -7, 0, 0, 0, -8, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, 0, -7, -6, 0, -8, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, -3, -4, 0, -5, 0, 0, 0, 0, 0},
    {0, 3, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 6, 3, 0},
    {0, 0, 7, 7, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 4, 0},
    {0, 0, 0, 6, 3, 0, 0, 0, 0, 0, 0, 3, 6, 0, 0, 0},
    {0, 4, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 7, 7, 0, 0},
    {0, 5, 0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 5, 0},
    {0, 0, 8, 0, 5, 0, 0, 0, 0, 0, 0, 5, 0, 8, 0, 0},
    {0, 0, 0, 0, 0, 0, -4, -3, 0, 0, -5, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, -6, -7, -8, 0, 0, 0, 0, 0, 2},
    {0, 0, 0, 0, 0, -6, 0, 0, -7, 0, -8, 0, 0, 0, 0, 2},
    {0, 0, 0, 0, 0, -3, -4, 0, 0, -5, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -2, -2, -1, 0}};

}  // namespace golden

/// Hand-transcribed reference matrix for the given geometry. The pyramid
/// version accepts a 3-body strength (rows/columns 1 and 16 against 6..11
/// gain -4q/+4q); the square/star/chain4 tables are pair-only, so q must be
/// zero there. Unsupported for the triangle.
inline Operator golden_reg_matrix(const ClusterGeometry& g, const RegWeights& weights) {
    if (static_cast<int>(weights.w.size()) != g.pair_class_count())
        throw std::invalid_argument("golden_reg_matrix: wrong weight count");
    if (!g.q_included && weights.q != 0.0)
        throw std::invalid_argument("golden_reg_matrix: no 3-body term for N=3");
    Operator op(g.dim());
    auto set = [&op](int r, int c, double v) { op(r, c) = cxd(0.0, v); };
    const auto& w = weights.w;

    switch (g.name) {
        case Geometry::chain3:
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    set(r, c, golden::kChain3W1[r][c] * w[0] + golden::kChain3W2[r][c] * w[1]);
            return op;
        case Geometry::pyramid: {
            for (int r = 0; r < 16; ++r)
                for (int c = 0; c < 16; ++c) set(r, c, golden::kPyramidW[r][c] * w[0]);
            const double q = weights.q;
            for (int j = 5; j <= 10; ++j) {  // 0-based columns 6..11
                op(0, j) += cxd(0.0, -4.0 * q);
                op(15, j) += cxd(0.0, -4.0 * q);
                op(j, 0) += cxd(0.0, 4.0 * q);
                op(j, 15) += cxd(0.0, 4.0 * q);
            }
            return op;
        }
        case Geometry::square:
        case Geometry::star:
        case Geometry::chain4: {
            if (weights.q != 0.0)
                throw std::invalid_argument(
                    "golden_reg_matrix: pair-only table, q must be zero");
            double comb[9] = {0};
            const int(*tab)[16] = nullptr;
            if (g.name == Geometry::square) {
                tab = golden::kSquareA;
                comb[1] = 2 * w[0] + w[1];
                comb[2] = w[1];
                comb[3] = 2 * w[0] - w[1];
            } else if (g.name == Geometry::star) {
                tab = golden::kStarA;
                comb[1] = 2 * w[1] + w[0];
                comb[2] = 3 * w[0];
                comb[3] = w[0];
                comb[4] = w[0] - 2 * w[1];
            } else {
                tab = golden::kChain4A;
                comb[1] = w[0] + w[2] + w[3];
                comb[2] = w[0] + w[1] + w[2];
                comb[3] = w[1] - w[0] + w[2];
                comb[4] = w[0] - w[3] + w[2];
                comb[5] = w[0] + w[1] - w[2];
                comb[6] = -w[0] + w[3] + w[2];
                comb[7] = w[0] - w[1] + w[2];
                comb[8] = w[0] + w[3] - w[2];
            }
            for (int r = 0; r < 16; ++r)
                for (int c = 0; c < 16; ++c) {
                    const int v = tab[r][c];
                    if (v != 0) set(r, c, (v > 0 ? 1.0 : -1.0) * comb[v > 0 ? v : -v]);
                }
            return op;
        }
        default:
            throw std::invalid_argument("golden_reg_matrix: unsupported geometry");
    }
}

}  // namespace spindrive
