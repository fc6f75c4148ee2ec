// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cluster.hpp
 * @brief The six supported spin-cluster geometries and their symmetry data.
 *
 * Basis convention: basis index k (1-based) maps to a spin configuration via
 * a fixed per-N permutation table, ordered as all-up first, then grouped by
 * the number of flipped spins, ending with all-down. Configurations are
 * stored as bitmasks where bit (site-1) set means the site points down.
 *
 * Every matrix in the project is written in this basis, so the tables here
 * are the single source of truth for index <-> configuration.
 */

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spindrive {

enum class Geometry { triangle, chain3, pyramid, square, star, chain4 };

inline constexpr std::array<Geometry, 6> all_geometries = {
    Geometry::triangle, Geometry::chain3, Geometry::pyramid,
    Geometry::square,   Geometry::star,   Geometry::chain4};

/// Unordered pair of 1-based site indices.
struct SitePair {
    int a, b;
};

struct ClusterGeometry {
    Geometry name{};
    int n_sites = 0;
    /// Nearest-neighbour bonds of the reference Hamiltonian.
    std::vector<SitePair> h0_edges;
    /// Pair classes sharing one driving strength, in label order (W1, W2, ...).
    std::vector<std::vector<SitePair>> w_classes;
    /// Whether the universal 3-body term is part of the driving ansatz.
    bool q_included = false;
    /// basis_masks[k] is the configuration of basis index k+1 (bit = site down).
    std::vector<unsigned> basis_masks;
    /// Groups of basis indices (1-based) with identical ground-state components,
    /// in component-label order; the first entry of each group is its
    /// representative.
    std::vector<std::vector<int>> component_classes;

    int dim() const { return 1 << n_sites; }
    int pair_class_count() const { return static_cast<int>(w_classes.size()); }
    /// Number of unknown driving strengths (pair classes plus the 3-body term).
    int unknown_count() const { return pair_class_count() + (q_included ? 1 : 0); }

    bool spin_down(int basis_index, int site) const {
        return (basis_masks[basis_index - 1] >> (site - 1)) & 1u;
    }
};

namespace detail {

inline const std::vector<unsigned>& basis_masks_for(int n_sites) {
    static const std::vector<unsigned> n3 = {0, 4, 2, 1, 6, 5, 3, 7};
    static const std::vector<unsigned> n4 = {0, 8,  4, 2, 1,  12, 6,  3,
                                             9, 10, 5, 7, 11, 13, 14, 15};
    if (n_sites == 3) return n3;
    if (n_sites == 4) return n4;
    throw std::invalid_argument("unsupported cluster size");
}

inline ClusterGeometry make_geometry(Geometry which) {
    ClusterGeometry g;
    g.name = which;
    switch (which) {
        case Geometry::triangle:
            g.n_sites = 3;
            g.h0_edges = {{1, 2}, {2, 3}, {1, 3}};
            g.w_classes = {{{1, 2}, {2, 3}, {1, 3}}};
            g.q_included = false;
            g.component_classes = {{1, 8}, {2, 3, 4, 5, 6, 7}};
            break;
        case Geometry::chain3:
            g.n_sites = 3;
            g.h0_edges = {{1, 2}, {2, 3}};
            g.w_classes = {{{1, 2}, {2, 3}}, {{1, 3}}};
            g.q_included = false;
            g.component_classes = {{1, 8}, {2, 4, 5, 7}, {3, 6}};
            break;
        case Geometry::pyramid:
            g.n_sites = 4;
            g.h0_edges = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
            g.w_classes = {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
            g.q_included = true;
            g.component_classes = {
                {1, 16}, {2, 3, 4, 5, 12, 13, 14, 15}, {6, 7, 8, 9, 10, 11}};
            break;
        case Geometry::square:
            g.n_sites = 4;
            g.h0_edges = {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
            g.w_classes = {{{1, 2}, {2, 3}, {3, 4}, {1, 4}}, {{1, 3}, {2, 4}}};
            g.q_included = true;
            g.component_classes = {
                {1, 16}, {2, 3, 4, 5, 12, 13, 14, 15}, {6, 7, 8, 9}, {10, 11}};
            break;
        case Geometry::star:
            // Site 2 is the hub; 1, 3, 4 are the leaves.
            g.n_sites = 4;
            g.h0_edges = {{1, 2}, {2, 3}, {2, 4}};
            g.w_classes = {{{1, 2}, {2, 3}, {2, 4}}, {{1, 4}, {1, 3}, {3, 4}}};
            g.q_included = true;
            g.component_classes = {
                {1, 16}, {2, 3, 5, 12, 13, 15}, {4, 14}, {6, 7, 8, 9, 10, 11}};
            break;
        case Geometry::chain4:
            g.n_sites = 4;
            g.h0_edges = {{1, 2}, {2, 3}, {3, 4}};
            g.w_classes = {{{1, 2}, {3, 4}}, {{2, 3}}, {{1, 3}, {2, 4}}, {{1, 4}}};
            g.q_included = true;
            g.component_classes = {{1, 16}, {2, 5, 12, 15}, {3, 4, 13, 14},
                                   {6, 8},  {7, 9},         {10, 11}};
            break;
    }
    g.basis_masks = basis_masks_for(g.n_sites);
    return g;
}

}  // namespace detail

inline const ClusterGeometry& catalog(Geometry which) {
    static const std::array<ClusterGeometry, 6> table = {
        detail::make_geometry(Geometry::triangle),
        detail::make_geometry(Geometry::chain3),
        detail::make_geometry(Geometry::pyramid),
        detail::make_geometry(Geometry::square),
        detail::make_geometry(Geometry::star),
        detail::make_geometry(Geometry::chain4)};
    return table[static_cast<size_t>(which)];
}

inline std::string_view to_string(Geometry g) {
    switch (g) {
        case Geometry::triangle: return "triangle";
        case Geometry::chain3: return "chain3";
        case Geometry::pyramid: return "pyramid";
        case Geometry::square: return "square";
        case Geometry::star: return "star";
        case Geometry::chain4: return "chain4";
    }
    return "?";
}

inline const ClusterGeometry& catalog(std::string_view name) {
    for (Geometry g : all_geometries)
        if (name == to_string(g)) return catalog(g);
    throw std::invalid_argument("unknown geometry: " + std::string(name));
}

/// Index (0-based) of the component class containing a 1-based basis index.
inline int component_class_of(const ClusterGeometry& g, int basis_index) {
    if (basis_index < 1 || basis_index > g.dim())
        throw std::out_of_range("basis index outside 1..2^N");
    for (size_t c = 0; c < g.component_classes.size(); ++c)
        for (int member : g.component_classes[c])
            if (member == basis_index) return static_cast<int>(c);
    throw std::logic_error("component classes do not cover the basis");
}

}  // namespace spindrive
