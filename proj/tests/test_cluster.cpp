// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace spindrive;

TEST_CASE("catalog returns the documented static data") {
    const auto& tri = catalog(Geometry::triangle);
    CHECK(tri.n_sites == 3);
    CHECK(tri.w_classes.size() == 1);
    CHECK(tri.w_classes[0].size() == 3);
    CHECK_FALSE(tri.q_included);

    const auto& c4 = catalog(Geometry::chain4);
    REQUIRE(c4.w_classes.size() == 4);
    CHECK(c4.w_classes[0].size() == 2);  // (1,2),(3,4)
    CHECK(c4.w_classes[1].size() == 1);  // (2,3)
    CHECK(c4.w_classes[2].size() == 2);  // (1,3),(2,4)
    CHECK(c4.w_classes[3].size() == 1);  // (1,4)
    CHECK(c4.q_included);

    const auto& st = catalog(Geometry::star);
    std::set<std::pair<int, int>> edges;
    for (auto e : st.h0_edges) edges.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    CHECK(edges == std::set<std::pair<int, int>>{{1, 2}, {2, 3}, {2, 4}});
    CHECK(st.q_included);

    for (Geometry which : {Geometry::triangle, Geometry::chain3})
        CHECK_FALSE(catalog(which).q_included);
    for (Geometry which : {Geometry::pyramid, Geometry::square, Geometry::star, Geometry::chain4})
        CHECK(catalog(which).q_included);

    CHECK(catalog("square").name == Geometry::square);
    CHECK_THROWS_AS(catalog("hexagon"), std::invalid_argument);
}

TEST_CASE("pair classes cover every unordered pair exactly once") {
    for (Geometry which : all_geometries) {
        const auto& g = catalog(which);
        std::set<std::pair<int, int>> seen;
        int total = 0;
        for (const auto& cls : g.w_classes)
            for (auto p : cls) {
                seen.insert({std::min(p.a, p.b), std::max(p.a, p.b)});
                ++total;
            }
        const int expect = g.n_sites * (g.n_sites - 1) / 2;
        CHECK(total == expect);
        CHECK(static_cast<int>(seen.size()) == expect);
        for (auto e : g.h0_edges)
            CHECK(seen.count({std::min(e.a, e.b), std::max(e.a, e.b)}) == 1);
    }
}

TEST_CASE("basis tables are bijections with all-up first and all-down last") {
    for (Geometry which : all_geometries) {
        const auto& g = catalog(which);
        std::set<unsigned> seen(g.basis_masks.begin(), g.basis_masks.end());
        CHECK(static_cast<int>(seen.size()) == g.dim());
        CHECK(g.basis_masks.front() == 0u);
        CHECK(g.basis_masks.back() == (1u << g.n_sites) - 1u);
    }
}

TEST_CASE("component classes partition the basis") {
    for (Geometry which : all_geometries) {
        const auto& g = catalog(which);
        std::set<int> seen;
        for (const auto& cls : g.component_classes)
            for (int idx : cls) {
                CHECK(idx >= 1);
                CHECK(idx <= g.dim());
                CHECK(seen.insert(idx).second);
            }
        CHECK(static_cast<int>(seen.size()) == g.dim());
    }
}

TEST_CASE("component_class_of matches the documented groupings") {
    const auto& pyr = catalog(Geometry::pyramid);
    const int cls7 = component_class_of(pyr, 7);
    CHECK(pyr.component_classes[cls7] == std::vector<int>{6, 7, 8, 9, 10, 11});

    const auto& c4 = catalog(Geometry::chain4);
    const int cls13 = component_class_of(c4, 13);
    CHECK(c4.component_classes[cls13] == std::vector<int>{3, 4, 13, 14});

    const auto& tri = catalog(Geometry::triangle);
    const int cls1 = component_class_of(tri, 1);
    CHECK(tri.component_classes[cls1] == std::vector<int>{1, 8});

    CHECK_THROWS_AS(component_class_of(tri, 0), std::out_of_range);
    CHECK_THROWS_AS(component_class_of(tri, 9), std::out_of_range);
}

TEST_CASE("component classes agree with numerically computed ground states") {
    auto rng = testutil::seeded_rng(2024);
    std::uniform_real_distribution<double> jdist(0.0, 2.0), bdist(2.0, 10.0);
    for (Geometry which : all_geometries) {
        const auto& g = catalog(which);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const double j = jdist(rng), bx = bdist(rng);
            const GroundState gs = ground_numeric(build_h0(g, j, bx));
            for (const auto& cls : g.component_classes) {
                const double ref = gs.components[cls.front() - 1];
                for (int idx : cls)
                    worst = std::max(worst, std::abs(gs.components[idx - 1] - ref));
            }
        }
        INFO("geometry " << to_string(which));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("spin_down reads the configuration tables") {
    const auto& tri = catalog(Geometry::triangle);
    // index 3 is the configuration with only site 2 flipped
    CHECK_FALSE(tri.spin_down(3, 1));
    CHECK(tri.spin_down(3, 2));
    CHECK_FALSE(tri.spin_down(3, 3));

    const auto& c4 = catalog(Geometry::chain4);
    // index 10 has sites 2 and 4 flipped
    CHECK_FALSE(c4.spin_down(10, 1));
    CHECK(c4.spin_down(10, 2));
    CHECK_FALSE(c4.spin_down(10, 3));
    CHECK(c4.spin_down(10, 4));
}
