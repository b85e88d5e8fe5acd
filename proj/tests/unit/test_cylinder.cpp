#include "doctest.h"

#include <random>

#include "divcyl/analysis.hpp"
#include "divcyl/canon.hpp"
#include "divcyl/code.hpp"
#include "divcyl/cylinder.hpp"
#include "fixtures.hpp"

using namespace divcyl;

TEST_CASE("cylinder construction") {
    Space b2(Field::of_order(2), 2);
    auto c = construct_cylinder(PointMultiset(b2, {Vec{1, 0}, Vec{0, 1}}), 1);
    CHECK(c.points.size() == 4);
    CHECK(c.points.v() == 3);
    CHECK(is_affine_geometry(c.points));

    Space b3(Field::of_order(3), 3);
    auto t = construct_cylinder(PointMultiset(b3, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}}), 1);
    CHECK(t.points.size() == 9);
    CHECK(t.points.v() == 4);
    CHECK(t.points.is_set());
    CHECK(is_spanning(t.points));
    CHECK(is_divisible(t.points, 3).divisible);
    // Brute force: every hyperplane meets the cylinder in 0, 3, 6 or 9 points.
    for (auto h : hyperplane_multiplicities(t.points)) CHECK(h % 3 == 0);

    CHECK_THROWS_AS(construct_cylinder(PointMultiset(b3, {Vec{1, 0, 0}}), 1), GeometryError);
}

TEST_CASE("direction sets") {
    Space b3(Field::of_order(3), 2);
    auto c = construct_cylinder(PointMultiset(b3, {Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}), 1);
    auto dirs = direction_set(c.points);
    const auto axis_id = c.points.space().id_of(c.witness.axis.basis()[0]);
    CHECK(std::find(dirs.begin(), dirs.end(), axis_id) != dirs.end());

    auto ag = affine_geometry(Field::of_order(3), 3);
    auto d2 = direction_set(ag);
    // Brute force: the points at infinity are exactly those with x0 = 0.
    std::vector<PointId> infinity;
    for (PointId i = 0; i < ag.space().num_points(); ++i)
        if (ag.space().point(i)[0] == 0) infinity.push_back(i);
    CHECK(d2 == infinity);

    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    CHECK(direction_set(ce).empty());
}

TEST_CASE("cylinder recognition") {
    auto ag = affine_geometry(Field::of_order(2), 3);
    auto w = recognize_cylinder(ag, 1);
    REQUIRE(w);
    CHECK(w->axis.dim() == 1);
    CHECK(w->parts.size() == 2);

    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    CHECK_FALSE(recognize_cylinder(ce, 1));
    CHECK_FALSE(recognize_cylinder_exhaustive(ce, 1));
    CHECK_THROWS_AS(recognize_cylinder(ce, 2), GeometryError);

    std::mt19937 rng(4);
    for (int t = 0; t < 30; ++t) {
        const int q = std::vector<int>{2, 3, 4}[rng() % 3];
        const int r = 1 + rng() % 2;
        const int vb = 2 + rng() % 2;
        Space sb(Field::of_order(q), vb);
        PointMultiset base(sb);
        while (base.size() < q) {
            PointId id = rng() % sb.num_points();
            if (!base.count(id)) base.add_id(id);
        }
        auto cyl = construct_cylinder(base, r);
        if (cyl.points.v() > 5) continue;
        auto w1 = recognize_cylinder(cyl.points, r);
        auto w2 = recognize_cylinder_exhaustive(cyl.points, r);
        REQUIRE(w1);
        REQUIRE(w2);
        CHECK(w1->axis == w2->axis);
    }
}

TEST_CASE("lift") {
    auto ag2 = affine_geometry(Field::of_order(2), 3);
    auto l = lift(ag2);
    CHECK(l.size() == 8);
    CHECK(l.v() == 4);
    CHECK(are_equivalent(l, affine_geometry(Field::of_order(2), 4)));
    Space b3(Field::of_order(3), 3);
    auto t = construct_cylinder(PointMultiset(b3, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}}), 1);
    auto lt = lift(t.points);
    CHECK(lt.size() == 27);
    CHECK(is_divisible(lt, 9).divisible);
}

TEST_CASE("subfield embedding of AG(4,2)") {
    auto ag = affine_geometry(Field::of_order(2), 5);
    auto e = subfield_embed(ag, 2);
    CHECK(e.size() == 16);
    CHECK(e.q() == 4);
    CHECK(e.is_set());
    CHECK(is_divisible(e, 4).divisible);
    CHECK_FALSE(recognize_cylinder(e, 1));
    CHECK(is_subfield_embedded(e));
    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    CHECK(are_equivalent(e, ce));
    // Reading the coordinates back over GF(2) recovers AG(4,2).
    auto back = points_from_code(reinterpret_prime_subfield(code_from_points(e)));
    CHECK(are_equivalent(back, ag));
}

TEST_CASE("affine subspaces") {
    auto ag = affine_geometry(Field::of_order(3), 3);
    auto w = contains_affine_subspace(ag, 2);
    REQUIRE(w);
    CHECK(w->t.dim() == 2);
    CHECK(w->f.dim() == 1);
    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    CHECK_FALSE(contains_affine_subspace(ce, 2));
    Space b3(Field::of_order(3), 3);
    auto t = construct_cylinder(PointMultiset(b3, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}}), 1);
    CHECK(contains_affine_subspace(t.points, 2));
}

TEST_CASE("existence range of spanning cylinders") {
    CHECK(spanning_cylinder_exists(4, 1, 3));
    CHECK_FALSE(spanning_cylinder_exists(5, 1, 3));
    for (int q : {2, 3, 4, 5}) CHECK(spanning_cylinder_exists(3, 1, q));
    for (int q : {2, 3, 4}) {
        auto f = Field::of_order(q);
        for (int r = 1; r <= 2; ++r)
            for (int v = r + 1; v <= r + q + 1; ++v) {
                auto ex = spanning_cylinder_example(v, r, f);
                CHECK(ex.has_value() == spanning_cylinder_exists(v, r, q));
                if (ex) {
                    CHECK(is_spanning(ex->points));
                    CHECK(ex->points.is_set());
                    CHECK(is_divisible(ex->points, static_cast<long long>(ipow(q, r))).divisible);
                }
            }
    }
}
