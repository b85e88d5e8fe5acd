#include "doctest.h"

#include <random>
#include <set>

#include "divcyl/geometry.hpp"

using namespace divcyl;

TEST_CASE("normalize") {
    Space s3(Field::of_order(3), 3);
    CHECK(s3.normalize(Vec{0, 2, 1}) == Vec{0, 1, 2});
    Space s5(Field::of_order(5), 3);
    CHECK(s5.normalize(Vec{1, 4, 0}) == Vec{1, 4, 0});
    CHECK_THROWS_AS(s5.normalize(Vec{0, 0, 0}), GeometryError);
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        Vec x{Elem(rng() % 5), Elem(rng() % 5), Elem(1 + rng() % 4)};
        auto y = s5.normalize(x);
        CHECK(s5.normalize(y) == y);
    }
}

TEST_CASE("counts") {
    CHECK(bracket_count(4, 5) == 156);
    CHECK(bracket_count(2, 7) == 8);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(5, 0, 3) == 1);
    CHECK(gaussian_binomial(5, 5, 3) == 1);
    CHECK(gaussian_binomial(3, 4, 3) == 0);
    // Brute force: count distinct 2-spaces of GF(2)^4 by their point sets.
    Space s(Field::of_order(2), 4);
    std::set<std::vector<PointId>> lines;
    for (PointId a = 0; a < s.num_points(); ++a)
        for (PointId b = a + 1; b < s.num_points(); ++b)
            lines.insert(span(s, {s.point(a), s.point(b)}).point_ids(s));
    CHECK(lines.size() == 35);
}

TEST_CASE("point enumeration") {
    Space s(Field::of_order(2), 3);
    CHECK(enumerate_points(s).size() == 7);
    Space t(Field::of_order(3), 4);
    auto pts = enumerate_points(t);
    CHECK(pts.size() == 40);
    CHECK(pts.front() == Vec{1, 0, 0, 0});
    CHECK(pts.back() == Vec{0, 0, 0, 1});
    std::set<Vec> uniq(pts.begin(), pts.end());
    CHECK(uniq.size() == 40);
    for (PointId i = 0; i < t.num_points(); ++i) {
        CHECK(t.id_of(pts[i]) == i);
        CHECK(t.normalize(pts[i]) == pts[i]);
    }
}

TEST_CASE("spans and subspace enumeration") {
    Space s(Field::of_order(3), 4);
    CHECK(span(s, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}}).dim() == 2);
    CHECK(span(s, {Vec{1, 0, 0, 0}, Vec{1, 0, 0, 0}}).dim() == 1);
    CHECK(span(s, {}).dim() == 0);
    Space s2(Field::of_order(2), 4);
    auto subs = enumerate_subspaces(s2, 2);
    CHECK(subs.size() == 35);
    std::set<std::vector<PointId>> uniq;
    for (auto& u : subs) uniq.insert(u.point_ids(s2));
    CHECK(uniq.size() == 35);
    CHECK(enumerate_subspaces(s, 1).size() == 40);
    CHECK(enumerate_subspaces(s, 4).size() == 1);
    Space s4(Field::of_order(4), 4);
    CHECK(enumerate_subspaces(s4, 2).size() == gaussian_binomial(4, 2, 4));
}

TEST_CASE("each point lies on [v-1]_q hyperplanes") {
    for (auto [q, v] : {std::pair{2, 4}, {3, 4}, {5, 3}, {4, 3}}) {
        Space s(Field::of_order(q), v);
        auto hs = enumerate_hyperplanes(s);
        for (PointId i = 0; i < s.num_points(); ++i) {
            auto x = s.point(i);
            int c = 0;
            for (auto& h : hs) c += h.contains(s, x);
            CHECK(c == static_cast<int>(bracket_count(v - 1, q)));
        }
    }
}

TEST_CASE("pencils") {
    for (int q : {2, 7}) {
        Space s(Field::of_order(q), 4);
        Subspace k(s, {Vec{1, 0, 0, 1}, Vec{0, 1, 1, 0}});
        auto hs = hyperplanes_through(s, k);
        CHECK(hs.size() == static_cast<size_t>(q + 1));
        std::vector<int> cover(s.num_points(), 0);
        for (auto& h : hs) {
            for (auto& b : k.basis()) CHECK(h.contains(s, b));
            for (auto id : h.as_subspace(s).point_ids(s)) ++cover[id];
        }
        auto kids = k.point_ids(s);
        for (PointId i = 0; i < s.num_points(); ++i) {
            const bool in_k = std::binary_search(kids.begin(), kids.end(), i);
            CHECK(cover[i] == (in_k ? q + 1 : 1));
        }
    }
    Space s(Field::of_order(3), 4);
    CHECK_THROWS_AS(hyperplanes_through(s, Subspace(s, {Vec{1, 0, 0, 0}})), GeometryError);
}

TEST_CASE("affine parts") {
    Space s(Field::of_order(3), 3);
    Subspace f(s, {Vec{1, 0, 0}});
    auto a = affine_part(s, Vec{0, 1, 0}, f);
    CHECK(a == std::vector<Vec>{Vec{1, 1, 0}, Vec{1, 2, 0}, Vec{0, 1, 0}});
    CHECK(affine_part(s, Vec{0, 1, 0}, Subspace::zero(s)).size() == 1);
    CHECK_THROWS_AS(affine_part(s, Vec{2, 0, 0}, f), GeometryError);
    Space s2(Field::of_order(2), 4);
    Subspace g(s2, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}});
    auto b = affine_part(s2, Vec{0, 0, 1, 1}, g);
    CHECK(b.size() == 4);
    for (auto& x : b) CHECK(!g.contains(s2.field(), x));
    auto all = b;
    for (auto& r : g.basis()) all.push_back(r);
    CHECK(span(s2, all).dim() == 3);
}

TEST_CASE("quotient of a 2-cylinder by its axis") {
    Space s(Field::of_order(3), 3);
    Subspace f(s, {Vec{0, 0, 1}});
    PointMultiset m(s);
    for (Vec p : {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{1, 1, 0}})
        for (auto& x : affine_part(s, p, f)) m.add(x);
    CHECK(m.size() == 9);
    CHECK(m.is_set());
    auto qm = quotient(m, f);
    CHECK(qm.size() == 9);
    CHECK(qm.v() == 2);
    CHECK(qm.counts().size() == 3);
    for (auto& [id, c] : qm.counts()) CHECK(c == 3);
    CHECK(quotient(m, Subspace::zero(s)) == m);
    PointMultiset bad(s, {Vec{0, 0, 1}});
    CHECK_THROWS_AS(quotient(bad, f), GeometryError);
}

TEST_CASE("restriction to a subspace") {
    Space s(Field::of_order(2), 3);
    PointMultiset m(s, enumerate_points(s));
    Subspace line(s, {Vec{1, 0, 0}, Vec{0, 1, 0}});
    auto r = restrict_to(m, line);
    CHECK(r.v() == 2);
    CHECK(r.size() == 3);
}
