#include "doctest.h"

#include <random>

#include "divcyl/analysis.hpp"
#include "divcyl/cylinder.hpp"

using namespace divcyl;

namespace {

PointMultiset full_space(int q, int v) {
    Space s(Field::of_order(q), v);
    return PointMultiset(s, enumerate_points(s));
}

long long choose2(long long x) { return x * (x - 1) / 2; }

}  // namespace

TEST_CASE("multiplicities and spectra of small planes") {
    auto pg = full_space(2, 3);
    Space s = pg.space();
    Subspace line(s, {Vec{1, 0, 0}, Vec{0, 1, 0}});
    CHECK(multiplicity(pg, line) == 3);
    CHECK(multiplicity(pg, Subspace::full(s)) == 7);
    CHECK(multiplicity(pg, Subspace::zero(s)) == 0);
    CHECK(spectrum(pg).a == std::map<long long, long long>{{3, 7}});

    auto ag = affine_geometry(Field::of_order(2), 3);
    Subspace infinity(s, {Vec{0, 1, 0}, Vec{0, 0, 1}});
    CHECK(multiplicity(ag, infinity) == 0);
    CHECK(spectrum(ag).a == std::map<long long, long long>{{0, 1}, {2, 6}});
    CHECK(is_spanning(ag));
    CHECK(is_spanning_by_spectrum(ag));
}

TEST_CASE("divisibility") {
    Space s(Field::of_order(3), 3);
    PointMultiset line(s);
    for (auto id : Subspace(s, {Vec{1, 0, 0}, Vec{0, 1, 0}}).point_ids(s)) line.add_id(id);
    CHECK(is_divisible(line, 3).divisible);

    Space s2(Field::of_order(2), 4);
    PointMultiset basis(s2, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}});
    auto r = is_divisible(basis, 2);
    CHECK_FALSE(r.divisible);
    REQUIRE(r.witness);
    CHECK(r.witness->normal == Vec{1, 0, 0, 0});
    // Brute-force oracle over all 15 hyperplanes: weight 1 and weight 3 normals violate.
    int bad = 0;
    for (const auto& h : enumerate_hyperplanes(s2)) {
        int c = 0;
        for (const auto& x : basis.support()) c += h.contains(s2, x);
        bad += (4 - c) % 2 != 0;
    }
    CHECK(bad == 8);

    Space s5(Field::of_order(5), 4);
    PointMultiset l5(s5), p5(s5);
    for (auto id : Subspace(s5, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}}).point_ids(s5)) l5.add_id(id);
    for (auto id : Subspace(s5, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}}).point_ids(s5)) p5.add_id(id);
    CHECK(divisibility_exponent(l5) == 1);
    CHECK(divisibility_exponent(p5) == 2);
    PointMultiset generic(s5, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}, Vec{1, 1, 1, 1}});
    CHECK(divisibility_exponent(generic) == 0);
}

TEST_CASE("spanning: rank and a_n agree on random inputs") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        const int q = std::vector<int>{2, 3, 4, 5}[rng() % 4];
        const int v = 2 + rng() % 3;
        Space s(Field::of_order(q), v);
        PointMultiset m(s);
        const int n = 1 + rng() % 6;
        for (int i = 0; i < n; ++i) m.add_id(rng() % s.num_points());
        CHECK(is_spanning(m) == is_spanning_by_spectrum(m));
    }
    Space s(Field::of_order(3), 3);
    PointMultiset collinear(s);
    for (auto id : Subspace(s, {Vec{1, 0, 0}, Vec{0, 1, 0}}).point_ids(s)) collinear.add_id(id);
    CHECK_FALSE(is_spanning(collinear));
}

TEST_CASE("standard equations on random multisets") {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        const int q = std::vector<int>{2, 3, 4}[rng() % 3];
        const int v = 3 + rng() % 2;
        Space s(Field::of_order(q), v);
        PointMultiset m(s);
        const int n = 1 + rng() % 12;
        for (int i = 0; i < n; ++i) m.add_id(rng() % s.num_points());
        auto sp = spectrum(m);
        long long s0 = 0, s1 = 0, s2 = 0;
        for (auto [i, c] : sp.a) {
            s0 += c;
            s1 += i * c;
            s2 += choose2(i) * c;
        }
        CHECK(s0 == static_cast<long long>(bracket_count(v, q)));
        CHECK(s1 == n * static_cast<long long>(bracket_count(v - 1, q)));
        if (m.is_set()) CHECK(s2 == choose2(n) * static_cast<long long>(bracket_count(v - 2, q)));
    }
}

TEST_CASE("codimension two spectra") {
    auto pg = full_space(2, 4);
    auto sp = spectrum(pg, 2);
    CHECK(sp.a == std::map<long long, long long>{{3, 35}});
}

TEST_CASE("pencil distributions of point sets") {
    auto ag = affine_geometry(Field::of_order(2), 3);
    Space s = ag.space();
    Subspace k(s, {Vec{1, 0, 0}});
    CHECK(pencil_distribution(ag, k) == std::vector<long long>{2, 2, 2});
    std::mt19937 rng(9);
    for (int t = 0; t < 100; ++t) {
        Space s4(Field::of_order(3), 4);
        PointMultiset m(s4);
        for (int i = 0; i < 8; ++i) m.add_id(rng() % s4.num_points());
        Subspace kk(s4, {s4.point(rng() % 40), s4.point(rng() % 40)});
        if (kk.dim() != 2) continue;
        auto d = pencil_distribution(m, kk);
        long long sum = 0;
        for (auto x : d) sum += x;
        CHECK(sum == m.size() + 3 * multiplicity(m, kk));
    }
}

TEST_CASE("arithmetic pencil distributions") {
    auto show = [](const std::vector<std::vector<int>>& ds) {
        std::vector<std::string> out;
        for (const auto& d : ds) out.push_back(format_distribution(d));
        return out;
    };
    CHECK(show(count_pencil_distributions(7, 14, 1, {2, 3, 4}, {})) ==
          std::vector<std::string>{"4^2 3^1 2^5", "4^1 3^3 2^4", "3^5 2^3"});
    CHECK(show(count_pencil_distributions(7, 49, 0, {0, 7, 14, 21}, {21})) ==
          std::vector<std::string>{"21^2 7^1 0^5", "21^1 14^2 0^5", "21^1 14^1 7^2 0^4", "21^1 7^4 0^3"});
    CHECK(show(count_pencil_distributions(8, 24, 0, {0, 3, 5}, {5})) == std::vector<std::string>{"5^3 3^3 0^3"});
    CHECK(show(count_pencil_distributions(8, 24, 0, {0, 3, 5}, {})) ==
          std::vector<std::string>{"5^3 3^3 0^3", "3^8 0^1"});
    CHECK(show(count_pencil_distributions(8, 40, 0, {0, 5, 6}, {6})) == std::vector<std::string>{"6^5 5^2 0^2"});
    CHECK(count_pencil_distributions(3, 100, 0, {0, 1}, {}).empty());
}

TEST_CASE("blocking sets and symmetric differences") {
    CHECK(is_blocking_set(full_space(3, 3)));
    CHECK_FALSE(is_blocking_set(affine_geometry(Field::of_order(3), 3)));
    Space s(Field::of_order(3), 3);
    Subspace l(s, {Vec{1, 0, 0}, Vec{0, 1, 0}});
    PointMultiset line(s);
    for (auto id : l.point_ids(s)) line.add_id(id);
    CHECK(is_blocking_set(line));
    CHECK(symmetric_difference_with_line(PointMultiset(s), l) == line);
    std::mt19937 rng(2);
    for (int t = 0; t < 50; ++t) {
        PointMultiset m(s);
        for (PointId i = 0; i < s.num_points(); ++i)
            if (rng() % 2) m.add_id(i);
        auto m2 = symmetric_difference_with_line(m, l);
        CHECK(symmetric_difference_with_line(m2, l) == m);
        CHECK(m2.size() == m.size() + 4 - 2 * multiplicity(m, l));
    }
    PointMultiset multi(s);
    multi.add_id(0, 2);
    CHECK_THROWS_AS(symmetric_difference_with_line(multi, l), GeometryError);
}
