#include "doctest.h"

#include <fstream>
#include <sstream>

#include "divcyl/analysis.hpp"
#include "divcyl/canon.hpp"
#include "divcyl/code.hpp"
#include "fixtures.hpp"

using namespace divcyl;

namespace {

PointMultiset full_space(int q, int v) {
    Space s(Field::of_order(q), v);
    return PointMultiset(s, enumerate_points(s));
}

}  // namespace

TEST_CASE("simplex code") {
    auto g = code_from_points(full_space(2, 3));
    CHECK(g.k == 3);
    CHECK(g.n == 7);
    CHECK(is_projective(g));
    auto w = weight_distribution(g);
    CHECK(w.counts == std::map<int, long long>{{0, 1}, {4, 7}});
    CHECK(format_weights(w) == "1+7z^4");
    CHECK(points_from_code(g) == full_space(2, 3));
}

TEST_CASE("points from small matrices") {
    auto f = Field::of_order(2);
    GeneratorMatrix id(f, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}});
    auto m = points_from_code(id);
    CHECK(m.size() == 3);
    CHECK(m.count(Vec{1, 0, 0}) == 1);
    CHECK(m.count(Vec{0, 0, 1}) == 1);
    GeneratorMatrix dup(f, {Vec{1, 1, 0, 0}, Vec{0, 0, 1, 0}});
    int zeros = 0;
    auto md = points_from_code(dup, &zeros);
    CHECK(md.count(Vec{1, 0}) == 2);
    CHECK(zeros == 1);
    CHECK_FALSE(is_projective(dup));
}

TEST_CASE("projectivity matches set-ness") {
    Space s(Field::of_order(3), 3);
    PointMultiset m(s, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}});
    CHECK(is_projective(code_from_points(m)));
    m.add(Vec{1, 0, 0});
    CHECK_FALSE(is_projective(code_from_points(m)));
    CHECK(points_from_code(code_from_points(m)) == m);
}

TEST_CASE("paper matrices") {
    auto g = fixture_matrix("ce_16_5_q4.mat");
    CHECK(weight_distribution(g).counts == std::map<int, long long>{{0, 1}, {8, 90}, {12, 840}, {16, 93}});
    CHECK(is_projective(g));
    auto g2 = reinterpret_prime_subfield(g);
    CHECK(weight_distribution(g2).counts == std::map<int, long long>{{0, 1}, {8, 30}, {16, 1}});
    auto c = fixture_matrix("c_10_3_q5.mat");
    CHECK(weight_distribution(c).counts == std::map<int, long long>{{0, 1}, {7, 40}, {8, 60}, {10, 24}});
    CHECK(is_projective(c));
    auto m = points_from_code(c);
    CHECK(m.size() == 10);
    CHECK(spectrum(m).a == std::map<long long, long long>{{0, 6}, {2, 15}, {3, 10}});
    auto bad = GeneratorMatrix(Field::of_order(4), {Vec{1, 2}, Vec{0, 1}});
    CHECK_THROWS_AS(reinterpret_prime_subfield(bad), CodeError);
}

TEST_CASE("fixture files round trip byte-identically") {
    for (auto name : {"ce_16_5_q4.mat", "c_10_3_q5.mat"}) {
        std::ifstream in(fixture_path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(write_matrix(fixture_matrix(name)) == ss.str());
    }
}

TEST_CASE("weight and spectrum duality") {
    for (auto name : {"ce_16_5_q4.mat", "c_10_3_q5.mat"}) {
        auto g = fixture_matrix(name);
        auto m = points_from_code(g);
        auto w = weight_distribution(g);
        auto sp = spectrum(m);
        const int q = g.field.q();
        long long total = 0, first = 0;
        for (auto [wt, c] : w.counts) {
            total += c;
            first += wt * c;
            if (wt > 0) CHECK(c == (q - 1) * sp.at(g.n - wt));
        }
        CHECK(total == static_cast<long long>(ipow(q, g.k)));
        CHECK(first == (q - 1) * static_cast<long long>(ipow(q, g.k - 1)) * g.n);
    }
}

TEST_CASE("residual codes") {
    auto g = code_from_points(full_space(2, 3));
    Vec msg{1, 0, 0};
    auto c = encode(g, msg);
    int wt = 0;
    for (auto e : c) wt += e != 0;
    CHECK(wt == 4);
    auto r = residual_code(g, c);
    CHECK(r.n == 3);
    CHECK(r.k == 2);
    CHECK(weight_distribution(r).counts == std::map<int, long long>{{0, 1}, {2, 3}});
    CHECK_THROWS_AS(residual_code(g, Vec(7, 0)), CodeError);
    CHECK_THROWS_AS(residual_code(g, Vec{1, 0, 0, 0, 0, 0, 0}), CodeError);

    // Residuals of a 4-divisible code are 2-divisible.
    auto ce = fixture_matrix("ce_16_5_q4.mat");
    for (int i = 0; i < 5; ++i) {
        Vec m(5, 0);
        m[i] = 1;
        auto cw = encode(ce, m);
        int w2 = 0;
        for (auto e : cw) w2 += e != 0;
        auto res = residual_code(ce, cw);
        CHECK(res.n == 16 - w2);
        for (auto [wt2, cnt] : weight_distribution(res).counts) CHECK(wt2 % 2 == 0);
    }
}

TEST_CASE("divisibility transfer to the code") {
    auto g = fixture_matrix("ce_16_5_q4.mat");
    auto m = points_from_code(g);
    CHECK(is_divisible(m, 4).divisible);
    for (auto [wt, c] : weight_distribution(g).counts) CHECK(wt % 4 == 0);
    CHECK(divisibility_exponent(m) == 1);
}
