#include "doctest.h"

#include "divcyl/field.hpp"

using namespace divcyl;

namespace {

// Schoolbook polynomial product mod (p, modulus), independent of the tables.
int slow_mul(int p, const std::vector<int>& mod, int a, int b) {
    const int h = static_cast<int>(mod.size()) - 1;
    std::vector<int> x(h), y(h), prod(2 * h, 0);
    for (int i = 0; i < h; ++i) {
        x[i] = a % p;
        a /= p;
        y[i] = b % p;
        b /= p;
    }
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (int d = 2 * h - 1; d >= h; --d) {
        const int c = prod[d];
        if (!c) continue;
        for (int i = 0; i <= h; ++i) prod[d - h + i] = ((prod[d - h + i] - c * mod[i]) % p + p) % p;
    }
    int code = 0;
    for (int i = h - 1; i >= 0; --i) code = code * p + prod[i];
    return code;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    auto f = Field::make(5, 1);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.inv(2) == 3);
    CHECK(f.sub(1, 3) == 3);
    CHECK(f.pow(2, 4) == 1);
    CHECK_THROWS_AS(f.inv(0), FieldError);
    CHECK(f.modulus().empty());
}

TEST_CASE("default moduli") {
    CHECK(Field::make(2, 2).modulus() == std::vector<int>{1, 1, 1});
    CHECK(Field::make(2, 3).modulus() == std::vector<int>{1, 0, 1, 1});
    CHECK(Field::make(3, 2).modulus() == std::vector<int>{1, 0, 1});
    auto f4 = Field::make(2, 2);
    CHECK(f4.mul(2, 2) == 3);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Field::make(2, 2, std::vector<int>{1, 1, 0}), FieldError);
    CHECK_THROWS_AS(Field::make(2, 2, std::vector<int>{1, 0, 1}), FieldError);
    CHECK_THROWS_AS(Field::make(4, 1), FieldError);
    CHECK_THROWS_AS(Field::of_order(6), FieldError);
}

TEST_CASE("field axioms and polynomial oracle") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16}) {
        auto f = Field::of_order(q);
        std::vector<int> mod = f.modulus();
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            if (a) CHECK(f.mul(a, f.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                if (f.h() > 1) CHECK(f.mul(a, b) == slow_mul(f.p(), mod, a, b));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                    CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
                }
            }
        }
    }
}

TEST_CASE("frobenius fixes exactly the prime subfield") {
    for (int q : {4, 8, 9}) {
        auto f = Field::of_order(q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.frobenius(a) == f.pow(a, f.p()));
            CHECK((f.frobenius(a) == a) == f.in_prime_subfield(a));
            for (int b = 0; b < q; ++b) CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
        }
    }
}

TEST_CASE("subfield embeddings are injective homomorphisms") {
    auto check = [](int qb, int qe) {
        auto base = Field::of_order(qb);
        auto ext = Field::of_order(qe);
        auto e = subfield_embedding(base, ext);
        CHECK(e(0) == 0);
        CHECK(e(1) == 1);
        std::vector<int> seen(qe, 0);
        for (int a = 0; a < qb; ++a) {
            CHECK(++seen[e(a)] == 1);
            for (int b = 0; b < qb; ++b) {
                CHECK(e(base.add(a, b)) == ext.add(e(a), e(b)));
                CHECK(e(base.mul(a, b)) == ext.mul(e(a), e(b)));
            }
        }
    };
    check(2, 4);
    check(2, 8);
    check(4, 16);
    check(3, 9);
    CHECK_THROWS_AS(subfield_embedding(Field::of_order(4), Field::of_order(8)), FieldError);
    CHECK_THROWS_AS(subfield_embedding(Field::of_order(2), Field::of_order(9)), FieldError);
}
