#include "doctest.h"

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "divcyl/canon.hpp"
#include "divcyl/code.hpp"
#include "fixtures.hpp"

using namespace divcyl;

namespace {

using Perm = std::vector<PointId>;

Perm as_perm(const Space& s, const std::vector<Vec>& a, int sg) {
    const Field& f = s.field();
    const int v = s.v();
    Perm perm(s.num_points());
    Vec y(v);
    for (PointId i = 0; i < s.num_points(); ++i) {
        Vec x = s.point(i);
        for (auto& e : x) e = f.frobenius(e, sg);
        std::fill(y.begin(), y.end(), 0);
        for (int r = 0; r < v; ++r)
            for (int c = 0; c < v; ++c) y[r] = f.add(y[r], f.mul(a[r][c], x[c]));
        perm[i] = s.id_of_vector(y);
    }
    return perm;
}

// Visits every semilinear map of GF(q)^v (all invertible matrices times field automorphisms).
template <class Fn>
void for_each_semilinear(const Space& s, Fn&& fn) {
    const Field& f = s.field();
    const int v = s.v();
    const int q = f.q();
    const auto total = ipow(q, v * v);
    std::vector<Vec> a(v, Vec(v));
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t r = t;
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) {
                a[i][j] = static_cast<Elem>(r % q);
                r /= q;
            }
        if (rank(f, a) < v) continue;
        for (int sg = 0; sg < f.h(); ++sg) fn(a, sg);
    }
}

// Stabilizer order in PΓL by brute force: semilinear maps fixing the multiset, divided by the q-1 scalars.
long long brute_stabilizer(const PointMultiset& m) {
    const Space& s = m.space();
    const Field& f = s.field();
    long long c = 0;
    std::vector<std::pair<Vec, int>> pts;
    for (const auto& [id, mult] : m.counts()) pts.emplace_back(s.point(id), mult);
    for_each_semilinear(s, [&](const std::vector<Vec>& a, int sg) {
        for (const auto& [x0, mult] : pts) {
            Vec x = x0;
            for (auto& e : x) e = f.frobenius(e, sg);
            Vec y(s.v(), 0);
            for (int r = 0; r < s.v(); ++r)
                for (int cc = 0; cc < s.v(); ++cc) y[r] = f.add(y[r], f.mul(a[r][cc], x[cc]));
            if (m.count(y) != mult) return;
        }
        ++c;
    });
    return c / (f.q() - 1);
}

// Orbit partition of all n-subsets under PΓL(v, q), using random generators
// whose generated group is checked to have the full order.
std::vector<int> brute_orbits(const Space& s, const std::vector<std::vector<PointId>>& subsets,
                              const std::map<std::vector<PointId>, int>& index, std::mt19937& rng) {
    const Field& f = s.field();
    long long full = 0;
    std::vector<Perm> gens;
    for_each_semilinear(s, [&](const std::vector<Vec>& a, int sg) {
        ++full;
        if (rng() % 5000 == 0 && gens.size() < 6) gens.push_back(as_perm(s, a, sg));
    });
    full /= f.q() - 1;
    // Closure of the generated group.
    std::set<Perm> seen;
    Perm id(s.num_points());
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> stack{id};
    seen.insert(id);
    while (!stack.empty()) {
        Perm p = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            Perm r(p.size());
            for (size_t i = 0; i < p.size(); ++i) r[i] = g[p[i]];
            if (seen.insert(r).second) stack.push_back(std::move(r));
        }
    }
    REQUIRE(static_cast<long long>(seen.size()) == full);
    std::vector<int> uf(subsets.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (size_t i = 0; i < subsets.size(); ++i)
        for (const auto& g : gens) {
            std::vector<PointId> img;
            for (auto p : subsets[i]) img.push_back(g[p]);
            std::sort(img.begin(), img.end());
            uf[find(static_cast<int>(i))] = find(index.at(img));
        }
    std::vector<int> out(subsets.size());
    for (size_t i = 0; i < subsets.size(); ++i) out[i] = find(static_cast<int>(i));
    return out;
}

Semilinear random_semilinear(const Field& f, int v, std::mt19937& rng) {
    Semilinear g;
    g.a.assign(v, Vec(v));
    do {
        for (auto& row : g.a)
            for (auto& e : row) e = static_cast<Elem>(rng() % f.q());
    } while (rank(f, g.a) < v);
    g.s = static_cast<int>(rng() % f.h());
    return g;
}

}  // namespace

TEST_CASE("automorphism orders against brute force in PG(2,2)") {
    Space s(Field::of_order(2), 3);
    PointMultiset full(s, enumerate_points(s));
    CHECK(brute_stabilizer(full) == 168);
    CHECK(automorphism_order(full) == 168);
    PointMultiset frame(s, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}});
    CHECK(brute_stabilizer(frame) == 6);
    CHECK(automorphism_order(frame) == 6);
}

TEST_CASE("canonical forms separate exactly the brute-force orbits") {
    for (auto [q, n] : {std::pair{3, 4}, {4, 4}, {4, 5}, {3, 6}}) {
        Space s(Field::of_order(q), 3);
        const int np = static_cast<int>(s.num_points());
        std::map<std::vector<PointId>, int> index;
        std::vector<std::vector<PointId>> subsets;
        std::vector<PointId> cur;
        std::function<void(int)> gen = [&](int from) {
            if (static_cast<int>(cur.size()) == n) {
                index[cur] = static_cast<int>(subsets.size());
                subsets.push_back(cur);
                return;
            }
            for (int i = from; i < np; ++i) {
                cur.push_back(i);
                gen(i + 1);
                cur.pop_back();
            }
        };
        gen(0);
        std::mt19937 rng(q * 100 + n);
        const auto orbit = brute_orbits(s, subsets, index, rng);
        std::map<int, CanonicalForm> canon_of_orbit;
        std::set<std::vector<std::pair<std::int64_t, int>>> keys;
        bool consistent = true;
        for (size_t i = 0; i < subsets.size(); ++i) {
            PointMultiset m(s);
            for (auto p : subsets[i]) m.add_id(p);
            auto cf = canonical_form(m);
            auto [it, fresh] = canon_of_orbit.emplace(orbit[i], cf);
            if (!fresh && !(it->second == cf)) consistent = false;
            keys.insert(cf.key);
        }
        CHECK(consistent);
        CHECK(keys.size() == canon_of_orbit.size());
    }
}

TEST_CASE("canonical form is constant under random scrambles") {
    std::mt19937 rng(17);
    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    auto c10 = points_from_code(fixture_matrix("c_10_3_q5.mat"));
    for (const auto* m : {&ce, &c10}) {
        auto ref = canonical_form(*m);
        CHECK(ref.representative(m->field()).size() == m->size());
        CHECK(are_equivalent(ref.representative(m->field()), *m));
        for (int t = 0; t < 25; ++t) {
            auto g = random_semilinear(m->field(), m->v(), rng);
            CHECK(canonical_form(apply_semilinear(*m, g)) == ref);
        }
    }
}

TEST_CASE("multisets and non-spanning inputs") {
    Space s(Field::of_order(3), 4);
    PointMultiset a(s), b(s);
    a.add(Vec{1, 0, 0, 0}, 2);
    a.add(Vec{0, 1, 0, 0});
    b.add(Vec{0, 0, 1, 0});
    b.add(Vec{0, 0, 0, 1}, 2);
    CHECK(are_equivalent(a, b));
    PointMultiset c(s);
    c.add(Vec{0, 0, 1, 0}, 2);
    c.add(Vec{0, 0, 0, 1});
    c.add(Vec{1, 0, 0, 0});
    CHECK_THROWS_AS(are_equivalent(a, c), CanonError);
    CHECK(canonical_form(a).k == 2);
}

TEST_CASE("aut order of the 10-point plane set") {
    auto c10 = points_from_code(fixture_matrix("c_10_3_q5.mat"));
    CHECK(automorphism_order(c10) == 120);
    CHECK(brute_stabilizer(c10) == 120);
    CHECK(code_automorphism_order(c10) == 480);
}

TEST_CASE("subfield and affine flags") {
    auto ce = points_from_code(fixture_matrix("ce_16_5_q4.mat"));
    CHECK(is_subfield_embedded(ce));
    CHECK_FALSE(is_affine_geometry(ce));
    Space s(Field::of_order(4), 3);
    PointMultiset m(s, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}, Vec{1, 2, 3}});
    CHECK(is_subfield_embedded(m));
    PointMultiset m2(s, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}, Vec{1, 1, 1}, Vec{1, 2, 3}});
    CHECK_FALSE(is_subfield_embedded(m2));
}
