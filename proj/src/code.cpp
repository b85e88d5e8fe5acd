#include "divcyl/code.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace divcyl {

GeneratorMatrix::GeneratorMatrix(Field f, std::vector<Vec> r) : field(std::move(f)), rows(std::move(r)) {
    k = static_cast<int>(rows.size());
    n = k ? static_cast<int>(rows[0].size()) : 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw CodeError("ragged generator matrix");
        for (auto e : row)
            if (e >= field.q()) throw CodeError("matrix entry outside the field");
    }
}

Vec GeneratorMatrix::column(int j) const {
    Vec c(k);
    for (int i = 0; i < k; ++i) c[i] = rows[i][j];
    return c;
}

long long WeightDistribution::total() const {
    long long t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

GeneratorMatrix code_from_points(const PointMultiset& m) {
    if (m.empty()) throw CodeError("empty multiset has no code");
    const int v = m.v();
    std::vector<Vec> rows(v);
    for (const auto& [id, c] : m.counts()) {
        const Vec p = m.space().point(id);
        for (int t = 0; t < c; ++t)
            for (int i = 0; i < v; ++i) rows[i].push_back(p[i]);
    }
    if (rank(m.field(), rows) < v) rows = rref(m.field(), rows);
    return GeneratorMatrix(m.field(), std::move(rows));
}

PointMultiset points_from_code(const GeneratorMatrix& g, int* zero_columns) {
    if (g.k == 0) throw CodeError("code of dimension zero");
    Space sp(g.field, g.k);
    PointMultiset m(sp);
    int zeros = 0;
    for (int j = 0; j < g.n; ++j) {
        Vec c = g.column(j);
        if (!sp.normalize_inplace(c)) {
            ++zeros;
            continue;
        }
        m.add_id(sp.id_of(c));
    }
    if (zero_columns) *zero_columns = zeros;
    return m;
}

WeightDistribution weight_distribution(const GeneratorMatrix& g) {
    const Field& f = g.field;
    if (ipow(f.q(), g.k) > (1ULL << 24)) throw CodeError("code too large for a full weight sweep");
    WeightDistribution wd;
    std::vector<Vec> partial(g.k + 1, Vec(g.n, 0));
    std::function<void(int)> rec = [&](int i) {
        if (i == g.k) {
            int w = 0;
            for (auto e : partial[i]) w += e != 0;
            ++wd.counts[w];
            return;
        }
        for (int a = 0; a < f.q(); ++a) {
            const Elem* row = f.mul_row(static_cast<Elem>(a));
            for (int j = 0; j < g.n; ++j) partial[i + 1][j] = f.add(partial[i][j], row[g.rows[i][j]]);
            rec(i + 1);
        }
    };
    rec(0);
    return wd;
}

std::string format_weights(const WeightDistribution& w) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [wt, c] : w.counts) {
        if (!first) os << '+';
        first = false;
        os << c;
        if (wt > 0) os << "z^" << wt;
    }
    return os.str();
}

bool is_projective(const GeneratorMatrix& g) {
    if (g.k == 0) return g.n == 0;
    Space sp(g.field, g.k);
    std::set<PointId> seen;
    for (int j = 0; j < g.n; ++j) {
        Vec c = g.column(j);
        if (!sp.normalize_inplace(c)) return false;
        if (!seen.insert(sp.id_of(c)).second) return false;
    }
    return true;
}

GeneratorMatrix reinterpret_prime_subfield(const GeneratorMatrix& g) {
    const int p = g.field.p();
    for (const auto& row : g.rows)
        for (auto e : row)
            if (e >= p) throw CodeError("entry outside the prime subfield");
    return GeneratorMatrix(Field::make(p, 1), g.rows);
}

Vec encode(const GeneratorMatrix& g, const Vec& msg) {
    if (static_cast<int>(msg.size()) != g.k) throw CodeError("message length differs from dimension");
    const Field& f = g.field;
    Vec c(g.n, 0);
    for (int i = 0; i < g.k; ++i) {
        if (!msg[i]) continue;
        for (int j = 0; j < g.n; ++j) c[j] = f.add(c[j], f.mul(msg[i], g.rows[i][j]));
    }
    return c;
}

bool in_row_space(const GeneratorMatrix& g, const Vec& c) {
    if (static_cast<int>(c.size()) != g.n) return false;
    auto rows = g.rows;
    const int r = rank(g.field, rows);
    rows.push_back(c);
    return rank(g.field, rows) == r;
}

GeneratorMatrix residual_code(const GeneratorMatrix& g, const Vec& c) {
    if (std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; })) throw CodeError("zero codeword");
    if (!in_row_space(g, c)) throw CodeError("word is not in the code");
    std::vector<int> zero_pos;
    for (int j = 0; j < g.n; ++j)
        if (c[j] == 0) zero_pos.push_back(j);
    std::vector<Vec> rows;
    for (const auto& row : g.rows) {
        Vec r;
        for (int j : zero_pos) r.push_back(row[j]);
        rows.push_back(std::move(r));
    }
    if (zero_pos.empty()) return GeneratorMatrix(g.field, {});
    return GeneratorMatrix(g.field, rref(g.field, rows));
}

}  // namespace divcyl
