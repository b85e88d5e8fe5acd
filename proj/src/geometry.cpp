#include "divcyl/geometry.hpp"

#include <algorithm>

namespace divcyl {

std::uint64_t ipow(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::uint64_t bracket_count(int x, int q) {
    if (x <= 0) return 0;
    return (ipow(q, x) - 1) / static_cast<std::uint64_t>(q - 1);
}

std::uint64_t gaussian_binomial(int v, int k, int q) {
    if (k < 0 || k > v) return 0;
    // [n,k] = [n-1,k-1] + q^k [n-1,k]
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;
    for (int n = 1; n <= v; ++n)
        for (int j = std::min(n, k); j >= 1; --j) row[j] = row[j - 1] + ipow(q, j) * row[j];
    return row[k];
}

Space::Space(Field field, int v) : field_(std::move(field)), v_(v) {
    if (v < 1) throw GeometryError("ambient dimension must be positive");
    offset_.resize(v + 1, 0);
    for (int l = 0; l < v; ++l) offset_[l + 1] = offset_[l] + static_cast<PointId>(ipow(q(), v - 1 - l));
    num_points_ = offset_[v];
}

PointId Space::id_of(std::span<const Elem> x) const {
    int l = 0;
    while (l < v_ && x[l] == 0) ++l;
    if (l == v_) throw GeometryError("zero vector is not a point");
    PointId rest = 0;
    for (int j = l + 1; j < v_; ++j) rest = rest * q() + x[j];
    return offset_[l] + rest;
}

void Space::point(PointId id, Elem* out) const {
    if (id < 0 || id >= num_points_) throw GeometryError("point id out of range");
    int l = 0;
    while (offset_[l + 1] <= id) ++l;
    PointId rest = id - offset_[l];
    for (int j = 0; j < l; ++j) out[j] = 0;
    out[l] = 1;
    for (int j = v_ - 1; j > l; --j) {
        out[j] = static_cast<Elem>(rest % q());
        rest /= q();
    }
}

Vec Space::point(PointId id) const {
    Vec x(v_);
    point(id, x.data());
    return x;
}

bool Space::normalize_inplace(std::span<Elem> x) const {
    int l = 0;
    while (l < v_ && x[l] == 0) ++l;
    if (l == v_) return false;
    if (x[l] != 1) {
        const Elem s = field_.inv(x[l]);
        for (int j = l; j < v_; ++j) x[j] = field_.mul(s, x[j]);
    }
    return true;
}

Vec Space::normalize(std::span<const Elem> x) const {
    Vec y(x.begin(), x.end());
    if (static_cast<int>(y.size()) != v_) throw GeometryError("vector length does not match ambient dimension");
    if (!normalize_inplace(y)) throw GeometryError("cannot normalize the zero vector");
    return y;
}

PointId Space::id_of_vector(std::span<const Elem> x) const {
    return id_of(normalize(x));
}

Elem Space::dot(std::span<const Elem> a, std::span<const Elem> b) const {
    Elem s = 0;
    for (int j = 0; j < v_; ++j) s = field_.add(s, field_.mul(a[j], b[j]));
    return s;
}

std::vector<Vec> enumerate_points(const Space& space) {
    std::vector<Vec> pts;
    pts.reserve(space.num_points());
    for (PointId i = 0; i < space.num_points(); ++i) pts.push_back(space.point(i));
    return pts;
}

std::vector<Vec> rref(const Field& f, std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    const int cols = static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        const Elem s = f.inv(rows[r][c]);
        for (auto& e : rows[r]) e = f.mul(s, e);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem m = rows[i][c];
            for (int j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

int rank(const Field& f, std::vector<Vec> rows) {
    return static_cast<int>(rref(f, std::move(rows)).size());
}

std::vector<Vec> null_space(const Field& f, const std::vector<Vec>& rows, int v) {
    auto r = rref(f, rows);
    std::vector<int> pivot_of_col(v, -1);
    for (int i = 0; i < static_cast<int>(r.size()); ++i) {
        int c = 0;
        while (r[i][c] == 0) ++c;
        pivot_of_col[c] = i;
    }
    std::vector<Vec> basis;
    for (int c = 0; c < v; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec x(v, 0);
        x[c] = 1;
        for (int pc = 0; pc < v; ++pc)
            if (pivot_of_col[pc] >= 0) x[pc] = f.neg(r[pivot_of_col[pc]][c]);
        basis.push_back(std::move(x));
    }
    return basis;
}

Subspace::Subspace(const Space& space, std::vector<Vec> rows) : v_(space.v()) {
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != v_) throw GeometryError("basis vector has wrong length");
    basis_ = rref(space.field(), std::move(rows));
    for (const auto& r : basis_) {
        int c = 0;
        while (r[c] == 0) ++c;
        pivots_.push_back(c);
    }
}

Subspace Subspace::full(const Space& space) {
    std::vector<Vec> rows;
    for (int i = 0; i < space.v(); ++i) {
        Vec e(space.v(), 0);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return Subspace(space, std::move(rows));
}

bool Subspace::contains(const Field& f, std::span<const Elem> x) const {
    Vec y(x.begin(), x.end());
    for (size_t i = 0; i < basis_.size(); ++i) {
        const Elem m = y[pivots_[i]];
        if (m == 0) continue;
        for (int j = 0; j < v_; ++j) y[j] = f.sub(y[j], f.mul(m, basis_[i][j]));
    }
    return std::all_of(y.begin(), y.end(), [](Elem e) { return e == 0; });
}

Vec Subspace::coordinates(std::span<const Elem> x) const {
    Vec c(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) c[i] = x[pivots_[i]];
    return c;
}

std::vector<PointId> Subspace::point_ids(const Space& space) const {
    const Field& f = space.field();
    const int d = dim();
    std::vector<PointId> ids;
    if (d == 0) return ids;
    const int q = f.q();
    // Normalized coefficient vectors: leading coefficient 1.
    Vec c(d, 0), x(v_);
    for (int lead = 0; lead < d; ++lead) {
        const auto tail = static_cast<long long>(ipow(q, d - 1 - lead));
        for (long long t = 0; t < tail; ++t) {
            std::fill(c.begin(), c.end(), 0);
            c[lead] = 1;
            long long rest = t;
            for (int j = d - 1; j > lead; --j) {
                c[j] = static_cast<Elem>(rest % q);
                rest /= q;
            }
            std::fill(x.begin(), x.end(), 0);
            for (int i = 0; i < d; ++i) {
                if (c[i] == 0) continue;
                for (int j = 0; j < v_; ++j) x[j] = f.add(x[j], f.mul(c[i], basis_[i][j]));
            }
            ids.push_back(space.id_of_vector(x));
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

Subspace Hyperplane::as_subspace(const Space& s) const {
    return Subspace(s, null_space(s.field(), {normal}, s.v()));
}

PointMultiset::PointMultiset(Space space, const std::vector<Vec>& points) : space_(std::move(space)) {
    for (const auto& p : points) add(p);
}

void PointMultiset::add(std::span<const Elem> x, int mult) {
    add_id(space_.id_of_vector(x), mult);
}

void PointMultiset::add_id(PointId id, int mult) {
    if (id < 0 || id >= space_.num_points()) throw GeometryError("point id out of range");
    if (mult < 0) throw GeometryError("negative multiplicity");
    if (mult == 0) return;
    counts_[id] += mult;
    size_ += mult;
}

int PointMultiset::count(PointId id) const {
    auto it = counts_.find(id);
    return it == counts_.end() ? 0 : it->second;
}

bool PointMultiset::is_set() const {
    return std::all_of(counts_.begin(), counts_.end(), [](const auto& kv) { return kv.second <= 1; });
}

int PointMultiset::max_multiplicity() const {
    int m = 0;
    for (const auto& [id, c] : counts_) m = std::max(m, c);
    return m;
}

std::vector<Vec> PointMultiset::support() const {
    std::vector<Vec> pts;
    pts.reserve(counts_.size());
    for (const auto& [id, c] : counts_) pts.push_back(space_.point(id));
    return pts;
}

Subspace span(const Space& space, const std::vector<Vec>& points) {
    return Subspace(space, points);
}

std::vector<Subspace> enumerate_subspaces(const Space& space, int d) {
    const int v = space.v();
    const int q = space.q();
    if (d < 0 || d > v) throw GeometryError("subspace dimension out of range");
    std::vector<Subspace> out;
    if (d == 0) {
        out.push_back(Subspace::zero(space));
        return out;
    }
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;
    while (true) {
        // free slots: (row i, col c) with c > piv[i], c not a pivot column
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < d; ++i)
            for (int c = piv[i] + 1; c < v; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) slots.emplace_back(i, c);
        const auto total = ipow(q, static_cast<int>(slots.size()));
        for (std::uint64_t t = 0; t < total; ++t) {
            std::vector<Vec> rows(d, Vec(v, 0));
            for (int i = 0; i < d; ++i) rows[i][piv[i]] = 1;
            std::uint64_t rest = t;
            for (int s = static_cast<int>(slots.size()) - 1; s >= 0; --s) {
                rows[slots[s].first][slots[s].second] = static_cast<Elem>(rest % q);
                rest /= q;
            }
            out.emplace_back(space, std::move(rows));
        }
        int i = d - 1;
        while (i >= 0 && piv[i] == v - d + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

std::vector<Hyperplane> hyperplanes_through(const Space& space, const Subspace& k) {
    if (k.dim() != space.v() - 2) throw GeometryError("pencil axis must have dimension v-2");
    const Field& f = space.field();
    auto ann = null_space(f, k.basis(), space.v());  // two dual vectors
    std::vector<Hyperplane> out;
    // normals: ann[0] + t ann[1] for t in GF(q), and ann[1]
    for (int t = 0; t < f.q(); ++t) {
        Vec n(space.v());
        for (int j = 0; j < space.v(); ++j) n[j] = f.add(ann[0][j], f.mul(static_cast<Elem>(t), ann[1][j]));
        out.push_back({space.normalize(n)});
    }
    out.push_back({space.normalize(ann[1])});
    std::sort(out.begin(), out.end(),
              [&](const Hyperplane& a, const Hyperplane& b) { return space.id_of(a.normal) < space.id_of(b.normal); });
    return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(const Space& space) {
    std::vector<Hyperplane> out;
    out.reserve(space.num_points());
    for (PointId i = 0; i < space.num_points(); ++i) out.push_back({space.point(i)});
    return out;
}

std::vector<Vec> affine_part(const Space& space, std::span<const Elem> p, const Subspace& f) {
    const Field& fld = space.field();
    if (f.contains(fld, p)) throw GeometryError("point lies in the subspace");
    const Vec pn = space.normalize(p);
    std::vector<PointId> ids;
    const int d = f.dim();
    const int q = fld.q();
    const auto total = ipow(q, d);
    Vec x(space.v());
    for (std::uint64_t t = 0; t < total; ++t) {
        x = pn;
        std::uint64_t rest = t;
        for (int i = 0; i < d; ++i) {
            const Elem c = static_cast<Elem>(rest % q);
            rest /= q;
            if (c == 0) continue;
            for (int j = 0; j < space.v(); ++j) x[j] = fld.add(x[j], fld.mul(c, f.basis()[i][j]));
        }
        ids.push_back(space.id_of_vector(x));
    }
    std::sort(ids.begin(), ids.end());
    std::vector<Vec> out;
    for (auto id : ids) out.push_back(space.point(id));
    return out;
}

PointMultiset quotient(const PointMultiset& m, const Subspace& b) {
    const Space& s = m.space();
    const Field& f = s.field();
    const int v = s.v();
    if (b.dim() == 0) return m;
    if (b.dim() >= v) throw GeometryError("quotient by the full space");
    std::vector<int> comp;
    for (int c = 0; c < v; ++c)
        if (std::find(b.pivots().begin(), b.pivots().end(), c) == b.pivots().end()) comp.push_back(c);
    Space target(f, v - b.dim());
    PointMultiset out(target);
    Vec y(comp.size());
    for (const auto& [id, cnt] : m.counts()) {
        const Vec x = s.point(id);
        for (size_t j = 0; j < comp.size(); ++j) {
            Elem val = x[comp[j]];
            for (int i = 0; i < b.dim(); ++i)
                val = f.sub(val, f.mul(x[b.pivots()[i]], b.basis()[i][comp[j]]));
            y[j] = val;
        }
        if (!target.normalize_inplace(y)) throw GeometryError("a point of the multiset lies in the quotient subspace");
        out.add_id(target.id_of(y), cnt);
    }
    return out;
}

PointMultiset restrict_to(const PointMultiset& m, const Subspace& x) {
    const Space& s = m.space();
    if (x.dim() == 0) throw GeometryError("cannot restrict to the zero subspace");
    Space target(s.field(), x.dim());
    PointMultiset out(target);
    for (const auto& [id, cnt] : m.counts()) {
        const Vec p = s.point(id);
        if (!x.contains(s.field(), p)) continue;
        out.add(x.coordinates(p), cnt);
    }
    return out;
}

}  // namespace divcyl
