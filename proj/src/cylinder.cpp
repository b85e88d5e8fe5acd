#include "divcyl/cylinder.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "divcyl/analysis.hpp"

namespace divcyl {

namespace {

void require_set(const PointMultiset& s) {
    if (!s.is_set()) throw GeometryError("operation defined for sets only");
}

// Points on the line through a and b other than a: b and a + t b.
std::vector<PointId> line_points_except(const Space& sp, const Vec& a, const Vec& b) {
    const Field& f = sp.field();
    std::vector<PointId> out{sp.id_of_vector(b)};
    Vec x(sp.v());
    for (int t = 1; t < f.q(); ++t) {
        for (int j = 0; j < sp.v(); ++j) x[j] = f.add(a[j], f.mul(static_cast<Elem>(t), b[j]));
        out.push_back(sp.id_of_vector(x));
    }
    return out;
}

// Every subspace of dimension d whose points all satisfy `ok`, each once.
std::vector<Subspace> subspaces_inside(const Space& sp, const std::vector<PointId>& cands, int d,
                                       const std::function<bool(PointId)>& ok) {
    std::set<std::vector<Vec>> seen;
    std::vector<Subspace> out;
    if (d == 0) {
        out.push_back(Subspace::zero(sp));
        return out;
    }
    std::function<void(const std::vector<Vec>&, size_t)> rec = [&](const std::vector<Vec>& gens, size_t from) {
        for (size_t i = from; i < cands.size(); ++i) {
            auto g2 = gens;
            g2.push_back(sp.point(cands[i]));
            Subspace u(sp, g2);
            if (u.dim() != static_cast<int>(g2.size())) continue;
            bool inside = true;
            for (auto id : u.point_ids(sp))
                if (!ok(id)) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            if (u.dim() == d) {
                if (seen.insert(u.basis()).second) out.push_back(u);
            } else {
                rec(g2, i + 1);
            }
        }
    };
    rec({}, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<CylinderWitness> witness_for_axis(const PointMultiset& s, const Subspace& axis) {
    const Space& sp = s.space();
    std::set<PointId> covered;
    CylinderWitness w{axis, {}, {}};
    for (const auto& [id, c] : s.counts()) {
        if (covered.count(id)) continue;
        const Vec p = sp.point(id);
        if (axis.contains(sp.field(), p)) return std::nullopt;
        auto part = affine_part(sp, p, axis);
        for (const auto& x : part) {
            const PointId xid = sp.id_of(x);
            if (s.count(xid) == 0) return std::nullopt;
            covered.insert(xid);
        }
        w.reps.push_back(p);
        w.parts.push_back(std::move(part));
    }
    if (static_cast<int>(w.parts.size()) != sp.q()) return std::nullopt;
    return w;
}

void check_cylinder_size(const PointMultiset& s, int r) {
    if (r < 0) throw GeometryError("negative cylinder parameter");
    require_set(s);
    if (s.size() != static_cast<long long>(ipow(s.q(), r + 1)))
        throw GeometryError("an (r+1)-cylinder has exactly q^(r+1) points");
}

}  // namespace

PointMultiset affine_geometry(const Field& f, int v) {
    Space sp(f, v);
    PointMultiset m(sp);
    const auto n = static_cast<PointId>(ipow(f.q(), v - 1));
    for (PointId i = 0; i < n; ++i) m.add_id(i);
    return m;
}

Cylinder construct_cylinder(const PointMultiset& base, int r) {
    if (r < 0) throw GeometryError("negative cylinder parameter");
    if (base.size() != base.q()) throw GeometryError("cylinder base must have exactly q points");
    const int vb = base.v();
    const int v = vb + r;
    Space sp(base.field(), v);
    std::vector<Vec> axis_rows;
    for (int i = 0; i < r; ++i) {
        Vec e(v, 0);
        e[vb + i] = 1;
        axis_rows.push_back(std::move(e));
    }
    Subspace axis(sp, axis_rows);
    PointMultiset out(sp);
    CylinderWitness w{axis, {}, {}};
    for (const auto& [id, c] : base.counts()) {
        Vec p = base.space().point(id);
        p.resize(v, 0);
        auto part = affine_part(sp, p, axis);
        for (const auto& x : part) out.add(x, c);
        for (int k = 0; k < c; ++k) {
            w.reps.push_back(p);
            w.parts.push_back(part);
        }
    }
    return {std::move(out), std::move(w)};
}

std::vector<PointId> direction_set(const PointMultiset& s) {
    require_set(s);
    const Space& sp = s.space();
    const int q = sp.q();
    std::set<PointId> out;
    std::set<std::vector<PointId>> lines_seen;
    std::vector<PointId> ids;
    for (const auto& [id, c] : s.counts()) ids.push_back(id);
    for (size_t i = 0; i < ids.size(); ++i) {
        const Vec a = sp.point(ids[i]);
        for (size_t j = i + 1; j < ids.size(); ++j) {
            auto line = line_points_except(sp, a, sp.point(ids[j]));
            line.push_back(ids[i]);
            std::sort(line.begin(), line.end());
            if (!lines_seen.insert(line).second) continue;
            int inside = 0;
            PointId missing = -1;
            for (auto id : line) {
                if (s.count(id)) ++inside;
                else missing = id;
            }
            if (inside == q) out.insert(missing);
        }
    }
    return {out.begin(), out.end()};
}

std::optional<CylinderWitness> recognize_cylinder(const PointMultiset& s, int r) {
    check_cylinder_size(s, r);
    const Space& sp = s.space();
    const auto dirs = direction_set(s);
    const std::set<PointId> dir_set(dirs.begin(), dirs.end());
    for (const auto& axis : subspaces_inside(sp, dirs, r, [&](PointId id) { return dir_set.count(id) > 0; }))
        if (auto w = witness_for_axis(s, axis)) return w;
    return std::nullopt;
}

std::optional<CylinderWitness> recognize_cylinder_exhaustive(const PointMultiset& s, int r) {
    check_cylinder_size(s, r);
    std::optional<CylinderWitness> best;
    for (const auto& axis : enumerate_subspaces(s.space(), r)) {
        if (multiplicity(s, axis) != 0) continue;
        if (best && !(axis < best->axis)) continue;
        if (auto w = witness_for_axis(s, axis)) best = std::move(w);
    }
    return best;
}

PointMultiset lift(const PointMultiset& s) {
    require_set(s);
    const int v = s.v();
    Space sp(s.field(), v + 1);
    PointMultiset out(sp);
    Vec x(v + 1);
    for (const auto& [id, c] : s.counts()) {
        s.space().point(id, x.data());
        for (int t = 0; t < sp.q(); ++t) {
            x[v] = static_cast<Elem>(t);
            out.add(x, c);
        }
    }
    return out;
}

PointMultiset subfield_embed(const PointMultiset& s, int h) {
    if (h < 2) throw GeometryError("embedding degree must be at least 2");
    const Field& base = s.field();
    const auto order = ipow(base.q(), h);
    if (order > static_cast<std::uint64_t>(Field::kMaxOrder)) throw GeometryError("extension field too large");
    Field ext = Field::of_order(static_cast<int>(order));
    auto emb = subfield_embedding(base, ext);
    Space sp(ext, s.v());
    PointMultiset out(sp);
    Vec x(s.v());
    for (const auto& [id, c] : s.counts()) {
        s.space().point(id, x.data());
        for (auto& e : x) e = emb(e);
        out.add(x, c);
    }
    return out;
}

std::optional<AffineWitness> contains_affine_subspace(const PointMultiset& s, int d) {
    require_set(s);
    const Space& sp = s.space();
    if (d < 1 || d > sp.v()) throw GeometryError("affine dimension out of range");
    for (const auto& [sid, c] : s.counts()) {
        const Vec a = sp.point(sid);
        // D_s: points f != s whose line with s lies in S apart from f itself.
        std::set<PointId> ds;
        std::set<std::vector<PointId>> lines_seen;
        for (PointId t = 0; t < sp.num_points(); ++t) {
            if (t == sid) continue;
            auto line = line_points_except(sp, a, sp.point(t));
            auto key = line;
            std::sort(key.begin(), key.end());
            if (!lines_seen.insert(key).second) continue;
            int outside = 0;
            PointId miss = -1;
            for (auto id : line)
                if (!s.count(id)) {
                    ++outside;
                    miss = id;
                }
            if (outside == 0) ds.insert(line.begin(), line.end());
            else if (outside == 1) ds.insert(miss);
        }
        std::vector<PointId> cands(ds.begin(), ds.end());
        auto fs = subspaces_inside(sp, cands, d - 1, [&](PointId id) { return ds.count(id) > 0; });
        if (!fs.empty()) {
            auto rows = fs.front().basis();
            rows.push_back(a);
            return AffineWitness{Subspace(sp, rows), fs.front()};
        }
    }
    return std::nullopt;
}

bool spanning_cylinder_exists(int v, int r, int q) {
    return r + 2 <= v && v <= r + q;
}

std::optional<Cylinder> spanning_cylinder_example(int v, int r, const Field& f) {
    const int vb = v - r;
    const int q = f.q();
    if (vb < 2 || vb > q) return std::nullopt;
    Space sp(f, vb);
    PointMultiset base(sp);
    for (int i = 0; i < vb; ++i) {
        Vec e(vb, 0);
        e[i] = 1;
        base.add(e);
    }
    // remaining points on the line through e1 and e2
    for (int t = 2; base.size() < q; ++t) {
        Vec x(vb, 0);
        x[0] = 1;
        x[1] = static_cast<Elem>(t - 1);
        base.add(x);
    }
    return construct_cylinder(base, r);
}

}  // namespace divcyl
