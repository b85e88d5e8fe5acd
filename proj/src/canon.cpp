#include "divcyl/canon.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "divcyl/analysis.hpp"

namespace divcyl {

namespace {

using Key = std::vector<std::pair<std::int64_t, int>>;

constexpr int kMaxSupport = 64;
constexpr int kMaxSpan = 6;

std::int64_t encode_vec(const Elem* y, int len, int q) {
    std::int64_t r = 0;
    for (int i = len - 1; i >= 0; --i) r = r * q + y[i];
    return r;
}

// Scales so the first nonzero entry is 1; false for the zero vector.
bool normalize_span(const Field& f, Elem* y, int len) {
    int l = 0;
    while (l < len && y[l] == 0) ++l;
    if (l == len) return false;
    if (y[l] != 1) {
        const Elem s = f.inv(y[l]);
        for (int i = l; i < len; ++i) y[i] = f.mul(s, y[i]);
    }
    return true;
}

// -1 / 0 / 1 comparing the prefix against the same-length head of `full`.
int compare_prefix(const Key& prefix, const Key& full) {
    const size_t len = std::min(prefix.size(), full.size());
    for (size_t i = 0; i < len; ++i) {
        if (prefix[i] < full[i]) return -1;
        if (full[i] < prefix[i]) return 1;
    }
    return 0;
}

std::vector<Vec> mat_mul(const Field& f, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    const size_t n = a.size(), m = b[0].size(), inner = b.size();
    std::vector<Vec> c(n, Vec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < inner; ++l) {
            if (!a[i][l]) continue;
            const Elem* row = f.mul_row(a[i][l]);
            for (size_t j = 0; j < m; ++j) c[i][j] = f.add(c[i][j], row[b[l][j]]);
        }
    return c;
}

std::vector<Vec> frob_mat(const Field& f, std::vector<Vec> a, int s) {
    if (s == 0) return a;
    for (auto& row : a)
        for (auto& e : row) e = f.frobenius(e, s);
    return a;
}

Vec mat_vec(const Field& f, const std::vector<Vec>& a, const Vec& x) {
    Vec y(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        Elem t = 0;
        for (size_t j = 0; j < x.size(); ++j) t = f.add(t, f.mul(a[i][j], x[j]));
        y[i] = t;
    }
    return y;
}

struct Prepared {
    Field f;
    int v = 0, q = 0, h = 1, k = 0;
    std::vector<Vec> pts;  // support in span coordinates, normalized
    std::vector<int> mult;
    std::vector<int> pinv;                 // point invariant class
    std::vector<std::vector<int>> linemult;  // multiplicity of the line through two support points
    std::unordered_map<std::int64_t, int> index_of;
};

Prepared prepare(const PointMultiset& m, bool stretch) {
    if (m.empty()) throw CanonError("empty multiset");
    const Subspace sp = span(m.space(), m.support());
    Prepared p{m.field(), m.v(), m.q(), m.field().h(), sp.dim(), {}, {}, {}, {}, {}};
    if (!stretch && (m.counts().size() > static_cast<size_t>(kMaxSupport) || p.k > kMaxSpan))
        throw CanonError("canonical form guard exceeded (support <= 64, span dimension <= 6); use stretch");
    const PointMultiset mm = p.k < m.v() ? restrict_to(m, sp) : m;
    for (const auto& [id, c] : mm.counts()) {
        p.pts.push_back(mm.space().point(id));
        p.mult.push_back(c);
    }
    const int n = static_cast<int>(p.pts.size());
    const Field& f = p.f;
    for (int i = 0; i < n; ++i) p.index_of[encode_vec(p.pts[i].data(), p.k, p.q)] = i;
    // Lines through each support point, keyed by the projection from it.
    p.linemult.assign(n, std::vector<int>(n, 0));
    std::vector<std::vector<int>> profile(n);
    Vec z(p.k);
    for (int a = 0; a < n; ++a) {
        const Vec& b = p.pts[a];
        int l = 0;
        while (b[l] == 0) ++l;
        std::unordered_map<std::int64_t, int> lm;
        std::vector<std::int64_t> key(n, -1);
        for (int y = 0; y < n; ++y) {
            if (y == a) continue;
            const Elem c = p.pts[y][l];
            for (int i = 0; i < p.k; ++i) z[i] = f.sub(p.pts[y][i], f.mul(c, b[i]));
            normalize_span(f, z.data(), p.k);
            key[y] = encode_vec(z.data(), p.k, p.q);
            lm[key[y]] += p.mult[y];
        }
        for (int y = 0; y < n; ++y) p.linemult[a][y] = y == a ? p.mult[a] : p.mult[a] + lm[key[y]];
        for (const auto& [kk, c] : lm) profile[a].push_back(c);
        std::sort(profile[a].begin(), profile[a].end());
        profile[a].insert(profile[a].begin(), p.mult[a]);
    }
    std::vector<std::vector<int>> distinct = profile;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    p.pinv.resize(n);
    for (int a = 0; a < n; ++a)
        p.pinv[a] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), profile[a]) - distinct.begin());
    return p;
}

struct Node {
    std::vector<Elem> res;    // n * k residuals after reducing by the chosen points
    std::vector<Elem> coord;  // n * k coordinates in terms of the chosen points
    std::vector<char> in_span;
    std::vector<int> basis;
    std::vector<Elem> d;
    Key prefix;
};

struct Leaf {
    Key key;
    Semilinear phi;
    std::vector<int> path;
};

class Search {
public:
    Search(const Prepared& p, std::optional<Key> target) : p_(p), target_(std::move(target)) {
        n_ = static_cast<int>(p.pts.size());
    }

    void run() {
        for (int s = 0; s < p_.h; ++s) {
            s_ = s;
            path_.assign(1, s);
            Node root;
            root.res.resize(static_cast<size_t>(n_) * p_.k);
            root.coord.assign(static_cast<size_t>(n_) * p_.k, 0);
            root.in_span.assign(n_, 0);
            for (int y = 0; y < n_; ++y)
                std::copy(p_.pts[y].begin(), p_.pts[y].end(), root.res.begin() + static_cast<size_t>(y) * p_.k);
            dfs(root, 1);
        }
    }

    const Key& best() const { return best_->key; }
    long long leaves_matching() const { return matching_; }

private:
    const Elem* res(const Node& nd, int y) const { return &nd.res[static_cast<size_t>(y) * p_.k]; }

    std::vector<int> candidate_cell(const Node& nd) const {
        const int j = static_cast<int>(nd.basis.size());
        std::map<std::vector<long long>, std::vector<int>> cells;
        std::unordered_map<std::int64_t, long long> resmult;
        long long span_mult = 0;
        std::vector<std::int64_t> rkey(n_, -1);
        if (j > 0) {
            Vec z(p_.k);
            for (int y = 0; y < n_; ++y) {
                if (nd.in_span[y]) {
                    span_mult += p_.mult[y];
                    continue;
                }
                std::copy(res(nd, y), res(nd, y) + p_.k, z.begin());
                normalize_span(p_.f, z.data(), p_.k);
                rkey[y] = encode_vec(z.data(), p_.k, p_.q);
                resmult[rkey[y]] += p_.mult[y];
            }
        }
        for (int y = 0; y < n_; ++y) {
            if (nd.in_span[y]) continue;
            std::vector<long long> inv{p_.pinv[y]};
            if (j > 0) {
                inv.push_back(span_mult + resmult[rkey[y]]);
                inv.push_back(p_.linemult[nd.basis.back()][y]);
                inv.push_back(p_.linemult[nd.basis.front()][y]);
            }
            cells[inv].push_back(y);
        }
        const std::vector<int>* pick = nullptr;
        for (const auto& [inv, members] : cells)
            if (!pick || members.size() < pick->size()) pick = &members;
        return *pick;
    }

    // Child state for basis point b: residuals and coordinates, independent of D.
    Node extend(const Node& nd, int b) const {
        const Field& f = p_.f;
        const int k = p_.k;
        const int j = static_cast<int>(nd.basis.size());
        Node c;
        c.res = nd.res;
        c.coord = nd.coord;
        c.in_span = nd.in_span;
        c.basis = nd.basis;
        c.basis.push_back(b);
        c.d = nd.d;
        const Elem* rb = res(nd, b);
        const Elem* cb = &nd.coord[static_cast<size_t>(b) * k];
        int piv = 0;
        while (rb[piv] == 0) ++piv;
        const Elem inv_piv = f.inv(rb[piv]);
        for (int y = 0; y < n_; ++y) {
            if (nd.in_span[y]) continue;
            Elem* ry = &c.res[static_cast<size_t>(y) * k];
            Elem* cy = &c.coord[static_cast<size_t>(y) * k];
            const Elem alpha = f.mul(ry[piv], inv_piv);
            bool zero = true;
            if (alpha) {
                const Elem* row = f.mul_row(alpha);
                for (int i = 0; i < k; ++i) {
                    ry[i] = f.sub(ry[i], row[rb[i]]);
                    zero &= ry[i] == 0;
                }
                for (int i = 0; i < j; ++i) cy[i] = f.sub(cy[i], row[cb[i]]);
            } else {
                for (int i = 0; i < k; ++i) zero &= ry[i] == 0;
            }
            cy[j] = alpha;
            (void)zero;
        }
        return c;
    }

    // Appends the images of points entering the span, using scalar dj for the new point.
    void finish_child(const Node& parent, Node& c, Elem dj) const {
        const Field& f = p_.f;
        const int k = p_.k;
        const int j = static_cast<int>(c.basis.size());
        c.d = parent.d;
        c.d.push_back(dj);
        c.prefix = parent.prefix;
        Key block;
        Vec img(k);
        for (int y = 0; y < n_; ++y) {
            if (parent.in_span[y]) continue;
            const Elem* ry = &c.res[static_cast<size_t>(y) * k];
            bool zero = true;
            for (int i = 0; i < k; ++i) zero &= ry[i] == 0;
            c.in_span[y] = zero;
            if (!zero) continue;
            const Elem* cy = &c.coord[static_cast<size_t>(y) * k];
            std::fill(img.begin(), img.end(), 0);
            for (int i = 0; i < j; ++i) img[i] = f.mul(c.d[i], f.frobenius(cy[i], s_));
            normalize_span(f, img.data(), k);
            block.emplace_back(encode_vec(img.data(), k, p_.q), p_.mult[y]);
        }
        std::sort(block.begin(), block.end());
        c.prefix.insert(c.prefix.end(), block.begin(), block.end());
    }

    Semilinear leaf_map(const Node& nd) const {
        const int k = p_.k;
        std::vector<Vec> cmat(k, Vec(k));
        for (int i = 0; i < k; ++i)
            for (int r = 0; r < k; ++r) cmat[r][i] = p_.pts[nd.basis[i]][r];
        auto a = frob_mat(p_.f, invert_matrix(p_.f, cmat), s_);
        for (int r = 0; r < k; ++r)
            for (auto& e : a[r]) e = p_.f.mul(nd.d[r], e);
        return {a, s_};
    }

    // g = phi_l^{-1} o phi_z
    Semilinear automorphism(const Semilinear& phi_l, const Semilinear& phi_z) const {
        const Field& f = p_.f;
        const int h = p_.h;
        const int sl = ((-phi_l.s) % h + h) % h;
        auto a = frob_mat(f, mat_mul(f, invert_matrix(f, phi_l.a), phi_z.a), sl);
        return {a, ((phi_z.s - phi_l.s) % h + h) % h};
    }

    Vec frame_vector(int b, Elem dj) const {
        // w = frob^{-s}(D^{-1}) b
        const Field& f = p_.f;
        const int back = (p_.h - s_) % p_.h;
        const Elem scale = f.frobenius(f.inv(dj), back);
        Vec w = p_.pts[b];
        for (auto& e : w) e = f.mul(scale, e);
        return w;
    }

    // Image of child (b, dj) of a first-path node under g, or -1.
    int map_child(const Semilinear& g, const std::vector<Vec>& frames, int b, Elem dj,
                  const std::unordered_map<long long, int>& child_index) const {
        const Field& f = p_.f;
        const int k = p_.k;
        if (g.s != 0) return -1;
        Elem mu = 1;
        if (!frames.empty()) {
            const Vec a1 = mat_vec(f, g.a, frames[0]);
            int l = 0;
            while (frames[0][l] == 0) ++l;
            mu = f.div(a1[l], frames[0][l]);
            for (const auto& w : frames) {
                const Vec aw = mat_vec(f, g.a, w);
                for (int i = 0; i < k; ++i)
                    if (aw[i] != f.mul(mu, w[i])) return -1;
            }
        }
        Vec u = mat_vec(f, g.a, frame_vector(b, dj));
        const Elem mu_inv = f.inv(mu);
        for (auto& e : u) e = f.mul(mu_inv, e);
        int l = 0;
        while (u[l] == 0) ++l;
        const Elem lambda = u[l];
        normalize_span(f, u.data(), k);
        auto it = p_.index_of.find(encode_vec(u.data(), k, p_.q));
        if (it == p_.index_of.end()) return -1;
        Elem d2 = 1;
        if (!frames.empty()) d2 = f.inv(f.frobenius(lambda, s_));
        auto ci = child_index.find(static_cast<long long>(it->second) * p_.q + d2);
        return ci == child_index.end() ? -1 : ci->second;
    }

    int dfs(const Node& nd, int depth) {
        const int k = p_.k;
        if (static_cast<int>(nd.basis.size()) == k) return at_leaf(nd);
        const auto cell = candidate_cell(nd);
        const bool first_level = nd.basis.empty();
        std::vector<std::pair<int, Elem>> children;
        for (int b : cell) {
            if (first_level) {
                children.emplace_back(b, 1);
            } else {
                for (int d = 1; d < p_.q; ++d) children.emplace_back(b, static_cast<Elem>(d));
            }
        }
        const bool on_first = !target_ && first_ && std::equal(path_.begin(), path_.end(), first_->path.begin());
        // Orbit bookkeeping for first-path nodes.
        std::vector<int> uf;
        std::vector<char> explored;
        std::unordered_map<long long, int> child_index;
        std::vector<Vec> frames;
        size_t gens_seen = 0;
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        auto prepare_orbits = [&]() {
            uf.resize(children.size());
            std::iota(uf.begin(), uf.end(), 0);
            explored.assign(children.size(), 0);
            for (size_t i = 0; i < children.size(); ++i)
                child_index[static_cast<long long>(children[i].first) * p_.q + children[i].second] = static_cast<int>(i);
            for (size_t i = 0; i < nd.basis.size(); ++i) frames.push_back(frame_vector(nd.basis[i], nd.d[i]));
        };
        bool orbits_ready = false;

        int last_b = -1;
        Node base;
        for (size_t ci = 0; ci < children.size(); ++ci) {
            const auto [b, dj] = children[ci];
            if (on_first && first_) {
                if (!orbits_ready) {
                    prepare_orbits();
                    orbits_ready = true;
                }
                for (; gens_seen < gens_.size(); ++gens_seen)
                    for (size_t x = 0; x < children.size(); ++x) {
                        const int y = map_child(gens_[gens_seen], frames, children[x].first, children[x].second,
                                                child_index);
                        if (y >= 0) uf[find(static_cast<int>(x))] = find(y);
                    }
                bool skip = false;
                for (size_t x = 0; x < ci && !skip; ++x)
                    if (explored[x] && find(static_cast<int>(x)) == find(static_cast<int>(ci))) skip = true;
                if (skip) continue;
                explored[ci] = 1;
            }
            if (b != last_b) {
                base = extend(nd, b);
                last_b = b;
            }
            Node c = base;
            finish_child(nd, c, dj);
            if (!keep(c.prefix)) continue;
            path_.push_back(b * p_.q + dj);
            const int jump = dfs(c, depth + 1);
            path_.pop_back();
            if (jump < depth) return jump;
        }
        return INT_MAX;
    }

    bool keep(const Key& prefix) const {
        if (target_) return compare_prefix(prefix, *target_) == 0;
        if (!first_) return true;
        if (compare_prefix(prefix, best_->key) <= 0) return true;
        return compare_prefix(prefix, first_->key) == 0;
    }

    int at_leaf(const Node& nd) {
        if (target_) {
            if (nd.prefix == *target_) ++matching_;
            return INT_MAX;
        }
        if (!first_) {
            first_ = Leaf{nd.prefix, leaf_map(nd), path_};
            best_ = first_;
            return INT_MAX;
        }
        if (nd.prefix == first_->key) {
            gens_.push_back(automorphism(leaf_map(nd), first_->phi));
            int a = 0;
            while (a < static_cast<int>(path_.size()) && path_[a] == first_->path[a]) ++a;
            return a;
        }
        if (nd.prefix == best_->key) {
            gens_.push_back(automorphism(leaf_map(nd), best_->phi));
            return INT_MAX;
        }
        if (nd.prefix < best_->key) best_ = Leaf{nd.prefix, leaf_map(nd), path_};
        return INT_MAX;
    }

    const Prepared& p_;
    std::optional<Key> target_;
    int n_ = 0;
    int s_ = 0;
    std::vector<int> path_;
    std::optional<Leaf> first_, best_;
    std::vector<Semilinear> gens_;
    long long matching_ = 0;
};

}  // namespace

std::vector<Vec> invert_matrix(const Field& f, const std::vector<Vec>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<Vec> m(n, Vec(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        std::copy(a[i].begin(), a[i].end(), m[i].begin());
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw CanonError("singular matrix");
        std::swap(m[c], m[piv]);
        const Elem s = f.inv(m[c][c]);
        for (auto& e : m[c]) e = f.mul(s, e);
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Elem t = m[r][c];
            for (int j = 0; j < 2 * n; ++j) m[r][j] = f.sub(m[r][j], f.mul(t, m[c][j]));
        }
    }
    std::vector<Vec> inv(n);
    for (int i = 0; i < n; ++i) inv[i].assign(m[i].begin() + n, m[i].end());
    return inv;
}

PointMultiset CanonicalForm::representative(const Field& f) const {
    if (f.q() != q) throw CanonError("field does not match the canonical form");
    Space sp(f, v);
    PointMultiset m(sp);
    Vec x(v);
    for (const auto& [rank, c] : key) {
        std::fill(x.begin(), x.end(), 0);
        std::int64_t r = rank;
        for (int i = 0; i < k; ++i) {
            x[i] = static_cast<Elem>(r % q);
            r /= q;
        }
        m.add(x, c);
    }
    return m;
}

CanonicalForm canonical_form(const PointMultiset& m, const CanonOptions& opt) {
    const Prepared p = prepare(m, opt.stretch);
    Search search(p, std::nullopt);
    search.run();
    CanonicalForm cf{p.v, p.q, p.k, search.best(), std::nullopt};
    if (opt.with_aut_order) {
        Search count(p, cf.key);
        count.run();
        cf.aut_order = count.leaves_matching();
    }
    return cf;
}

bool are_equivalent(const PointMultiset& a, const PointMultiset& b, const CanonOptions& opt) {
    if (a.v() != b.v() || !(a.field() == b.field()) || a.size() != b.size())
        throw CanonError("equivalence needs equal (v, q, n)");
    return canonical_form(a, opt) == canonical_form(b, opt);
}

long long automorphism_order(const PointMultiset& m, bool stretch) {
    CanonOptions opt;
    opt.with_aut_order = true;
    opt.stretch = stretch;
    return *canonical_form(m, opt).aut_order;
}

long long code_automorphism_order(const PointMultiset& m, bool stretch) {
    long long order = automorphism_order(m, stretch) * (m.q() - 1);
    for (const auto& [id, c] : m.counts())
        for (int i = 2; i <= c; ++i) order *= i;
    return order;
}

bool is_subfield_embedded(const PointMultiset& m) {
    const Field& f = m.field();
    if (f.h() == 1 || m.empty()) return false;
    const Subspace sp = span(m.space(), m.support());
    const PointMultiset mm = sp.dim() < m.v() ? restrict_to(m, sp) : m;
    const int k = mm.v();
    const auto pts = mm.support();
    // Coordinates relative to the first k independent support points.
    std::vector<int> basis;
    std::vector<Vec> rows;
    for (int i = 0; i < static_cast<int>(pts.size()) && static_cast<int>(basis.size()) < k; ++i) {
        auto trial = rows;
        trial.push_back(pts[i]);
        if (rank(f, trial) > static_cast<int>(rows.size())) {
            rows = std::move(trial);
            basis.push_back(i);
        }
    }
    std::vector<Vec> cmat(k, Vec(k));
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < k; ++r) cmat[r][i] = pts[basis[i]][r];
    const auto cinv = invert_matrix(f, cmat);
    std::vector<Vec> coords;
    for (const auto& x : pts) coords.push_back(mat_vec(f, cinv, x));
    std::vector<int> sub_degrees;
    for (int e = 1; e < f.h(); ++e)
        if (f.h() % e == 0) sub_degrees.push_back(e);
    std::vector<Elem> d(k, 1);
    Vec img(k);
    while (true) {
        for (int e : sub_degrees) {
            bool ok = true;
            for (const auto& c : coords) {
                for (int i = 0; i < k; ++i) img[i] = f.mul(d[i], c[i]);
                normalize_span(f, img.data(), k);
                for (int i = 0; i < k && ok; ++i) ok = f.frobenius(img[i], e) == img[i];
                if (!ok) break;
            }
            if (ok) return true;
        }
        int i = 1;
        while (i < k && d[i] == f.q() - 1) d[i++] = 1;
        if (i >= k) break;
        ++d[i];
    }
    return false;
}

bool is_affine_geometry(const PointMultiset& m) {
    const int v = m.v();
    if (!m.is_set() || m.size() != static_cast<long long>(ipow(m.q(), v - 1))) return false;
    if (!is_spanning(m)) return false;
    const auto hm = hyperplane_multiplicities(m);
    return std::find(hm.begin(), hm.end(), 0) != hm.end();
}

PointMultiset apply_semilinear(const PointMultiset& m, const Semilinear& g) {
    const Field& f = m.field();
    PointMultiset out(m.space());
    for (const auto& [id, c] : m.counts()) {
        Vec x = m.space().point(id);
        for (auto& e : x) e = f.frobenius(e, g.s);
        out.add(mat_vec(f, g.a, x), c);
    }
    return out;
}

}  // namespace divcyl
