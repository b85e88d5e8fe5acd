#include "divcyl/analysis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace divcyl {

namespace {

constexpr std::uint64_t kMaxSubspaces = 5'000'000;

}  // namespace

long long Spectrum::total() const {
    long long t = 0;
    for (const auto& [i, c] : a) t += c;
    return t;
}

long long multiplicity(const PointMultiset& m, const Subspace& k) {
    if (k.v() != m.v()) throw GeometryError("subspace and multiset live in different spaces");
    if (k.dim() == 0) return 0;
    if (k.dim() == m.v()) return m.size();
    const Space& s = m.space();
    long long total = 0;
    Vec x(m.v());
    for (const auto& [id, c] : m.counts()) {
        s.point(id, x.data());
        if (k.contains(s.field(), x)) total += c;
    }
    return total;
}

std::vector<long long> hyperplane_multiplicities(const PointMultiset& m) {
    const Space& s = m.space();
    const Field& f = s.field();
    const int v = s.v();
    std::vector<long long> out(s.num_points(), 0);
    std::vector<Vec> pts;
    std::vector<int> mult;
    for (const auto& [id, c] : m.counts()) {
        pts.push_back(s.point(id));
        mult.push_back(c);
    }
    Vec h(v);
    for (PointId hid = 0; hid < s.num_points(); ++hid) {
        s.point(hid, h.data());
        long long t = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            Elem d = 0;
            for (int j = 0; j < v; ++j) d = f.add(d, f.mul(h[j], pts[i][j]));
            if (d == 0) t += mult[i];
        }
        out[hid] = t;
    }
    return out;
}

Spectrum spectrum(const PointMultiset& m, int codim) {
    const Space& s = m.space();
    if (codim < 1 || codim > s.v()) throw GeometryError("codimension out of range");
    Spectrum sp{codim, m.size(), s.v(), s.q(), {}};
    if (codim == 1) {
        for (auto c : hyperplane_multiplicities(m)) ++sp.a[c];
        return sp;
    }
    if (gaussian_binomial(s.v(), s.v() - codim, s.q()) > kMaxSubspaces)
        throw GeometryError("too many subspaces for a spectrum by enumeration");
    for (const auto& k : enumerate_subspaces(s, s.v() - codim)) ++sp.a[multiplicity(m, k)];
    return sp;
}

DivisibilityResult is_divisible(const PointMultiset& m, long long delta) {
    if (delta < 1) throw GeometryError("divisor must be positive");
    const auto hm = hyperplane_multiplicities(m);
    const long long n = m.size();
    for (PointId h = 0; h < static_cast<PointId>(hm.size()); ++h)
        if ((n - hm[h]) % delta != 0) return {false, Hyperplane{m.space().point(h)}};
    return {};
}

int divisibility_exponent(const PointMultiset& m) {
    const auto hm = hyperplane_multiplicities(m);
    const long long n = m.size();
    const long long q = m.q();
    int r = 0;
    long long d = q;
    while (d <= std::max(n, 1LL)) {
        bool ok = true;
        for (auto c : hm)
            if ((n - c) % d != 0) {
                ok = false;
                break;
            }
        if (!ok) break;
        ++r;
        d *= q;
    }
    return r;
}

bool is_spanning(const PointMultiset& m) {
    return rank(m.field(), m.support()) == m.v();
}

bool is_spanning_by_spectrum(const PointMultiset& m) {
    if (m.empty()) return false;
    if (m.v() == 1) return true;
    return spectrum(m).at(m.size()) == 0;
}

std::vector<long long> pencil_distribution(const PointMultiset& m, const Subspace& k) {
    std::vector<long long> out;
    for (const auto& h : hyperplanes_through(m.space(), k)) out.push_back(multiplicity(m, h.as_subspace(m.space())));
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::vector<std::vector<int>> count_pencil_distributions(int q, int n, int m, const std::set<int>& allowed,
                                                         const std::vector<int>& required) {
    std::vector<std::vector<int>> out;
    const int slots = q + 1;
    const long long target = n + static_cast<long long>(q) * m;
    std::vector<int> vals(allowed.rbegin(), allowed.rend());
    std::vector<int> need_count(vals.size(), 0);
    for (int r : required) {
        auto it = std::find(vals.begin(), vals.end(), r);
        if (it == vals.end()) return out;
        ++need_count[it - vals.begin()];
    }
    std::vector<int> cur;
    // Choose the count of each value in descending order of value.
    std::function<void(size_t, int, long long)> rec = [&](size_t idx, int left, long long sum) {
        if (idx == vals.size()) {
            if (left == 0 && sum == target) out.push_back(cur);
            return;
        }
        for (int c = left; c >= need_count[idx]; --c) {
            const long long s2 = sum + static_cast<long long>(c) * vals[idx];
            if (s2 > target) continue;
            for (int i = 0; i < c; ++i) cur.push_back(vals[idx]);
            rec(idx + 1, left - c, s2);
            cur.resize(cur.size() - c);
        }
    };
    rec(0, slots, 0);
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::string format_distribution(const std::vector<int>& d) {
    std::ostringstream os;
    for (size_t i = 0; i < d.size();) {
        size_t j = i;
        while (j < d.size() && d[j] == d[i]) ++j;
        if (i) os << ' ';
        os << d[i] << '^' << (j - i);
        i = j;
    }
    return os.str();
}

bool is_blocking_set(const PointMultiset& s) {
    if (s.v() != 3) throw GeometryError("blocking sets are defined in the plane");
    const auto hm = hyperplane_multiplicities(s);
    return std::all_of(hm.begin(), hm.end(), [](long long c) { return c >= 1; });
}

PointMultiset symmetric_difference_with_line(const PointMultiset& s, const Subspace& line) {
    if (s.v() != 3) throw GeometryError("expected a planar point set");
    if (line.dim() != 2) throw GeometryError("expected a line");
    if (!s.is_set()) throw GeometryError("symmetric difference needs a set");
    std::set<PointId> ids;
    for (const auto& [id, c] : s.counts()) ids.insert(id);
    for (auto id : line.point_ids(s.space()))
        if (!ids.erase(id)) ids.insert(id);
    PointMultiset out(s.space());
    for (auto id : ids) out.add_id(id);
    return out;
}

}  // namespace divcyl
