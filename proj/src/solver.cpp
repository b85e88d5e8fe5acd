#include "divcyl/solver.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>

#include "divcyl/geometry.hpp"

namespace divcyl {

namespace {

constexpr double kMaxBox = 5e7;

Rational choose2(long long x) { return Rational(BigInt(x) * (x - 1) / 2); }

// Row reduction of [rows | rhs]. Returns pivot columns; false if inconsistent.
bool reduce(std::vector<std::vector<Rational>>& rows, std::vector<Rational>& rhs, std::vector<int>& pivots,
            const std::vector<int>& column_order) {
    pivots.clear();
    size_t r = 0;
    for (int c : column_order) {
        if (r == rows.size()) break;
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        std::swap(rhs[r], rhs[piv]);
        const Rational s = rows[r][c];
        for (auto& e : rows[r]) e /= s;
        rhs[r] /= s;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational t = rows[i][c];
            for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= t * rows[r][j];
            rhs[i] -= t * rhs[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows.size(); ++i)
        if (rhs[i] != 0) return false;
    rows.resize(r);
    rhs.resize(r);
    return true;
}

std::vector<int> natural_order(size_t n) {
    std::vector<int> o(n);
    for (size_t i = 0; i < n; ++i) o[i] = static_cast<int>(i);
    return o;
}

int var_pos(const ExactSystem& sys, long long index) {
    auto it = std::find(sys.vars.begin(), sys.vars.end(), index);
    return it == sys.vars.end() ? -1 : static_cast<int>(it - sys.vars.begin());
}

bool holds(Relation rel, const Rational& x, const Rational& c) {
    switch (rel) {
    case Relation::Eq: return x == c;
    case Relation::Le: return x <= c;
    case Relation::Ge: return x >= c;
    }
    return false;
}

// Constraints on variables outside the system concern a zero variable.
bool absent_ok(const Constraint& c) { return holds(c.rel, Rational(0), c.value); }

BigInt floor_r(const Rational& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

BigInt ceil_r(const Rational& r) { return -floor_r(-r); }

}  // namespace

std::vector<Constraint> parse_constraints(const std::string& text) {
    std::vector<Constraint> out;
    static const std::regex re(R"(\s*a(\d+)\s*(<=|>=|=)\s*(-?\d+(?:/\d+)?)\s*)");
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::smatch m;
        if (!std::regex_match(tok, m, re)) throw SolverError("bad constraint '" + tok + "'");
        Constraint c;
        c.index = std::stoll(m[1]);
        c.rel = m[2] == "=" ? Relation::Eq : m[2] == "<=" ? Relation::Le : Relation::Ge;
        c.value = Rational(std::string(m[3]));
        out.push_back(c);
    }
    return out;
}

std::string format_constraint(const Constraint& c) {
    const char* op = c.rel == Relation::Eq ? "=" : c.rel == Relation::Le ? "<=" : ">=";
    return "a" + std::to_string(c.index) + op + rational_string(c.value);
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

ExactSystem standard_system(long long n, int v, int q, bool spanning) {
    if (n < 0 || v < 2) throw SolverError("standard system needs n >= 0 and v >= 2");
    ExactSystem sys;
    sys.provenance = "standard";
    const long long top = spanning ? n - 1 : n;
    for (long long i = 0; i <= top; ++i) sys.vars.push_back(i);
    sys.rows.assign(3, {});
    for (long long i : sys.vars) {
        sys.rows[0].push_back(Rational(1));
        sys.rows[1].push_back(Rational(i));
        sys.rows[2].push_back(choose2(i));
    }
    sys.rhs = {Rational(BigInt(bracket_count(v, q))), Rational(BigInt(n) * bracket_count(v - 1, q)),
               choose2(n) * Rational(BigInt(bracket_count(v - 2, q)))};
    return sys;
}

ExactSystem divisible_system(int v, int r, int q) {
    if (v < r + 2) throw SolverError("divisible system needs v >= r + 2");
    const long long step = static_cast<long long>(ipow(q, r));
    const long long n = step * q;
    std::set<long long> idx;
    for (int i = 0; i < q; ++i) idx.insert(i * step);
    auto sys = restrict_system(standard_system(n, v, q, true), idx);
    sys.provenance = "divisible";
    return sys;
}

ExactSystem plane_line_system(int q, long long n, const std::set<long long>& allowed) {
    if (n > static_cast<long long>(q) * q) throw SolverError("plane-line system needs n <= q^2");
    auto sys = restrict_system(standard_system(n, 3, q, false), allowed);
    sys.provenance = "plane-line";
    return sys;
}

ExactSystem restrict_system(const ExactSystem& sys, const std::set<long long>& allowed) {
    ExactSystem out;
    out.provenance = sys.provenance;
    out.rhs = sys.rhs;
    out.rows.assign(sys.rows.size(), {});
    for (size_t j = 0; j < sys.vars.size(); ++j) {
        if (!allowed.count(sys.vars[j])) continue;
        out.vars.push_back(sys.vars[j]);
        for (size_t i = 0; i < sys.rows.size(); ++i) out.rows[i].push_back(sys.rows[i][j]);
    }
    return out;
}

std::vector<Rational> residuals(const ExactSystem& sys, const SpectrumSolution& x) {
    std::vector<Rational> out;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        Rational s = -sys.rhs[i];
        for (size_t j = 0; j < sys.vars.size(); ++j) {
            auto it = x.find(sys.vars[j]);
            if (it != x.end()) s += sys.rows[i][j] * Rational(it->second);
        }
        out.push_back(s);
    }
    return out;
}

std::optional<Rational> bound_spectrum_value(const ExactSystem& sys, long long index, Direction dir,
                                             const std::vector<Constraint>& extra) {
    const size_t nv = sys.vars.size();
    // A row with only positive coefficients bounds the feasible region.
    bool bounded = false;
    for (const auto& row : sys.rows)
        if (std::all_of(row.begin(), row.end(), [](const Rational& c) { return c > 0; })) bounded = true;
    if (!bounded) throw SolverError("cannot certify a bounded feasible region");

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs = sys.rhs;
    size_t slacks = 0;
    for (const auto& c : extra)
        if (var_pos(sys, c.index) >= 0 && c.rel != Relation::Eq) ++slacks;
    const size_t ncols = nv + slacks;
    for (const auto& r : sys.rows) {
        auto row = r;
        row.resize(ncols, Rational(0));
        rows.push_back(std::move(row));
    }
    size_t s = nv;
    for (const auto& c : extra) {
        const int p = var_pos(sys, c.index);
        if (p < 0) {
            if (!absent_ok(c)) return std::nullopt;
            continue;
        }
        std::vector<Rational> row(ncols, Rational(0));
        row[p] = 1;
        if (c.rel == Relation::Le) row[s++] = 1;
        if (c.rel == Relation::Ge) row[s++] = -1;
        rows.push_back(std::move(row));
        rhs.push_back(c.value);
    }
    std::vector<int> pivots;
    if (!reduce(rows, rhs, pivots, natural_order(ncols))) return std::nullopt;
    const int target = var_pos(sys, index);
    const size_t m = rows.size();
    std::optional<Rational> best;
    if (m == 0) {
        // Only x = 0 is a vertex.
        return Rational(0);
    }
    std::vector<int> basis(m);
    std::function<void(size_t, int)> rec = [&](size_t depth, int from) {
        if (depth == m) {
            std::vector<std::vector<Rational>> b(m, std::vector<Rational>(m));
            std::vector<Rational> bb = rhs;
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) b[i][j] = rows[i][basis[j]];
            std::vector<int> piv;
            if (!reduce(b, bb, piv, natural_order(m)) || piv.size() < m) return;
            Rational val = 0;
            for (size_t j = 0; j < m; ++j) {
                if (bb[j] < 0) return;
                if (basis[j] == target) val = bb[j];
            }
            if (!best || (dir == Direction::Min ? val < *best : val > *best)) best = val;
            return;
        }
        for (int c = from; c <= static_cast<int>(ncols) - static_cast<int>(m - depth); ++c) {
            basis[depth] = c;
            rec(depth + 1, c + 1);
        }
    };
    rec(0, 0);
    return best;
}

std::vector<SpectrumSolution> enumerate_integer_spectra(const ExactSystem& sys0,
                                                        const std::optional<std::set<long long>>& allowed,
                                                        const std::vector<Constraint>& extra) {
    const ExactSystem sys = allowed ? restrict_system(sys0, *allowed) : sys0;
    std::vector<SpectrumSolution> out;
    const size_t nv = sys.vars.size();
    auto rows = sys.rows;
    auto rhs = sys.rhs;
    std::vector<Constraint> ineq;
    for (const auto& c : extra) {
        const int p = var_pos(sys, c.index);
        if (p < 0) {
            if (!absent_ok(c)) return out;
            continue;
        }
        if (c.rel == Relation::Eq) {
            std::vector<Rational> row(nv, Rational(0));
            row[p] = 1;
            rows.push_back(std::move(row));
            rhs.push_back(c.value);
        } else {
            ineq.push_back(c);
        }
    }
    std::vector<int> pivots;
    if (!reduce(rows, rhs, pivots, natural_order(nv))) return out;
    std::vector<int> free;
    for (size_t j = 0; j < nv; ++j)
        if (std::find(pivots.begin(), pivots.end(), static_cast<int>(j)) == pivots.end())
            free.push_back(static_cast<int>(j));

    ExactSystem lp = sys;
    lp.rows = sys.rows;
    lp.rhs = sys.rhs;
    std::vector<BigInt> lo, hi;
    double box = 1;
    for (int f : free) {
        auto mn = bound_spectrum_value(lp, sys.vars[f], Direction::Min, extra);
        auto mx = bound_spectrum_value(lp, sys.vars[f], Direction::Max, extra);
        if (!mn || !mx) return out;
        lo.push_back(std::max(BigInt(0), ceil_r(*mn)));
        hi.push_back(floor_r(*mx));
        if (hi.back() < lo.back()) return out;
        box *= static_cast<double>(hi.back() - lo.back() + 1);
    }
    if (box > kMaxBox) throw SolverError("integer search box too large");

    std::vector<BigInt> cur(free.size());
    std::vector<Rational> value(nv);
    std::function<void(size_t)> rec = [&](size_t d) {
        if (d == free.size()) {
            for (size_t j = 0; j < free.size(); ++j) value[free[j]] = Rational(cur[j]);
            for (size_t i = 0; i < pivots.size(); ++i) {
                Rational x = rhs[i];
                for (size_t j = 0; j < free.size(); ++j) x -= rows[i][free[j]] * Rational(cur[j]);
                if (x < 0 || denominator(x) != 1) return;
                value[pivots[i]] = x;
            }
            for (const auto& c : ineq)
                if (!holds(c.rel, value[var_pos(sys, c.index)], c.value)) return;
            SpectrumSolution sol;
            for (size_t j = 0; j < nv; ++j) sol[sys.vars[j]] = numerator(value[j]);
            out.push_back(std::move(sol));
            return;
        }
        for (BigInt x = lo[d]; x <= hi[d]; ++x) {
            cur[d] = x;
            rec(d + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [&](const SpectrumSolution& a, const SpectrumSolution& b) {
        for (long long v : sys.vars) {
            if (a.at(v) != b.at(v)) return a.at(v) < b.at(v);
        }
        return false;
    });
    return out;
}

Rational AffineForm::eval(const std::map<long long, Rational>& free_values) const {
    Rational x = constant;
    for (const auto& [j, c] : coef) x += c * free_values.at(j);
    return x;
}

std::string AffineForm::str(const std::string& var) const {
    std::ostringstream os;
    bool any = false;
    if (constant != 0 || coef.empty()) {
        os << rational_string(constant);
        any = true;
    }
    for (const auto& [j, c] : coef) {
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (any) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        if (mag != 1) {
            if (denominator(mag) != 1) os << '(' << rational_string(mag) << ')';
            else os << rational_string(mag);
        }
        os << var << j;
        any = true;
    }
    return os.str();
}

std::map<long long, AffineForm> parametric_solve(const ExactSystem& sys, const std::vector<long long>& free) {
    std::vector<int> order, free_pos;
    for (size_t j = 0; j < sys.vars.size(); ++j)
        if (std::find(free.begin(), free.end(), sys.vars[j]) == free.end()) order.push_back(static_cast<int>(j));
    for (long long f : free) {
        const int p = var_pos(sys, f);
        if (p < 0) throw SolverError("free variable a" + std::to_string(f) + " is not in the system");
        free_pos.push_back(p);
    }
    const size_t dependent = order.size();
    order.insert(order.end(), free_pos.begin(), free_pos.end());
    auto rows = sys.rows;
    auto rhs = sys.rhs;
    std::vector<int> pivots;
    if (!reduce(rows, rhs, pivots, order)) throw SolverError("inconsistent system");
    if (pivots.size() != dependent ||
        !std::equal(pivots.begin(), pivots.end(), order.begin()))
        throw SolverError("singular pivot block for the chosen free variables");
    std::map<long long, AffineForm> out;
    for (size_t i = 0; i < pivots.size(); ++i) {
        AffineForm a;
        a.constant = rhs[i];
        for (int f : free_pos) a.coef[sys.vars[f]] = -rows[i][f];
        out[sys.vars[pivots[i]]] = a;
    }
    return out;
}

}  // namespace divcyl
