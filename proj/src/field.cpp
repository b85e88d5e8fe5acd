#include "divcyl/field.hpp"

#include <algorithm>
#include <sstream>

namespace divcyl {
namespace {

using Poly = std::vector<int>;  // coefficients over GF(p), low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw FieldError("no inverse modulo p");
}

// Remainder of a modulo b (b nonzero).
Poly poly_mod(Poly a, const Poly& b, int p) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const int lead_inv = inv_mod(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int f = a.back() * lead_inv % p;
        for (int i = 0; i <= db; ++i) a[i + shift] = ((a[i + shift] - f * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

Poly decode(int code, int p, int h) {
    Poly a(h, 0);
    for (int i = 0; i < h; ++i) {
        a[i] = code % p;
        code /= p;
    }
    trim(a);
    return a;
}

int encode(const Poly& a, int p) {
    int code = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) code = code * p + a[i];
    return code;
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<int, int> prime_power(int q) {
    if (q < 2) throw FieldError("field order must be at least 2");
    int p = 2;
    while (q % p != 0) ++p;
    int h = 0;
    int r = q;
    while (r % p == 0) {
        r /= p;
        ++h;
    }
    if (r != 1) throw FieldError("field order " + std::to_string(q) + " is not a prime power");
    return {p, h};
}

bool is_irreducible(int p, std::span<const int> poly) {
    Poly f(poly.begin(), poly.end());
    trim(f);
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int c = 0; c < count; ++c) {
            Poly g = decode(c, p, d);
            g.resize(d + 1, 0);
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field Field::make(int p, int h, std::optional<std::vector<int>> modulus) {
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (h < 1) throw FieldError("extension degree must be positive");
    int q = 1;
    for (int i = 0; i < h; ++i) {
        q *= p;
        if (q > kMaxOrder) throw FieldError("field order exceeds " + std::to_string(kMaxOrder));
    }

    Poly mod;
    if (modulus) {
        mod = *modulus;
        if (static_cast<int>(mod.size()) != h + 1)
            throw FieldError("modulus must have degree " + std::to_string(h));
        for (int c : mod)
            if (c < 0 || c >= p) throw FieldError("modulus coefficient outside GF(p)");
        if (mod.back() != 1) throw FieldError("modulus must be monic");
        if (!is_irreducible(p, mod)) throw FieldError("modulus is reducible");
        if (h == 1 && mod != Poly{0, 1}) {
            // Any monic linear modulus gives the same prime field; keep the canonical one.
            mod = {0, 1};
        }
    } else if (h > 1) {
        // Lexicographic in (c_0, ..., c_{h-1}): c_0 is the most significant key.
        int count = q;
        for (int idx = 0; idx < count && mod.empty(); ++idx) {
            Poly cand(h + 1, 0);
            int rest = idx;
            for (int i = h - 1; i >= 0; --i) {
                cand[i] = rest % p;
                rest /= p;
            }
            cand[h] = 1;
            if (is_irreducible(p, cand)) mod = cand;
        }
    }
    if (h == 1) mod.clear();

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->h = h;
    t->q = q;
    t->modulus = mod;
    t->add.resize(q * q);
    t->mul.resize(q * q);
    t->neg.resize(q);
    t->inv.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        const Poly pa = decode(a, p, h);
        for (int b = 0; b < q; ++b) {
            const Poly pb = decode(b, p, h);
            // addition digit-wise
            int code = 0, mult = 1, x = a, y = b;
            for (int i = 0; i < h; ++i) {
                code += ((x % p + y % p) % p) * mult;
                x /= p;
                y /= p;
                mult *= p;
            }
            t->add[a * q + b] = static_cast<Elem>(code);
            Poly prod = poly_mul(pa, pb, p);
            if (h > 1) prod = poly_mod(prod, mod, p);
            else if (!prod.empty()) prod = {prod[0] % p};
            trim(prod);
            t->mul[a * q + b] = static_cast<Elem>(encode(prod, p));
        }
    }
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (t->add[a * q + b] == 0) t->neg[a] = static_cast<Elem>(b);
            if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<Elem>(b);
        }
    t->frob.resize(h * q);
    for (int a = 0; a < q; ++a) {
        Elem x = static_cast<Elem>(a);
        for (int k = 0; k < h; ++k) {
            t->frob[k * q + a] = x;
            Elem y = 1;
            for (int i = 0; i < p; ++i) y = t->mul[y * q + x];
            x = y;
        }
    }
    return Field(std::move(t));
}

Field Field::of_order(int q, std::optional<std::vector<int>> modulus) {
    auto [p, h] = prime_power(q);
    return make(p, h, std::move(modulus));
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return t_->inv[a];
}

Elem Field::pow(Elem a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string Field::name() const {
    std::ostringstream os;
    os << "GF(" << q() << ")";
    if (h() > 1) {
        os << " mod ";
        for (size_t i = 0; i < modulus().size(); ++i) os << (i ? "," : "") << modulus()[i];
    }
    return os.str();
}

EmbeddingMap subfield_embedding(const Field& base, const Field& ext) {
    if (base.p() != ext.p() || ext.h() % base.h() != 0)
        throw FieldError("no embedding of " + base.name() + " into " + ext.name());
    EmbeddingMap m{base, ext, std::vector<Elem>(base.q(), 0)};
    if (base.h() == 1) {
        for (int a = 0; a < base.q(); ++a) m.image[a] = static_cast<Elem>(a);
        return m;
    }
    const auto& mod = base.modulus();
    int root = -1;
    for (int r = 0; r < ext.q() && root < 0; ++r) {
        Elem acc = 0, power = 1;
        for (int c : mod) {
            acc = ext.add(acc, ext.mul(static_cast<Elem>(c), power));
            power = ext.mul(power, static_cast<Elem>(r));
        }
        if (acc == 0) root = r;
    }
    if (root < 0) throw FieldError("base modulus has no root in extension");
    for (int a = 0; a < base.q(); ++a) {
        int code = a;
        Elem acc = 0, power = 1;
        for (int i = 0; i < base.h(); ++i) {
            acc = ext.add(acc, ext.mul(static_cast<Elem>(code % base.p()), power));
            power = ext.mul(power, static_cast<Elem>(root));
            code /= base.p();
        }
        m.image[a] = acc;
    }
    return m;
}

}  // namespace divcyl
