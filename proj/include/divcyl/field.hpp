#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace divcyl {

/// Field element code: the base-p digits of the code are the coefficients of
/// a polynomial of degree < h (lowest degree in the least significant digit).
using Elem = std::uint8_t;

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// GF(p^h) with explicit modulus and dense operation tables.
///
/// Copies are cheap: the tables are shared and immutable.
class Field {
public:
    static constexpr int kMaxOrder = 81;

    /// Builds GF(p^h). Without a modulus (h > 1) the lexicographically smallest
    /// monic irreducible polynomial is chosen, coefficients compared from the
    /// constant term upwards. A given modulus lists coefficients low degree
    /// first and must be monic of degree h and irreducible.
    static Field make(int p, int h, std::optional<std::vector<int>> modulus = std::nullopt);

    /// GF(q) for a prime power q with the default modulus.
    static Field of_order(int q, std::optional<std::vector<int>> modulus = std::nullopt);

    int p() const { return t_->p; }
    int h() const { return t_->h; }
    int q() const { return t_->q; }
    /// Empty for prime fields.
    const std::vector<int>& modulus() const { return t_->modulus; }

    Elem add(Elem a, Elem b) const { return t_->add[a * t_->q + b]; }
    Elem sub(Elem a, Elem b) const { return t_->add[a * t_->q + t_->neg[b]]; }
    Elem neg(Elem a) const { return t_->neg[a]; }
    Elem mul(Elem a, Elem b) const { return t_->mul[a * t_->q + b]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long long e) const;
    /// x -> x^(p^k).
    Elem frobenius(Elem a, int k = 1) const { return t_->frob[(k % t_->h) * t_->q + a]; }

    bool in_prime_subfield(Elem a) const { return a < t_->p; }

    /// Raw row of the multiplication table for a fixed left factor.
    const Elem* mul_row(Elem a) const { return &t_->mul[a * t_->q]; }
    const Elem* add_row(Elem a) const { return &t_->add[a * t_->q]; }
    const Elem* inv_table() const { return t_->inv.data(); }

    std::string name() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.t_ == b.t_ || (a.p() == b.p() && a.h() == b.h() && a.modulus() == b.modulus());
    }

private:
    struct Tables {
        int p = 0, h = 0, q = 0;
        std::vector<int> modulus;
        std::vector<Elem> add, mul, neg, inv, frob;
    };
    explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
    std::shared_ptr<const Tables> t_;
};

bool is_prime(int n);

/// Splits q = p^h; throws if q is not a prime power.
std::pair<int, int> prime_power(int q);

/// Irreducibility of a monic polynomial over GF(p) (coefficients low degree first).
bool is_irreducible(int p, std::span<const int> poly);

/// Field homomorphism GF(p^e) -> GF(p^h), e | h.
struct EmbeddingMap {
    Field source;
    Field target;
    std::vector<Elem> image;  ///< indexed by source element code

    Elem operator()(Elem a) const { return image[a]; }
};

/// Sends the base generator to the root of the base modulus in `ext` with the
/// smallest element code.
EmbeddingMap subfield_embedding(const Field& base, const Field& ext);

}  // namespace divcyl
