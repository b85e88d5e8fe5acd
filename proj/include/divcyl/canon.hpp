#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divcyl/geometry.hpp"

namespace divcyl {

class CanonError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// x -> A * frob^s(x) on column vectors.
struct Semilinear {
    std::vector<Vec> a;  ///< square matrix, row-major
    int s = 0;
};

/// Orbit representative of a multiset under PΓL(v, q).
///
/// The multiset is first written in coordinates of its span (dimension k).
/// Every ordered basis (b_1..b_k) drawn from the support by the refinement
/// rule, every diagonal rescaling with D_1 = 1 and every field automorphism
/// gives an image; the key is the least sorted list of (rank, multiplicity)
/// pairs, rank(y) = sum y_i q^i of the normalized image y.
struct CanonicalForm {
    int v = 0;
    int q = 0;
    int k = 0;
    std::vector<std::pair<std::int64_t, int>> key;
    std::optional<long long> aut_order;

    /// The image realizing the key, padded with zero coordinates to length v.
    PointMultiset representative(const Field& f) const;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.v == b.v && a.q == b.q && a.k == b.k && a.key == b.key;
    }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
        return std::tie(a.v, a.q, a.k, a.key) < std::tie(b.v, b.q, b.k, b.key);
    }
};

struct CanonOptions {
    bool with_aut_order = false;
    /// Lifts the size guard (support <= 64 points, span dimension <= 6).
    bool stretch = false;
};

CanonicalForm canonical_form(const PointMultiset& m, const CanonOptions& opt = {});

/// Same (v, q, n) required.
bool are_equivalent(const PointMultiset& a, const PointMultiset& b, const CanonOptions& opt = {});

/// Order of the stabilizer of the multiset in PΓL(k, q), k = dim span,
/// counted as the number of frames mapping it onto its canonical image.
long long automorphism_order(const PointMultiset& m, bool stretch = false);

/// Order of the monomial-times-field-automorphism group of the code C(M):
/// (q-1) scalar matrices times the collineation stabilizer times the
/// permutations of repeated columns.
long long code_automorphism_order(const PointMultiset& m, bool stretch = false);

/// Equivalent to a multiset whose points have all coordinates in a proper subfield.
bool is_subfield_embedded(const PointMultiset& m);

/// A spanning set of q^(v-1) points missing some hyperplane, i.e. AG(v-1, q).
bool is_affine_geometry(const PointMultiset& m);

PointMultiset apply_semilinear(const PointMultiset& m, const Semilinear& g);

/// Inverse over the field; throws for a singular matrix.
std::vector<Vec> invert_matrix(const Field& f, const std::vector<Vec>& a);

}  // namespace divcyl
