#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "divcyl/field.hpp"

namespace divcyl {

using Vec = std::vector<Elem>;
using PointId = std::int64_t;

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// q-analog of the binomial coefficient: number of k-spaces of a v-space.
std::uint64_t gaussian_binomial(int v, int k, int q);
/// [x]_q = (q^x - 1)/(q - 1).
std::uint64_t bracket_count(int x, int q);
std::uint64_t ipow(std::uint64_t base, int e);

/// The projective space PG(v-1, q) with dense point ids.
///
/// A point is stored normalized (first nonzero coordinate equal to 1). Ids are
/// ranked by the position of the leading one, then lexicographically on the
/// remaining coordinates, so (1,0,...,0) has id 0 and (0,...,0,1) is last.
class Space {
public:
    Space(Field field, int v);

    const Field& field() const { return field_; }
    int v() const { return v_; }
    int q() const { return field_.q(); }
    PointId num_points() const { return num_points_; }

    PointId id_of(std::span<const Elem> normalized) const;
    Vec point(PointId id) const;
    void point(PointId id, Elem* out) const;

    /// Scales in place so the first nonzero coordinate is 1; false for the zero vector.
    bool normalize_inplace(std::span<Elem> x) const;
    Vec normalize(std::span<const Elem> x) const;
    /// Id of the point spanned by a (not necessarily normalized) nonzero vector.
    PointId id_of_vector(std::span<const Elem> x) const;

    Elem dot(std::span<const Elem> a, std::span<const Elem> b) const;

    friend bool operator==(const Space& a, const Space& b) { return a.v_ == b.v_ && a.field_ == b.field_; }

private:
    Field field_;
    int v_;
    PointId num_points_;
    std::vector<PointId> offset_;  // first id for each leading position
};

/// All [v]_q points in id order.
std::vector<Vec> enumerate_points(const Space& space);

/// Reduced row-echelon form (zero rows dropped).
std::vector<Vec> rref(const Field& f, std::vector<Vec> rows);
int rank(const Field& f, std::vector<Vec> rows);
/// Basis of {x : A x = 0} for the rows A over a v-dimensional space.
std::vector<Vec> null_space(const Field& f, const std::vector<Vec>& rows, int v);

/// A linear subspace, stored by its unique RREF basis.
class Subspace {
public:
    Subspace(const Space& space, std::vector<Vec> rows);
    static Subspace zero(const Space& space) { return Subspace(space, {}); }
    static Subspace full(const Space& space);

    int dim() const { return static_cast<int>(basis_.size()); }
    int v() const { return v_; }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const Field& f, std::span<const Elem> x) const;
    /// Point ids of all [dim]_q points, ascending.
    std::vector<PointId> point_ids(const Space& space) const;
    /// Coordinates of x with respect to the basis; x must lie in the subspace.
    Vec coordinates(std::span<const Elem> x) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.v_ == b.v_ && a.basis_ == b.basis_; }
    friend bool operator<(const Subspace& a, const Subspace& b) { return a.basis_ < b.basis_; }

private:
    int v_;
    std::vector<Vec> basis_;
    std::vector<int> pivots_;
};

/// Hyperplane {x : normal . x = 0}; the normal is a normalized dual vector.
struct Hyperplane {
    Vec normal;
    bool contains(const Space& s, std::span<const Elem> x) const { return s.dot(normal, x) == 0; }
    Subspace as_subspace(const Space& s) const;
    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Multiset of points of PG(v-1, q).
class PointMultiset {
public:
    explicit PointMultiset(Space space) : space_(std::move(space)) {}
    PointMultiset(Space space, const std::vector<Vec>& points);

    const Space& space() const { return space_; }
    const Field& field() const { return space_.field(); }
    int v() const { return space_.v(); }
    int q() const { return space_.q(); }

    void add(std::span<const Elem> x, int mult = 1);
    void add_id(PointId id, int mult = 1);
    int count(PointId id) const;
    int count(std::span<const Elem> x) const { return count(space_.id_of_vector(x)); }

    /// Total cardinality n.
    long long size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool is_set() const;
    int max_multiplicity() const;

    const std::map<PointId, int>& counts() const { return counts_; }
    /// Normalized support points in id order.
    std::vector<Vec> support() const;

    friend bool operator==(const PointMultiset& a, const PointMultiset& b) {
        return a.space_ == b.space_ && a.counts_ == b.counts_;
    }

private:
    Space space_;
    std::map<PointId, int> counts_;
    long long size_ = 0;
};

Subspace span(const Space& space, const std::vector<Vec>& points);

/// All d-spaces of the v-space, each once, in a fixed order.
std::vector<Subspace> enumerate_subspaces(const Space& space, int d);

/// The q+1 hyperplanes through a subspace of dimension v-2.
std::vector<Hyperplane> hyperplanes_through(const Space& space, const Subspace& k);

/// All hyperplanes, ordered by the id of their normal.
std::vector<Hyperplane> enumerate_hyperplanes(const Space& space);

/// A(P, F) = <P, F> \ F as normalized points in id order.
std::vector<Vec> affine_part(const Space& space, std::span<const Elem> p, const Subspace& f);

/// Image of the multiset in PG(v - dim B - 1, q): B's RREF basis is extended by
/// the standard vectors of its non-pivot columns and points are projected onto
/// those complement coordinates.
PointMultiset quotient(const PointMultiset& m, const Subspace& b);

/// The restriction of M to X, in coordinates of X's RREF basis.
PointMultiset restrict_to(const PointMultiset& m, const Subspace& x);

}  // namespace divcyl
