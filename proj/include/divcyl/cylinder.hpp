#pragma once

#include <optional>
#include <vector>

#include "divcyl/geometry.hpp"

namespace divcyl {

/// Axis F plus one representative per affine part A(rep, F).
struct CylinderWitness {
    Subspace axis;
    std::vector<Vec> reps;
    std::vector<std::vector<Vec>> parts;
};

struct Cylinder {
    PointMultiset points;
    CylinderWitness witness;
};

/// Points with first coordinate nonzero: AG(v-1, q) inside PG(v-1, q).
PointMultiset affine_geometry(const Field& f, int v);

/// Union of A(P_i, F) where the base points are padded with r zero
/// coordinates and F is spanned by the r appended unit vectors.
Cylinder construct_cylinder(const PointMultiset& base, int r);

/// Points P outside S such that some s in S has A(s, P) inside S, in id order.
std::vector<PointId> direction_set(const PointMultiset& s);

/// A cylinder witness with the least axis (RREF order), or none.
std::optional<CylinderWitness> recognize_cylinder(const PointMultiset& s, int r);

/// The same, trying every r-space disjoint from S. Used for cross-checks.
std::optional<CylinderWitness> recognize_cylinder_exhaustive(const PointMultiset& s, int r);

/// {A(s, P) : s in S} with P the new last unit vector.
PointMultiset lift(const PointMultiset& s);

/// Coordinatewise image under GF(q) -> GF(q^h).
PointMultiset subfield_embed(const PointMultiset& s, int h);

struct AffineWitness {
    Subspace t;
    Subspace f;
};

/// A d-space T and a hyperplane F of T with T \ F inside S, or none.
std::optional<AffineWitness> contains_affine_subspace(const PointMultiset& s, int d);

/// Closed form: r + 2 <= v <= r + q.
bool spanning_cylinder_exists(int v, int r, int q);

/// A spanning projective (r+1)-cylinder in PG(v-1, q) built from a base
/// set in PG(v-r-1, q); none when no spanning base of q points exists.
std::optional<Cylinder> spanning_cylinder_example(int v, int r, const Field& f);

}  // namespace divcyl
