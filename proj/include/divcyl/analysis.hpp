#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divcyl/geometry.hpp"

namespace divcyl {

/// Census of codimension-j subspaces by intersection multiplicity. Keys are
/// raw multiplicities; zero counts are omitted.
struct Spectrum {
    int codim = 1;
    long long n = 0;
    int v = 0;
    int q = 0;
    std::map<long long, long long> a;

    long long at(long long i) const {
        auto it = a.find(i);
        return it == a.end() ? 0 : it->second;
    }
    long long total() const;
    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Sum of multiplicities of the points of m lying in k.
long long multiplicity(const PointMultiset& m, const Subspace& k);

/// |M ∩ H| for every hyperplane, indexed by the point id of the normal.
std::vector<long long> hyperplane_multiplicities(const PointMultiset& m);

/// Codimension-j spectrum by enumeration of all (v-j)-spaces.
Spectrum spectrum(const PointMultiset& m, int codim = 1);

struct DivisibilityResult {
    bool divisible = true;
    std::optional<Hyperplane> witness;
    explicit operator bool() const { return divisible; }
};

/// Every hyperplane multiplicity congruent to |M| modulo delta; otherwise the
/// first violating hyperplane (by normal id).
DivisibilityResult is_divisible(const PointMultiset& m, long long delta);

/// Largest r with M q^r-divisible. Capped at the largest r with q^r <= max(n, 1).
int divisibility_exponent(const PointMultiset& m);

bool is_spanning(const PointMultiset& m);
/// The same predicate via a_n = 0 of the hyperplane spectrum.
bool is_spanning_by_spectrum(const PointMultiset& m);

/// The q+1 values |M ∩ H| for the hyperplanes through a codimension-2 space, descending.
std::vector<long long> pencil_distribution(const PointMultiset& m, const Subspace& k);

/// All multisets of q+1 values from `allowed` containing `required`, with sum
/// n + q*m. Each result is sorted descending; results are in descending
/// lexicographic order.
std::vector<std::vector<int>> count_pencil_distributions(int q, int n, int m, const std::set<int>& allowed,
                                                         const std::vector<int>& required);

/// Exponent notation, e.g. "4^2 3^1 2^5".
std::string format_distribution(const std::vector<int>& d);

/// Every line of the plane meets S.
bool is_blocking_set(const PointMultiset& s);

/// S with membership flipped on the points of the line.
PointMultiset symmetric_difference_with_line(const PointMultiset& s, const Subspace& line);

}  // namespace divcyl
