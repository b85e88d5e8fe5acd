#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divcyl/canon.hpp"
#include "divcyl/code.hpp"
#include "divcyl/geometry.hpp"

namespace divcyl {

class GuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ClassificationTask {
    int q = 2;
    long long n = 0;
    int v_min = 1;
    int v_max = 1;
    /// Hyperplane multiplicities congruent to n modulo q^r; none = no condition.
    std::optional<int> r;
    bool projective = true;
    /// Used when not projective.
    int max_mult = 1;
    std::optional<std::set<long long>> allowed;
    bool stretch = false;
    int jobs = 1;
};

struct ClassifiedSet {
    int dim = 0;
    CanonicalForm form;
    PointMultiset rep;  ///< canonical representative in PG(dim - 1, q)
};

struct LevelStats {
    int k = 0;
    long long n = 0;
    int mu = 0;
    long long quotients = 0;
    long long candidates = 0;
    long long classes = 0;
};

struct Classification {
    std::map<int, std::vector<ClassifiedSet>> by_dim;  ///< every dimension of the range is present
    std::vector<LevelStats> log;

    /// "3:1,4:2,5:2" over the dimensions with at least one class.
    std::string counts_string() const;
    std::map<int, long long> counts() const;
};

/// Checks n <= 64 and q^(v_max - 1) <= 1024 (the length of the residue vectors
/// in the top lifting step); throws GuardError unless task.stretch.
void check_guard(const ClassificationTask& task);

/// One representative per PΓL-class of spanning multisets of n points in
/// PG(v-1, q) for every v in the range. Classes are built by projecting from a
/// point of maximal multiplicity c: the image is a spanning multiset of n - c
/// points one dimension lower, classified recursively, and every class is
/// lifted back by distributing each of its points over the q points of its
/// line through the centre.
Classification enumerate_divisible_sets(const ClassificationTask& task);

struct ClassFlags {
    bool cylinder = false;
    bool affine_geometry = false;
    bool subfield_embedded = false;
};

enum class Verdict { True, False, Vacuous };
std::string verdict_name(Verdict v);

struct ConjectureReport {
    int v = 0, r = 0, q = 0;
    std::vector<ClassifiedSet> classes;
    std::vector<ClassFlags> flags;
    Verdict verdict = Verdict::Vacuous;
};

/// Spanning projective q^r-divisible sets of q^(r+1) points in PG(v-1, q).
ConjectureReport conjecture_report(int q, int r, int v, bool stretch = false, int jobs = 1);

struct ExtensionTask {
    int target_k = 0;
    int target_n = 0;
    std::set<long long> allowed_weights;
    bool projective = true;
    bool stretch = false;
};

/// Codes [[G | A], [Y | B]] of dimension target_k and length target_n whose
/// nonzero weights lie in allowed_weights, one per equivalence class.
std::vector<ClassifiedSet> extension_search(const GeneratorMatrix& g, const ExtensionTask& task);

}  // namespace divcyl
