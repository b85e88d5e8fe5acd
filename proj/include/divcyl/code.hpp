#pragma once

#include <map>
#include <vector>

#include "divcyl/geometry.hpp"

namespace divcyl {

class CodeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// k x n matrix over a finite field. Rows are stored as Vec of length n.
struct GeneratorMatrix {
    Field field;
    int k = 0;
    int n = 0;
    std::vector<Vec> rows;

    GeneratorMatrix(Field f, std::vector<Vec> r);
    Elem at(int i, int j) const { return rows[i][j]; }
    Vec column(int j) const;
    friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
        return a.field == b.field && a.rows == b.rows;
    }
};

struct WeightDistribution {
    std::map<int, long long> counts;

    long long at(int w) const {
        auto it = counts.find(w);
        return it == counts.end() ? 0 : it->second;
    }
    long long total() const;
    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Columns are the normalized support points, repeated by multiplicity, in
/// ascending id order. A non-spanning multiset gives the RREF of the point
/// matrix with zero rows dropped, so k = dim span.
GeneratorMatrix code_from_points(const PointMultiset& m);

/// Column j to its normalized point; zero columns are skipped and counted.
PointMultiset points_from_code(const GeneratorMatrix& g, int* zero_columns = nullptr);

/// Full sweep over the q^k codewords. Requires q^k <= 2^24.
WeightDistribution weight_distribution(const GeneratorMatrix& g);

/// Polynomial notation, e.g. "1+90z^8+840z^12+93z^16".
std::string format_weights(const WeightDistribution& w);

bool is_projective(const GeneratorMatrix& g);

/// The same array read over GF(p); every entry must lie in the prime subfield.
GeneratorMatrix reinterpret_prime_subfield(const GeneratorMatrix& g);

/// msg . G
Vec encode(const GeneratorMatrix& g, const Vec& msg);

bool in_row_space(const GeneratorMatrix& g, const Vec& c);

/// The code punctured to the zero coordinates of c, as a full-rank generator matrix.
GeneratorMatrix residual_code(const GeneratorMatrix& g, const Vec& c);

}  // namespace divcyl
