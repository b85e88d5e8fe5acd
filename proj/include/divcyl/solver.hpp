#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace divcyl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class SolverError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear equations over nonnegative variables a_i, i a raw multiplicity.
struct ExactSystem {
    std::vector<long long> vars;
    std::vector<std::vector<Rational>> rows;  ///< aligned with vars
    std::vector<Rational> rhs;
    std::string provenance;
};

enum class Relation { Eq, Le, Ge };

/// a_index (=, <=, >=) value
struct Constraint {
    long long index = 0;
    Relation rel = Relation::Eq;
    Rational value;
};

/// "a5<=1,a0>=8" -> constraints. Throws SolverError on malformed input.
std::vector<Constraint> parse_constraints(const std::string& text);
std::string format_constraint(const Constraint& c);

/// Index -> value; every variable of the system appears.
using SpectrumSolution = std::map<long long, BigInt>;

/// Sum a_i = [v]_q, sum i a_i = n [v-1]_q, sum C(i,2) a_i = C(n,2) [v-2]_q over
/// a_0..a_n. Spanning drops a_n.
ExactSystem standard_system(long long n, int v, int q, bool spanning);

/// The same equations for n = q^(r+1) over a_0, a_{q^r}, ..., a_{(q-1)q^r}.
ExactSystem divisible_system(int v, int r, int q);

/// Lines of an n-point set in PG(2, q), variables restricted to `allowed`.
ExactSystem plane_line_system(int q, long long n, const std::set<long long>& allowed);

/// Keeps only the allowed variables (the others are fixed to zero).
ExactSystem restrict_system(const ExactSystem& sys, const std::set<long long>& allowed);

/// Left-hand side minus right-hand side per equation.
std::vector<Rational> residuals(const ExactSystem& sys, const SpectrumSolution& x);

/// All nonnegative integer solutions, ascending lexicographic by variable order.
std::vector<SpectrumSolution> enumerate_integer_spectra(const ExactSystem& sys,
                                                        const std::optional<std::set<long long>>& allowed,
                                                        const std::vector<Constraint>& extra = {});

/// constant + sum coef[j] * a_j
struct AffineForm {
    Rational constant;
    std::map<long long, Rational> coef;

    Rational eval(const std::map<long long, Rational>& free_values) const;
    std::string str(const std::string& var = "a") const;
};

/// Expresses every non-free variable as an affine form in the free ones.
std::map<long long, AffineForm> parametric_solve(const ExactSystem& sys, const std::vector<long long>& free);

enum class Direction { Min, Max };

/// Exact optimum of a_index over {x >= 0 : equations, extra}; none if infeasible.
std::optional<Rational> bound_spectrum_value(const ExactSystem& sys, long long index, Direction dir,
                                             const std::vector<Constraint>& extra = {});

std::string rational_string(const Rational& r);

}  // namespace divcyl
