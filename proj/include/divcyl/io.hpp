#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "divcyl/analysis.hpp"
#include "divcyl/code.hpp"
#include "divcyl/cylinder.hpp"
#include "json.hpp"

namespace divcyl {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "1,1,1" -> {1,1,1}
std::vector<int> parse_modulus(const std::string& text);

/// Header `q <q> v <v>`, then one normalized point per line, optional ` x<m>`.
PointMultiset read_point_set(std::istream& in, const std::optional<std::vector<int>>& modulus = std::nullopt);
PointMultiset read_point_set_file(const std::string& path, const std::optional<std::vector<int>>& modulus = std::nullopt);
std::string write_point_set(const PointMultiset& m);

/// Header `q <q> k <k> n <n>`, then k lines of n digits.
GeneratorMatrix read_matrix(std::istream& in, const std::optional<std::vector<int>>& modulus = std::nullopt);
GeneratorMatrix read_matrix_file(const std::string& path, const std::optional<std::vector<int>>& modulus = std::nullopt);
std::string write_matrix(const GeneratorMatrix& g);

/// Reads either format, telling them apart by the header.
PointMultiset read_points_any(const std::string& path, const std::optional<std::vector<int>>& modulus = std::nullopt);

nlohmann::ordered_json spectrum_json(const Spectrum& s);
nlohmann::ordered_json weights_json(const WeightDistribution& w);
nlohmann::ordered_json witness_json(const CylinderWitness& w);

std::string vec_string(const Vec& x);

}  // namespace divcyl
