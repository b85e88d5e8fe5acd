#include "divcyl/io.hpp"

#include <fstream>
#include <sstream>

namespace divcyl {

namespace {

Vec parse_digits(const std::string& s, int q, size_t len, int line_no) {
    if (s.size() != len) throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(len) + " symbols");
    Vec x;
    for (char c : s) {
        if (c < '0' || c > '9' || c - '0' >= q)
            throw FormatError("line " + std::to_string(line_no) + ": symbol '" + std::string(1, c) + "' out of range");
        x.push_back(static_cast<Elem>(c - '0'));
    }
    return x;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return in;
}

Field field_for(int q, const std::optional<std::vector<int>>& modulus) {
    if (q < 2 || q > 9) throw FormatError("single-digit formats need 2 <= q <= 9");
    try {
        return Field::of_order(q, modulus);
    } catch (const FieldError& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

std::vector<int> parse_modulus(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw FormatError("bad modulus coefficient '" + tok + "'");
        }
    }
    return out;
}

PointMultiset read_point_set(std::istream& in, const std::optional<std::vector<int>>& modulus) {
    std::string line;
    int line_no = 0;
    int q = 0, v = 0;
    {
        if (!std::getline(in, line)) throw FormatError("missing header");
        ++line_no;
        std::istringstream hs(line);
        std::string a, b, rest;
        if (!(hs >> a >> q >> b >> v) || a != "q" || b != "v" || (hs >> rest))
            throw FormatError("header must be `q <q> v <v>`");
    }
    Field f = field_for(q, modulus);
    if (v < 1) throw FormatError("dimension must be positive");
    Space sp(f, v);
    PointMultiset m(sp);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string digits, mult;
        ls >> digits;
        int c = 1;
        if (ls >> mult) {
            if (mult.size() < 2 || mult[0] != 'x') throw FormatError("line " + std::to_string(line_no) + ": bad multiplicity");
            try {
                c = std::stoi(mult.substr(1));
            } catch (const std::exception&) {
                throw FormatError("line " + std::to_string(line_no) + ": bad multiplicity");
            }
            if (c < 1) throw FormatError("line " + std::to_string(line_no) + ": multiplicity must be positive");
        }
        Vec x = parse_digits(digits, q, v, line_no);
        Vec y = x;
        if (!sp.normalize_inplace(y) || y != x)
            throw FormatError("line " + std::to_string(line_no) + ": point is not normalized");
        m.add(x, c);
    }
    return m;
}

PointMultiset read_point_set_file(const std::string& path, const std::optional<std::vector<int>>& modulus) {
    auto in = open(path);
    return read_point_set(in, modulus);
}

std::string write_point_set(const PointMultiset& m) {
    std::ostringstream os;
    os << "q " << m.q() << " v " << m.v() << '\n';
    for (const auto& [id, c] : m.counts()) {
        os << vec_string(m.space().point(id));
        if (c > 1) os << " x" << c;
        os << '\n';
    }
    return os.str();
}

GeneratorMatrix read_matrix(std::istream& in, const std::optional<std::vector<int>>& modulus) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing header");
    std::istringstream hs(line);
    std::string a, b, c, rest;
    int q = 0, k = 0, n = 0;
    if (!(hs >> a >> q >> b >> k >> c >> n) || a != "q" || b != "k" || c != "n" || (hs >> rest))
        throw FormatError("header must be `q <q> k <k> n <n>`");
    if (k < 0 || n < 0) throw FormatError("negative size");
    Field f = field_for(q, modulus);
    std::vector<Vec> rows;
    for (int i = 0; i < k; ++i) {
        if (!std::getline(in, line)) throw FormatError("expected " + std::to_string(k) + " rows");
        rows.push_back(parse_digits(line, q, n, i + 2));
    }
    while (std::getline(in, line))
        if (!line.empty()) throw FormatError("trailing content after the matrix");
    return GeneratorMatrix(f, std::move(rows));
}

GeneratorMatrix read_matrix_file(const std::string& path, const std::optional<std::vector<int>>& modulus) {
    auto in = open(path);
    return read_matrix(in, modulus);
}

std::string write_matrix(const GeneratorMatrix& g) {
    std::ostringstream os;
    os << "q " << g.field.q() << " k " << g.k << " n " << g.n << '\n';
    for (const auto& row : g.rows) os << vec_string(row) << '\n';
    return os.str();
}

PointMultiset read_points_any(const std::string& path, const std::optional<std::vector<int>>& modulus) {
    auto in = open(path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string a, q, b;
    hs >> a >> q >> b;
    in.clear();
    in.seekg(0);
    if (b == "k") return points_from_code(read_matrix(in, modulus));
    return read_point_set(in, modulus);
}

nlohmann::ordered_json spectrum_json(const Spectrum& s) {
    nlohmann::ordered_json j;
    j["codim"] = s.codim;
    j["n"] = s.n;
    j["v"] = s.v;
    j["q"] = s.q;
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [i, c] : s.a) a[std::to_string(i)] = c;
    j["a"] = a;
    return j;
}

nlohmann::ordered_json weights_json(const WeightDistribution& w) {
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [wt, c] : w.counts) a[std::to_string(wt)] = c;
    return a;
}

nlohmann::ordered_json witness_json(const CylinderWitness& w) {
    nlohmann::ordered_json j;
    j["axis"] = nlohmann::ordered_json::array();
    for (const auto& r : w.axis.basis()) j["axis"].push_back(vec_string(r));
    j["reps"] = nlohmann::ordered_json::array();
    for (const auto& r : w.reps) j["reps"].push_back(vec_string(r));
    return j;
}

std::string vec_string(const Vec& x) {
    std::string s;
    for (auto e : x) s.push_back(static_cast<char>('0' + e));
    return s;
}

}  // namespace divcyl
