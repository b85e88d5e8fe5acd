#include "divcyl/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "divcyl/analysis.hpp"
#include "divcyl/canon.hpp"
#include "divcyl/classify.hpp"
#include "divcyl/code.hpp"
#include "divcyl/cylinder.hpp"
#include "divcyl/io.hpp"
#include "divcyl/solver.hpp"

namespace divcyl {

namespace {

std::string tuple_string(const SpectrumSolution& s) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (const auto& [i, x] : s) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    os << ')';
    return os.str();
}

std::string tuples_string(const std::vector<SpectrumSolution>& v) {
    if (v.empty()) return "none";
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ";") + tuple_string(s);
    return out;
}

std::string forms_string(const std::map<long long, AffineForm>& forms, const std::string& var) {
    std::string out;
    for (const auto& [i, f] : forms) out += (out.empty() ? "" : "; ") + var + std::to_string(i) + " = " + f.str(var);
    return out;
}

std::string pencils_string(const std::vector<std::vector<int>>& ds) {
    if (ds.empty()) return "none";
    std::string out;
    for (const auto& d : ds) out += (out.empty() ? "" : "; ") + format_distribution(d);
    return out;
}

GeneratorMatrix fixture(const CheckContext& ctx, const std::string& name) {
    return read_matrix_file(ctx.fixtures + "/" + name);
}

std::string counts(int q, long long n, int vmax, std::optional<int> r, const CheckContext& ctx, bool stretch = false) {
    ClassificationTask t;
    t.q = q;
    t.n = n;
    t.v_min = 1;
    t.v_max = vmax;
    t.r = r;
    t.jobs = ctx.jobs;
    t.stretch = stretch;
    return enumerate_divisible_sets(t).counts_string();
}

std::string report_string(const ConjectureReport& rep, const PointMultiset* reference, bool with_count = true) {
    int non = 0, sub = 0, match = 0;
    for (size_t i = 0; i < rep.classes.size(); ++i) {
        if (rep.flags[i].cylinder) continue;
        ++non;
        sub += rep.flags[i].subfield_embedded;
        if (reference && are_equivalent(rep.classes[i].rep, *reference)) ++match;
    }
    std::ostringstream os;
    os << "verdict=" << verdict_name(rep.verdict);
    if (with_count) os << " classes=" << rep.classes.size();
    os << " non-cylinder=" << non;
    if (non) os << " subfield-embedded=" << sub;
    if (reference) os << " equivalent-to-reference=" << match;
    return os.str();
}

// Closed forms for q^r-divisible spanning sets of q^(r+1) points in PG(v-1,q).
struct LpBounds {
    Rational min_aqr, max_a0, min_a0;
};

LpBounds lp_closed_forms(int v, int r, int q) {
    const BigInt top = BigInt(ipow(q, v - r - 1));
    return {Rational(BigInt(bracket_count(v, q))) - Rational(top - q + 1), Rational(top - q + 2, 2),
            Rational(top - 1, q - 1)};
}

std::string lp_grid() {
    int feasible = 0, vacuous = 0, violations = 0, tight = 0;
    for (int q : {2, 3, 4, 5, 7, 8, 9})
        for (int r = 1; r <= 3; ++r)
            for (int v = r + 2; v <= r + 5; ++v) {
                auto sys = divisible_system(v, r, q);
                const long long qr = static_cast<long long>(ipow(q, r));
                auto lo = bound_spectrum_value(sys, qr, Direction::Min);
                auto hi0 = bound_spectrum_value(sys, 0, Direction::Max);
                auto lo0 = bound_spectrum_value(sys, 0, Direction::Min);
                if (!lo || !hi0 || !lo0) {
                    ++vacuous;
                    continue;
                }
                ++feasible;
                const auto f = lp_closed_forms(v, r, q);
                violations += (*lo < f.min_aqr) + (*hi0 > f.max_a0) + (*lo0 < f.min_a0);
                if (q == 5 && r == 1 && v == 4) tight = (*lo == f.min_aqr) + (*hi0 == f.max_a0) + (*lo0 == f.min_a0);
            }
    std::ostringstream os;
    os << "feasible=" << feasible << " vacuous=" << vacuous << " violations=" << violations << " tight(4,1,5)=" << tight;
    return os.str();
}

std::vector<CheckDescriptor> build_registry() {
    std::vector<CheckDescriptor> r;
    auto add = [&](std::string name, std::string anchor, Cost cost, std::function<std::string(const CheckContext&)> fn) {
        r.push_back({std::move(name), std::move(anchor), cost, std::move(fn)});
    };

    add("ce16-weights", "weight enumerator of the [16,5]_4 code that is not a cylinder", Cost::Fast,
        [](const CheckContext& c) { return format_weights(weight_distribution(fixture(c, "ce_16_5_q4.mat"))); });
    add("ce16-structure", "the [16,5]_4 code is projective, spanning, 4-divisible and not a 2-cylinder", Cost::Fast,
        [](const CheckContext& c) {
            auto g = fixture(c, "ce_16_5_q4.mat");
            auto s = points_from_code(g);
            std::ostringstream os;
            os << "projective=" << is_projective(g) << " spanning=" << is_spanning(s)
               << " divisible4=" << static_cast<bool>(is_divisible(s, 4))
               << " cylinder=" << (recognize_cylinder(s, 1) ? "found" : "none");
            return os.str();
        });
    add("ce16-prime-subfield", "the [16,5]_4 code read over GF(2) is the affine geometry AG(4,2)", Cost::Fast,
        [](const CheckContext& c) {
            auto g2 = reinterpret_prime_subfield(fixture(c, "ce_16_5_q4.mat"));
            auto s = points_from_code(g2);
            const bool ag = are_equivalent(s, affine_geometry(Field::of_order(2), s.v()));
            return format_weights(weight_distribution(g2)) + (ag ? " AG(4,2)" : " not-AG");
        });
    add("c10-code", "the unique projective [10,3,{6,7,8,10}]_5 code", Cost::Fast, [](const CheckContext& c) {
        auto g = fixture(c, "c_10_3_q5.mat");
        auto s = points_from_code(g);
        auto sp = spectrum(s);
        std::ostringstream os;
        os << format_weights(weight_distribution(g)) << " lines=(" << sp.at(0) << ',' << sp.at(2) << ',' << sp.at(3)
           << ',' << sp.at(4) << ") aut=" << code_automorphism_order(s);
        return os.str();
    });
    add("q5-unique-spectrum", "hyperplane spectrum of a non-cylinder for q = 5", Cost::Fast, [](const CheckContext&) {
        return tuples_string(enumerate_integer_spectra(divisible_system(4, 1, 5), std::set<long long>{0, 5, 10}));
    });
    add("q5-ten-plane", "line spectra of a 10-plane for q = 5", Cost::Fast, [](const CheckContext&) {
        auto sys = plane_line_system(5, 10, {0, 2, 3, 4});
        return forms_string(parametric_solve(sys, {0}), "b") + " | " +
               tuples_string(enumerate_integer_spectra(sys, std::nullopt)) + " | disjoint 4-lines: " +
               tuples_string(enumerate_integer_spectra(sys, std::nullopt, parse_constraints("a4<=2")));
    });
    add("q4-remark-spectrum", "standard equations alone for q = 4 without q(q-1)-planes", Cost::Fast,
        [](const CheckContext&) {
            return tuples_string(enumerate_integer_spectra(divisible_system(4, 1, 4), std::set<long long>{0, 4, 8}));
        });
    add("small-q-infeasible", "no non-cylinder for q in {3,4} by counting", Cost::Fast, [](const CheckContext&) {
        return "q3:" + tuples_string(enumerate_integer_spectra(divisible_system(4, 1, 3), std::set<long long>{0, 3})) +
               " q4:" +
               tuples_string(enumerate_integer_spectra(divisible_system(4, 1, 4), std::set<long long>{0, 4}));
    });
    add("plane-line-lemmas", "sets of q(q-i) plane points with few line multiplicities", Cost::Fast,
        [](const CheckContext&) {
            std::ostringstream os;
            int m1 = 0, m2 = 0;
            for (int q : {2, 3, 4, 5, 7, 8, 9}) {
                m1 += !enumerate_integer_spectra(plane_line_system(q, q * (q - 1), {0, q - 1}), std::nullopt).empty();
                if (q >= 4)
                    m2 += !enumerate_integer_spectra(plane_line_system(q, q * (q - 2), {0, q - 2, q - 1}), std::nullopt)
                               .empty();
            }
            os << "q(q-1):" << m1 << " q(q-2):" << m2 << " q(q-3):";
            for (int q : {7, 8, 9, 11, 13}) {
                auto s = enumerate_integer_spectra(plane_line_system(q, q * (q - 3), {0, q - 3, q - 2}), std::nullopt);
                if (!s.empty()) os << "q" << q << tuples_string(s);
            }
            os << " q4:" << tuples_string(enumerate_integer_spectra(plane_line_system(4, 8, {0, 2, 3}), std::nullopt))
               << "," << tuples_string(enumerate_integer_spectra(plane_line_system(4, 12, {0, 3}), std::nullopt));
            return os.str();
        });
    add("q7-21-point-spectrum", "21 points in PG(2,7) with line multiplicities in {0,3,4,5}", Cost::Fast,
        [](const CheckContext&) {
            auto sys = plane_line_system(7, 21, {0, 3, 4, 5});
            return tuples_string(enumerate_integer_spectra(sys, std::nullopt)) + " | a0>=8: " +
                   tuples_string(enumerate_integer_spectra(sys, std::nullopt, parse_constraints("a0>=8")));
        });
    add("q7-parametric", "hyperplane spectrum of a non-cylinder for q = 7", Cost::Fast, [](const CheckContext&) {
        auto sys = restrict_system(divisible_system(4, 1, 7), {0, 7, 14, 21});
        return forms_string(parametric_solve(sys, {21}), "a") + " | a21=0: " +
               tuples_string(enumerate_integer_spectra(sys, std::nullopt, parse_constraints("a21=0")));
    });
    add("q7-14-point-spectra", "14 points in PG(2,7) with line multiplicities in {0,2,3,4,5}", Cost::Fast,
        [](const CheckContext&) {
            return tuples_string(enumerate_integer_spectra(plane_line_system(7, 14, {0, 2, 3, 4, 5}), std::nullopt,
                                                           parse_constraints("a5<=1")));
        });
    add("q8-parametric", "hyperplane spectrum of a non-cylinder for q = 8", Cost::Fast, [](const CheckContext&) {
        auto sys = restrict_system(divisible_system(4, 1, 8), {0, 8, 16, 24});
        return forms_string(parametric_solve(sys, {24}), "a") + " | a24=0: " +
               tuples_string(enumerate_integer_spectra(sys, std::nullopt, parse_constraints("a24=0")));
    });
    add("q8-24-plane", "line spectra of a 24-plane for q = 8", Cost::Fast, [](const CheckContext&) {
        auto sys = plane_line_system(8, 24, {0, 3, 4, 5, 6});
        return forms_string(parametric_solve(sys, {0, 4}), "b") + " | 8<=b0<=9: " +
               tuples_string(enumerate_integer_spectra(sys, std::nullopt, parse_constraints("a0>=8,a0<=9")));
    });
    add("lp-bounds", "linear programming bounds on a_{q^r} and a_0", Cost::Fast,
        [](const CheckContext&) { return lp_grid(); });
    add("pencil-q7-points", "line distributions through a point of a 14-point set in PG(2,7)", Cost::Fast,
        [](const CheckContext&) { return pencils_string(count_pencil_distributions(7, 14, 1, {2, 3, 4}, {})); });
    add("pencil-q7-zero-line", "plane distributions through a 0-line of a 21-plane for q = 7", Cost::Fast,
        [](const CheckContext&) {
            return pencils_string(count_pencil_distributions(7, 49, 0, {0, 7, 14, 21}, {21}));
        });
    add("pencil-q8-24-plane", "line distributions through a 0-point on a 5-line of a 24-plane for q = 8", Cost::Fast,
        [](const CheckContext&) { return pencils_string(count_pencil_distributions(8, 24, 0, {0, 3, 5}, {5})); });
    add("pencil-q8-40-points", "line distributions through a 0-point on a 6-line, 40 points in PG(2,8)", Cost::Fast,
        [](const CheckContext&) { return pencils_string(count_pencil_distributions(8, 40, 0, {0, 5, 6}, {6})); });
    add("f4-n4-counts", "projective [4,k]_4 codes by dimension", Cost::Fast,
        [](const CheckContext& c) { return counts(4, 4, 4, std::nullopt, c); });
    add("f5-n5-counts", "projective [5,k]_5 codes by dimension", Cost::Fast,
        [](const CheckContext& c) { return counts(5, 5, 5, std::nullopt, c); });
    add("f4-n16-counts", "projective 4-divisible [16,k]_4 codes by dimension", Cost::Fast,
        [](const CheckContext& c) { return counts(4, 16, 6, 1, c); });
    add("f3-n9-counts", "projective 3-divisible [9,k]_3 codes by dimension", Cost::Fast,
        [](const CheckContext& c) { return counts(3, 9, 6, 1, c); });
    add("f2-n4-counts", "projective 2-divisible [4,k]_2 codes by dimension", Cost::Fast,
        [](const CheckContext& c) { return counts(2, 4, 4, 1, c); });
    for (auto [v, q] : {std::pair{4, 2}, {4, 3}, {4, 4}}) {
        add("conjecture-" + std::to_string(v) + "-1-" + std::to_string(q),
            "cylinder question for (" + std::to_string(v) + ",1," + std::to_string(q) + ")", Cost::Fast,
            [v, q](const CheckContext& c) { return report_string(conjecture_report(q, 1, v, false, c.jobs), nullptr); });
    }
    add("conjecture-5-1-4", "cylinder question for (5,1,4): a single subfield counterexample", Cost::Fast,
        [](const CheckContext& c) {
            auto ref = points_from_code(fixture(c, "ce_16_5_q4.mat"));
            return report_string(conjecture_report(4, 1, 5, false, c.jobs), &ref);
        });
    add("ce16-aut-order", "automorphism group of the [16,5]_4 code", Cost::Stretch, [](const CheckContext& c) {
        return std::to_string(code_automorphism_order(points_from_code(fixture(c, "ce_16_5_q4.mat")), true));
    });
    add("f5-n25-counts", "projective 5-divisible [25,k]_5 codes by dimension", Cost::Stretch,
        [](const CheckContext& c) { return counts(5, 25, 7, 1, c, true); });
    add("conjecture-6-2-4", "cylinder question for (6,2,4): uniqueness of the counterexample", Cost::Stretch,
        [](const CheckContext& c) {
            auto ref = lift(points_from_code(fixture(c, "ce_16_5_q4.mat")));
            return report_string(conjecture_report(4, 2, 6, true, c.jobs), &ref, false);
        });
    add("q7-14-point-nonexistence", "no 14 points in PG(2,7) with line multiplicities in {0,2,3,4,5}", Cost::Stretch,
        [](const CheckContext& c) {
            ClassificationTask t;
            t.q = 7;
            t.n = 14;
            t.v_min = t.v_max = 3;
            t.allowed = std::set<long long>{0, 2, 3, 4, 5};
            t.stretch = true;
            t.jobs = c.jobs;
            auto cls = enumerate_divisible_sets(t);
            return std::to_string(cls.by_dim[3].size()) + " sets";
        });
    return r;
}

}  // namespace

std::string cost_name(Cost c) {
    switch (c) {
    case Cost::Fast: return "fast";
    case Cost::Minutes: return "minutes";
    case Cost::Stretch: return "stretch";
    }
    return "?";
}

const std::vector<CheckDescriptor>& check_registry() {
    static const std::vector<CheckDescriptor> r = build_registry();
    return r;
}

const CheckDescriptor* find_check(const std::string& name) {
    for (const auto& d : check_registry())
        if (d.name == name) return &d;
    return nullptr;
}

std::string default_fixture_dir() {
    if (const char* env = std::getenv("DIVCYL_FIXTURES"); env && *env) return env;
    return std::string(DIVCYL_SOURCE_DIR) + "/fixtures";
}

CheckReport run_check(const CheckDescriptor& d, const CheckContext& ctx) {
    CheckReport rep;
    rep.check = d.name;
    rep.anchor = d.anchor;
    std::ifstream in(ctx.fixtures + "/expected.json");
    if (!in) throw FormatError("missing fixture " + ctx.fixtures + "/expected.json");
    const auto expected = nlohmann::json::parse(in);
    if (!expected.contains(d.name)) throw FormatError("no expected value for check " + d.name);
    rep.expected = expected[d.name].at("expected").get<std::string>();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        rep.actual = d.actual(ctx);
        rep.status = rep.actual == rep.expected ? "PASS" : "FAIL";
    } catch (const std::exception& e) {
        rep.actual = std::string("error: ") + e.what();
        rep.status = "ERROR";
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

nlohmann::json report_json(const CheckReport& r) {
    return nlohmann::json{{"check", r.check},       {"anchor", r.anchor}, {"status", r.status},
                          {"expected", r.expected}, {"actual", r.actual}, {"seconds", r.seconds}};
}

}  // namespace divcyl
