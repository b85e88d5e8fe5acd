#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "divcyl/analysis.hpp"
#include "divcyl/canon.hpp"
#include "divcyl/classify.hpp"
#include "divcyl/code.hpp"
#include "divcyl/cylinder.hpp"
#include "divcyl/io.hpp"
#include "divcyl/solver.hpp"
#include "divcyl/verify.hpp"

using namespace divcyl;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "text";
    int jobs = 0;
    std::string modulus;
};

Options g;

bool as_json() { return g.format == "json"; }

int jobs() {
    if (g.jobs > 0) return g.jobs;
    if (const char* env = std::getenv("DIVCYL_JOBS"); env && *env) return std::max(1, std::atoi(env));
    return 1;
}

std::optional<std::vector<int>> modulus() {
    if (g.modulus.empty()) return std::nullopt;
    return parse_modulus(g.modulus);
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::set<long long> parse_list(const std::string& text) {
    std::set<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.insert(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad list entry '" + tok + "'");
        }
    }
    return out;
}

std::string tuple_text(const ExactSystem& sys, const SpectrumSolution& s) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < sys.vars.size(); ++i) os << (i ? "," : "") << s.at(sys.vars[i]);
    os << ')';
    return os.str();
}

std::string header_text(const ExactSystem& sys) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < sys.vars.size(); ++i) os << (i ? "," : "") << 'a' << sys.vars[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& input, int codim) {
    auto m = read_points_any(input, modulus());
    auto s = spectrum(m, codim);
    if (as_json()) {
        emit(json::parse(spectrum_json(s).dump()));
        return 0;
    }
    std::cout << "n " << s.n << " v " << s.v << " q " << s.q << " codim " << s.codim << '\n';
    for (const auto& [i, c] : s.a) std::cout << "a" << i << ' ' << c << '\n';
    return 0;
}

int cmd_divisible(const std::string& input, long long delta) {
    if (delta < 1) throw UsageError("--delta must be positive");
    auto m = read_points_any(input, modulus());
    auto r = is_divisible(m, delta);
    if (as_json()) {
        json j{{"delta", delta}, {"divisible", r.divisible}, {"n", m.size()}};
        if (r.witness) j["witness_normal"] = vec_string(r.witness->normal);
        emit(j);
        return 0;
    }
    if (r.divisible)
        std::cout << "divisible by " << delta << '\n';
    else
        std::cout << "not divisible by " << delta << ": hyperplane " << vec_string(r.witness->normal) << '\n';
    return 0;
}

// ---------------------------------------------------------------- cylinder

void write_or_print(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw FormatError("cannot write " + output);
    out << text;
}

int cmd_cylinder_check(const std::string& input, int r, bool exhaustive) {
    auto m = read_points_any(input, modulus());
    if (!m.is_set()) throw UsageError("cylinder recognition is defined for sets, not multisets");
    auto w = exhaustive ? recognize_cylinder_exhaustive(m, r) : recognize_cylinder(m, r);
    if (as_json()) {
        json j{{"r", r}, {"cylinder", w.has_value()}};
        if (w) j["witness"] = json::parse(witness_json(*w).dump());
        emit(j);
        return 0;
    }
    if (!w) {
        std::cout << "not a cylinder (r = " << r << ")\n";
        return 0;
    }
    std::cout << "axis";
    for (const auto& b : w->axis.basis()) std::cout << ' ' << vec_string(b);
    std::cout << '\n';
    for (size_t i = 0; i < w->reps.size(); ++i) std::cout << "part " << vec_string(w->reps[i]) << ' ' << w->parts[i].size() << '\n';
    return 0;
}

int cmd_cylinder_make(const std::string& input, int r, const std::string& output) {
    auto base = read_points_any(input, modulus());
    write_or_print(write_point_set(construct_cylinder(base, r).points), output);
    return 0;
}

int cmd_cylinder_lift(const std::string& input, const std::string& output) {
    write_or_print(write_point_set(lift(read_points_any(input, modulus()))), output);
    return 0;
}

int cmd_cylinder_embed(const std::string& input, int h, const std::string& output) {
    write_or_print(write_point_set(subfield_embed(read_points_any(input, modulus()), h)), output);
    return 0;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    int q = 0, v = 0, r = 1;
    long long n = -1;
    std::string allowed, fix, bound, free;
    bool spanning = false;
};

int cmd_solve(const std::string& kind, const SolveArgs& a) {
    ExactSystem sys;
    std::optional<std::set<long long>> allowed;
    if (!a.allowed.empty()) allowed = parse_list(a.allowed);
    if (a.q < 2) throw UsageError("--q is required");
    if (kind == "standard") {
        if (a.n < 0 || a.v < 2) throw UsageError("solve standard needs --n and --v");
        sys = standard_system(a.n, a.v, a.q, a.spanning);
    } else if (kind == "divisible") {
        if (a.v < 2) throw UsageError("solve divisible needs --v");
        sys = divisible_system(a.v, a.r, a.q);
    } else {
        if (a.n < 0) throw UsageError("solve plane needs --n");
        std::set<long long> all;
        for (long long i = 0; i <= a.n; ++i) all.insert(i);
        sys = plane_line_system(a.q, a.n, allowed ? *allowed : all);
    }
    if (allowed) sys = restrict_system(sys, *allowed);
    const auto extra = parse_constraints(a.fix);
    json j{{"system", kind}, {"variables", sys.vars}};

    if (!a.bound.empty()) {
        const auto colon = a.bound.find(':');
        if (colon == std::string::npos || a.bound[0] != 'a') throw UsageError("--bound expects a<i>:min|max");
        const long long idx = std::stoll(a.bound.substr(1, colon - 1));
        const std::string dir = a.bound.substr(colon + 1);
        if (dir != "min" && dir != "max") throw UsageError("--bound expects a<i>:min|max");
        auto val = bound_spectrum_value(sys, idx, dir == "min" ? Direction::Min : Direction::Max, extra);
        if (as_json()) {
            j["bound"] = {{"index", idx}, {"direction", dir}, {"value", val ? rational_string(*val) : "infeasible"}};
        } else {
            std::cout << dir << " a" << idx << " = " << (val ? rational_string(*val) : "infeasible") << '\n';
        }
    }
    if (!a.free.empty()) {
        auto fv = parse_list(a.free);
        auto forms = parametric_solve(sys, std::vector<long long>(fv.begin(), fv.end()));
        json pj = json::object();
        for (const auto& [i, f] : forms) {
            pj["a" + std::to_string(i)] = f.str();
            if (!as_json()) std::cout << "a" << i << " = " << f.str() << '\n';
        }
        j["parametric"] = pj;
    }
    if (a.bound.empty() && a.free.empty()) {
        auto sols = enumerate_integer_spectra(sys, std::nullopt, extra);
        json arr = json::array();
        for (const auto& s : sols) {
            json row = json::array();
            for (long long v : sys.vars) row.push_back(s.at(v).convert_to<long long>());
            arr.push_back(row);
        }
        j["solutions"] = arr;
        if (!as_json()) {
            std::cout << header_text(sys) << '\n';
            if (sols.empty()) std::cout << "no nonnegative integer solution\n";
            for (const auto& s : sols) std::cout << tuple_text(sys, s) << '\n';
        }
    }
    if (as_json()) emit(j);
    return 0;
}

// ---------------------------------------------------------------- code

int cmd_code(const std::string& kind, const std::string& input, const std::string& codeword, bool aut, bool stretch) {
    auto g = read_matrix_file(input, modulus());
    if (kind == "weights") {
        auto w = weight_distribution(g);
        if (as_json())
            emit(json{{"weights", json::parse(weights_json(w).dump())}, {"enumerator", format_weights(w)},
                      {"projective", is_projective(g)}});
        else
            std::cout << format_weights(w) << '\n';
        return 0;
    }
    if (kind == "residual") {
        if (codeword.empty()) throw UsageError("code residual needs --codeword");
        Vec c;
        for (char ch : codeword) {
            if (ch < '0' || ch > '9') throw UsageError("codeword digits expected");
            c.push_back(static_cast<Elem>(ch - '0'));
        }
        auto res = residual_code(g, c);
        if (as_json())
            emit(json{{"matrix", write_matrix(res)}});
        else
            std::cout << write_matrix(res);
        return 0;
    }
    auto pts = points_from_code(g);
    CanonOptions opt{aut, stretch};
    auto form = canonical_form(pts, opt);
    auto rep = code_from_points(form.representative(g.field));
    if (as_json()) {
        json j{{"k", form.k}, {"matrix", write_matrix(rep)}};
        json key = json::array();
        for (const auto& [r, m] : form.key) key.push_back({r, m});
        j["key"] = key;
        if (aut) j["automorphisms"] = code_automorphism_order(pts, stretch);
        emit(j);
    } else {
        std::cout << write_matrix(rep);
        if (aut) std::cout << "automorphism group order " << code_automorphism_order(pts, stretch) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(ClassificationTask t, const std::string& outdir, bool flags) {
    t.jobs = jobs();
    if (t.v_max < t.v_min) t.v_max = t.v_min;
    auto res = enumerate_divisible_sets(t);
    json index = json::object();
    json stats = json::array();
    for (const auto& s : res.log)
        stats.push_back({{"k", s.k}, {"n", s.n}, {"max_mult", s.mu}, {"quotients", s.quotients},
                         {"candidates", s.candidates}, {"classes", s.classes}});
    for (const auto& [v, cls] : res.by_dim) {
        json arr = json::array();
        for (size_t i = 0; i < cls.size(); ++i) {
            const std::string id = "k" + std::to_string(v) + "_" + std::to_string(i + 1);
            json entry{{"id", id}, {"weights", format_weights(weight_distribution(code_from_points(cls[i].rep)))}};
            if (flags && t.r) {
                entry["cylinder"] = recognize_cylinder(cls[i].rep, *t.r).has_value();
                entry["affine_geometry"] = is_affine_geometry(cls[i].rep);
                entry["subfield_embedded"] = is_subfield_embedded(cls[i].rep);
            }
            arr.push_back(entry);
            if (!outdir.empty()) {
                std::filesystem::create_directories(outdir);
                std::ofstream out(outdir + "/" + id + ".mat");
                out << write_matrix(code_from_points(cls[i].rep));
            }
        }
        index[std::to_string(v)] = arr;
    }
    if (!outdir.empty()) {
        std::ofstream out(outdir + "/index.json");
        out << json{{"classes", index}, {"log", stats}}.dump(2) << '\n';
    }
    if (as_json()) {
        emit(json{{"counts", res.counts_string()}, {"classes", index}, {"log", stats}});
        return 0;
    }
    std::cout << "counts " << (res.counts_string().empty() ? "none" : res.counts_string()) << '\n';
    for (const auto& [v, arr] : index.items())
        for (const auto& e : arr) {
            std::cout << e["id"].get<std::string>() << ' ' << e["weights"].get<std::string>();
            if (e.contains("cylinder"))
                std::cout << (e["cylinder"].get<bool>() ? " cylinder" : " not-cylinder")
                          << (e["subfield_embedded"].get<bool>() ? " subfield" : "");
            std::cout << '\n';
        }
    return 0;
}

// ---------------------------------------------------------------- verify-paper

int cmd_verify(const std::vector<std::string>& names, bool stretch, const std::string& fixtures) {
    CheckContext ctx{fixtures.empty() ? default_fixture_dir() : fixtures, jobs()};
    std::vector<const CheckDescriptor*> sel;
    if (names.empty()) {
        for (const auto& d : check_registry())
            if (stretch || d.cost != Cost::Stretch) sel.push_back(&d);
    } else {
        for (const auto& n : names) {
            const auto* d = find_check(n);
            if (!d) throw UsageError("unknown check '" + n + "'");
            sel.push_back(d);
        }
    }
    bool ok = true;
    json arr = json::array();
    for (const auto* d : sel) {
        auto rep = run_check(*d, ctx);
        ok = ok && rep.status == "PASS";
        if (as_json()) {
            arr.push_back(report_json(rep));
        } else {
            std::cout << rep.status << ' ' << rep.check << " [" << rep.anchor << "] " << rep.actual;
            if (rep.status != "PASS") std::cout << " (expected " << rep.expected << ')';
            std::cout << '\n';
        }
    }
    if (as_json()) emit(arr);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisible point sets, cylinders and divisible codes over small fields"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--jobs", g.jobs, "worker threads (default $DIVCYL_JOBS or 1)");
    app.add_option("--modulus", g.modulus, "field modulus, low degree first, e.g. 1,1,1");

    std::string input, output, codeword;
    int codim = 1, r = 1, h = 2;
    long long delta = 0;
    bool exhaustive = false, aut = false, stretch = false, flags = false;

    auto* sp = app.add_subcommand("spectrum", "hyperplane (or codimension-j) spectrum");
    sp->add_option("--input", input)->required();
    sp->add_option("--codim", codim);

    auto* dv = app.add_subcommand("divisible", "test q^r-divisibility");
    dv->add_option("--input", input)->required();
    dv->add_option("--delta", delta)->required();

    auto* cy = app.add_subcommand("cylinder", "cylinder operations");
    cy->require_subcommand(1);
    auto* cyc = cy->add_subcommand("check", "recognize an (r+1)-cylinder");
    cyc->add_option("--input", input)->required();
    cyc->add_option("--r", r);
    cyc->add_flag("--exhaustive", exhaustive);
    auto* cym = cy->add_subcommand("make", "cylinder over a base point set");
    cym->add_option("--input", input)->required();
    cym->add_option("--r", r);
    cym->add_option("--output", output);
    auto* cyl = cy->add_subcommand("lift", "lift to one dimension higher");
    cyl->add_option("--input", input)->required();
    cyl->add_option("--output", output);
    auto* cye = cy->add_subcommand("embed", "embed into GF(q^h)");
    cye->add_option("--input", input)->required();
    cye->add_option("--degree", h, "extension degree");
    cye->add_option("--output", output);

    SolveArgs sa;
    auto* so = app.add_subcommand("solve", "standard equations");
    so->require_subcommand(1);
    std::vector<CLI::App*> solve_cmds;
    for (const char* kind : {"standard", "divisible", "plane"}) {
        auto* s = so->add_subcommand(kind, std::string(kind) + " system");
        s->add_option("--q", sa.q)->required();
        s->add_option("--v", sa.v);
        s->add_option("--n", sa.n);
        s->add_option("--r", sa.r);
        s->add_option("--allowed", sa.allowed, "indices allowed to be nonzero, e.g. 0,7,14,21");
        s->add_option("--fix", sa.fix, "constraints, e.g. a21=0,a5<=1");
        s->add_option("--bound", sa.bound, "a<i>:min|max");
        s->add_option("--free", sa.free, "free indices for a parametric solution");
        s->add_flag("--spanning", sa.spanning);
        solve_cmds.push_back(s);
    }

    auto* co = app.add_subcommand("code", "linear code operations");
    co->require_subcommand(1);
    std::vector<CLI::App*> code_cmds;
    for (const char* kind : {"weights", "residual", "canon"}) {
        auto* c = co->add_subcommand(kind, kind);
        c->add_option("--input", input)->required();
        if (std::string(kind) == "residual") c->add_option("--codeword", codeword);
        if (std::string(kind) == "canon") {
            c->add_flag("--aut", aut, "also compute the automorphism group order");
            c->add_flag("--stretch", stretch);
        }
        code_cmds.push_back(c);
    }

    ClassificationTask task;
    int rr = -1, vmin = 1, vmax = 0;
    bool projective = false;
    auto* en = app.add_subcommand("enumerate", "classify divisible point sets");
    en->add_option("--q", task.q)->required();
    en->add_option("--n", task.n)->required();
    en->add_option("--r", rr);
    en->add_flag("--projective", projective);
    en->add_option("--max-mult", task.max_mult);
    en->add_option("--vmin", vmin);
    en->add_option("--vmax", vmax);
    std::string allowed_h, outdir;
    en->add_option("--allowed", allowed_h, "allowed hyperplane multiplicities");
    en->add_option("--output", outdir, "directory for class matrices and index.json");
    en->add_flag("--flags", flags, "cylinder / affine / subfield flags per class");
    en->add_flag("--stretch", stretch);

    std::vector<std::string> checks;
    std::string fixtures;
    auto* vp = app.add_subcommand("verify-paper", "run the reproduction checks");
    vp->add_option("--check", checks);
    vp->add_flag("--stretch", stretch);
    vp->add_option("--fixtures", fixtures);
    bool list = false;
    vp->add_flag("--list", list);
    for (auto* sub : {sp, dv, cyc, cym, cyl, cye, en, vp}) sub->add_option("--jobs", g.jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sp) return cmd_spectrum(input, codim);
        if (*dv) return cmd_divisible(input, delta);
        if (*cyc) return cmd_cylinder_check(input, r, exhaustive);
        if (*cym) return cmd_cylinder_make(input, r, output);
        if (*cyl) return cmd_cylinder_lift(input, output);
        if (*cye) return cmd_cylinder_embed(input, h, output);
        for (auto* s : solve_cmds)
            if (*s) return cmd_solve(s->get_name(), sa);
        for (auto* c : code_cmds)
            if (*c) return cmd_code(c->get_name(), input, codeword, aut, stretch);
        if (*en) {
            if (rr >= 0) task.r = rr;
            task.projective = projective || task.max_mult <= 1;
            task.v_min = vmin;
            task.v_max = vmax > 0 ? vmax : static_cast<int>(std::min<long long>(task.n, 6));
            task.stretch = stretch;
            if (!allowed_h.empty()) task.allowed = parse_list(allowed_h);
            return cmd_enumerate(task, outdir, flags);
        }
        if (*vp) {
            if (list) {
                for (const auto& d : check_registry())
                    std::cout << d.name << ' ' << cost_name(d.cost) << ' ' << d.anchor << '\n';
                return 0;
            }
            return cmd_verify(checks, stretch, fixtures);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 2;
    } catch (const CanonError& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
