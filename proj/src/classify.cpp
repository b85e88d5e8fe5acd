#include "divcyl/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "divcyl/cylinder.hpp"

namespace divcyl {

namespace {

constexpr std::uint64_t kMaxHalf = 20'000'000;
// Applies with --stretch too: the stored half costs 16 bytes per entry.
constexpr std::uint64_t kHardMaxHalf = 100'000'000;

// DIVCYL_TRACE=1 prints one line per lifting step to stderr.
bool tracing() {
    static const bool on = [] {
        const char* e = std::getenv("DIVCYL_TRACE");
        return e && *e && *e != '0';
    }();
    return on;
}
constexpr std::uint64_t kMaxResidueLength = 1024;

using Residues = std::vector<std::uint16_t>;

std::uint64_t hash_residues(const std::uint16_t* r, size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= r[i];
        h *= 1099511628211ull;
    }
    return h;
}

Vec digits(std::uint64_t index, int len, int q) {
    Vec out(len);
    for (int i = len - 1; i >= 0; --i) {
        out[i] = static_cast<Elem>(index % q);
        index /= q;
    }
    return out;
}

template <class F>
void parallel_for(size_t count, int jobs, F&& body) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// Lifts a quotient class from the centre e_1 with multiplicity c.
class Lifter {
public:
    Lifter(const PointMultiset& quotient, int c, long long n, long long delta,
           const std::optional<std::set<long long>>& allowed, bool stretch)
        : f_(quotient.field()), q_(quotient.q()), k_(quotient.v() + 1), c_(c), n_(n), delta_(delta),
          allowed_(allowed), stretch_(stretch) {
        len_ = ipow(q_, k_ - 1);
        for (const auto& [id, m] : quotient.counts()) {
            xs_.push_back(quotient.space().point(id));
            mult_.push_back(m);
        }
        build_options();
    }

    std::vector<PointMultiset> run() {
        std::vector<PointMultiset> out;
        const size_t s = xs_.size();
        for (const auto& o : options_)
            if (o.empty()) return out;
        // Balance the two halves by the number of combinations.
        double total = 0;
        for (const auto& o : options_) total += std::log(static_cast<double>(o.size()));
        size_t split = 0;
        double acc = 0;
        while (split < s && acc + std::log(static_cast<double>(options_[split].size())) <= total / 2 + 1e-9) {
            acc += std::log(static_cast<double>(options_[split].size()));
            ++split;
        }
        const std::uint64_t left = combos(0, split), right = combos(split, s);
        if (!stretch_ && (left > kMaxHalf || right > kMaxHalf))
            throw GuardError("lifting step exceeds the desk-scale guard");
        if (tracing())
            std::cerr << "lift k=" << k_ << " n=" << n_ << " c=" << c_ << " support=" << s << " halves=" << left << "x"
                      << right << std::endl;
        if (allowed_ && delta_ == 1) return run_bounded();
        if (left > kHardMaxHalf)
            throw GuardError("lifting step needs " + std::to_string(left) +
                             " stored combinations, beyond the memory limit even with --stretch");

        std::vector<std::pair<std::uint64_t, std::uint64_t>> table;  // (hash, mixed-radix choice)
        table.reserve(static_cast<size_t>(std::min<std::uint64_t>(left, 1u << 26)));
        std::vector<int> choice(s, 0);
        Residues accum(probe_.size(), 0);
        walk(0, split, choice, accum, [&](const std::vector<int>& ch, const Residues& r) {
            table.emplace_back(hash_residues(r.data(), r.size()), encode(ch, split));
        });
        std::sort(table.begin(), table.end());
        const std::uint16_t target = static_cast<std::uint16_t>(n_ % delta_);
        Residues need(probe_.size()), check(probe_.size());
        std::fill(accum.begin(), accum.end(), 0);
        std::vector<int> full(s);
        walk(split, s, choice, accum, [&](const std::vector<int>& ch, const Residues& r) {
            for (size_t h = 0; h < r.size(); ++h)
                need[h] = static_cast<std::uint16_t>((target + delta_ - r[h]) % delta_);
            const std::uint64_t key = hash_residues(need.data(), need.size());
            auto it = std::lower_bound(table.begin(), table.end(), std::pair<std::uint64_t, std::uint64_t>{key, 0});
            for (; it != table.end() && it->first == key; ++it) {
                decode(it->second, split, full);
                std::fill(check.begin(), check.end(), 0);
                for (size_t i = 0; i < split; ++i) add(check, contrib_[i][full[i]]);
                if (check != need) continue;
                std::copy(ch.begin() + split, ch.end(), full.begin() + split);
                if (auto m = build(full)) out.push_back(std::move(*m));
            }
        });
        return out;
    }

private:
    // Without a modulus the residue match is empty, so search depth-first on
    // the raw counts instead. Point i adds at most min(c, m_i) to a hyperplane
    // missing the centre; a branch dies once some count can no longer reach
    // an allowed value.
    std::vector<PointMultiset> run_bounded() {
        std::vector<PointMultiset> out;
        const size_t s = xs_.size();
        std::vector<long long> room(s + 1, 0);
        for (size_t i = s; i-- > 0;) room[i] = room[i + 1] + std::min(c_, mult_[i]);
        std::vector<long long> cnt(len_, 0);
        std::vector<int> choice(s, 0);
        auto reachable = [&](long long lo, long long hi) {
            auto it = allowed_->lower_bound(lo);
            return it != allowed_->end() && *it <= hi;
        };
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == s) {
                if (auto m = build(choice)) out.push_back(std::move(*m));
                return;
            }
            for (size_t o = 0; o < options_[i].size(); ++o) {
                const auto& w = options_[i][o];
                bool ok = true;
                for (std::uint64_t h = 0; h < len_; ++h) {
                    cnt[h] += w[shift_[i][h]];
                    ok = ok && reachable(cnt[h], cnt[h] + room[i + 1]);
                }
                if (ok) {
                    choice[i] = static_cast<int>(o);
                    rec(i + 1);
                }
                for (std::uint64_t h = 0; h < len_; ++h) cnt[h] -= w[shift_[i][h]];
            }
        };
        rec(0);
        return out;
    }

    std::uint64_t encode(const std::vector<int>& ch, size_t end) const {
        std::uint64_t code = 0;
        for (size_t i = end; i-- > 0;) code = code * options_[i].size() + static_cast<std::uint64_t>(ch[i]);
        return code;
    }

    void decode(std::uint64_t code, size_t end, std::vector<int>& ch) const {
        for (size_t i = 0; i < end; ++i) {
            ch[i] = static_cast<int>(code % options_[i].size());
            code /= options_[i].size();
        }
    }

    // Hyperplanes whose residues are matched. Over a prime field with modulus
    // q, the count mod q of the hyperplane y_0 = l(y') is a polynomial of total
    // degree < q in l, so the points l with digit sum < q determine it.
    void choose_probes() {
        probe_.clear();
        const bool reduced = f_.h() == 1 && delta_ == q_;
        for (std::uint64_t h = 0; h < len_; ++h) {
            if (reduced) {
                int sum = 0;
                for (Elem d : digits(h, k_ - 1, q_)) sum += d;
                if (sum >= q_) continue;
            }
            probe_.push_back(h);
        }
    }

    void build_options() {
        choose_probes();
        // Independent support points fix the shear t -> t + l(x).
        std::vector<Vec> basis;
        std::vector<bool> normalized(xs_.size(), false);
        for (size_t i = 0; i < xs_.size(); ++i) {
            auto trial = basis;
            trial.push_back(xs_[i]);
            if (rank(f_, trial) == static_cast<int>(trial.size())) {
                basis = std::move(trial);
                normalized[i] = true;
            }
        }
        shift_.assign(xs_.size(), std::vector<Elem>(len_));
        for (size_t i = 0; i < xs_.size(); ++i)
            for (std::uint64_t h = 0; h < len_; ++h) {
                Vec hv = digits(h, k_ - 1, q_);
                Elem d = 0;
                for (int j = 0; j < k_ - 1; ++j) d = f_.add(d, f_.mul(hv[j], xs_[i][j]));
                shift_[i][h] = f_.neg(d);
            }
        for (size_t i = 0; i < xs_.size(); ++i) {
            std::vector<std::vector<int>> opts;
            std::vector<int> w(q_, 0);
            std::function<void(int, int)> rec = [&](int t, int left) {
                if (t == q_ - 1) {
                    if (left > c_) return;
                    w[t] = left;
                    if (!normalized[i] || translation_minimal(w)) opts.push_back(w);
                    return;
                }
                for (int a = 0; a <= std::min(c_, left); ++a) {
                    w[t] = a;
                    rec(t + 1, left - a);
                }
            };
            rec(0, mult_[i]);
            std::vector<Residues> cs;
            for (const auto& o : opts) {
                Residues r(probe_.size());
                for (size_t j = 0; j < probe_.size(); ++j)
                    r[j] = static_cast<std::uint16_t>(o[shift_[i][probe_[j]]] % delta_);
                cs.push_back(std::move(r));
            }
            options_.push_back(std::move(opts));
            contrib_.push_back(std::move(cs));
        }
    }

    bool translation_minimal(const std::vector<int>& w) const {
        std::vector<int> t(q_);
        for (int s = 1; s < q_; ++s) {
            for (int x = 0; x < q_; ++x) t[x] = w[f_.sub(static_cast<Elem>(x), static_cast<Elem>(s))];
            if (t < w) return false;
        }
        return true;
    }

    std::uint64_t combos(size_t from, size_t to) const {
        std::uint64_t p = 1;
        for (size_t i = from; i < to; ++i) {
            p *= options_[i].size();
            if (p > (1ull << 62) / 64) return p;
        }
        return p;
    }

    void add(Residues& acc, const Residues& r) const {
        for (size_t h = 0; h < acc.size(); ++h) {
            acc[h] = static_cast<std::uint16_t>(acc[h] + r[h]);
            if (acc[h] >= delta_) acc[h] = static_cast<std::uint16_t>(acc[h] - delta_);
        }
    }

    void sub(Residues& acc, const Residues& r) const {
        for (size_t h = 0; h < acc.size(); ++h)
            acc[h] = static_cast<std::uint16_t>(acc[h] >= r[h] ? acc[h] - r[h] : acc[h] + delta_ - r[h]);
    }

    template <class Leaf>
    void walk(size_t i, size_t end, std::vector<int>& choice, Residues& acc, Leaf&& leaf) {
        if (i == end) {
            leaf(choice, acc);
            return;
        }
        for (size_t o = 0; o < options_[i].size(); ++o) {
            choice[i] = static_cast<int>(o);
            add(acc, contrib_[i][o]);
            walk(i + 1, end, choice, acc, leaf);
            sub(acc, contrib_[i][o]);
        }
    }

    std::optional<PointMultiset> build(const std::vector<int>& choice) const {
        for (std::uint64_t h = 0; h < len_; ++h) {
            long long cnt = 0;
            for (size_t i = 0; i < xs_.size(); ++i) cnt += options_[i][choice[i]][shift_[i][h]];
            if (cnt % delta_ != n_ % delta_) return std::nullopt;
            if (allowed_ && !allowed_->count(cnt)) return std::nullopt;
        }
        Space space(f_, k_);
        PointMultiset m(space);
        Vec centre(k_, 0);
        centre[0] = 1;
        m.add(centre, c_);
        Vec y(k_);
        for (size_t i = 0; i < xs_.size(); ++i) {
            const auto& w = options_[i][choice[i]];
            std::copy(xs_[i].begin(), xs_[i].end(), y.begin() + 1);
            for (int t = 0; t < q_; ++t) {
                if (!w[t]) continue;
                y[0] = static_cast<Elem>(t);
                m.add(y, w[t]);
            }
        }
        return m;
    }

    Field f_;
    int q_, k_, c_;
    long long n_, delta_;
    const std::optional<std::set<long long>>& allowed_;
    bool stretch_;
    std::uint64_t len_ = 0;
    std::vector<std::uint64_t> probe_;
    std::vector<Vec> xs_;
    std::vector<int> mult_;
    std::vector<std::vector<Elem>> shift_;
    std::vector<std::vector<std::vector<int>>> options_;
    std::vector<std::vector<Residues>> contrib_;
};

class Engine {
public:
    Engine(Field f, long long delta, int jobs, bool stretch)
        : f_(std::move(f)), delta_(delta), jobs_(jobs), stretch_(stretch) {}

    const std::vector<ClassifiedSet>& classes(int k, long long n, int mu,
                                              const std::optional<std::set<long long>>& allowed) {
        mu = static_cast<int>(std::min<long long>(mu, n));
        auto key = std::make_tuple(k, n, mu, allowed);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<ClassifiedSet> out;
        LevelStats st{k, n, mu, 0, 0, 0};
        const CanonOptions copt{false, stretch_};
        if (k == 1) {
            if (n >= 1 && n <= mu && n % delta_ == 0 && (!allowed || allowed->count(0))) {
                PointMultiset m(Space(f_, 1));
                m.add(Vec{1}, static_cast<int>(n));
                auto form = canonical_form(m, copt);
                out.push_back({1, form, form.representative(f_)});
            }
        } else {
            std::map<CanonicalForm, PointMultiset> found;
            for (int c = 1; c <= mu && n - c >= k - 1; ++c) {
                std::optional<std::set<long long>> shifted;
                if (allowed) {
                    shifted.emplace();
                    for (long long a : *allowed)
                        if (a >= c) shifted->insert(a - c);
                }
                const auto& subs = classes(k - 1, n - c, f_.q() * c, shifted);
                st.quotients += static_cast<long long>(subs.size());
                const auto t0 = std::chrono::steady_clock::now();
                std::vector<std::vector<CanonicalForm>> forms(subs.size());
                std::vector<long long> cands(subs.size(), 0);
                parallel_for(subs.size(), jobs_, [&](size_t i) {
                    auto lifts = Lifter(subs[i].rep, c, n, delta_, allowed, stretch_).run();
                    cands[i] = static_cast<long long>(lifts.size());
                    for (const auto& m : lifts) forms[i].push_back(canonical_form(m, copt));
                });
                if (tracing())
                    std::cerr << "level k=" << k << " n=" << n << " c=" << c << " quotients=" << subs.size() << " "
                              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s"
                              << std::endl;
                for (size_t i = 0; i < subs.size(); ++i) {
                    st.candidates += cands[i];
                    for (auto& form : forms[i])
                        if (!found.count(form)) found.emplace(form, form.representative(f_));
                }
            }
            for (auto& [form, rep] : found) out.push_back({k, form, std::move(rep)});
        }
        st.classes = static_cast<long long>(out.size());
        log_.push_back(st);
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::vector<LevelStats> log_;

private:
    Field f_;
    long long delta_;
    int jobs_;
    bool stretch_;
    std::map<std::tuple<int, long long, int, std::optional<std::set<long long>>>, std::vector<ClassifiedSet>> memo_;
};

}  // namespace

std::map<int, long long> Classification::counts() const {
    std::map<int, long long> out;
    for (const auto& [d, cls] : by_dim)
        if (!cls.empty()) out[d] = static_cast<long long>(cls.size());
    return out;
}

std::string Classification::counts_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : counts()) {
        os << (first ? "" : ",") << d << ':' << c;
        first = false;
    }
    return os.str();
}

void check_guard(const ClassificationTask& task) {
    if (task.stretch) return;
    if (task.n > 64) throw GuardError("classification needs n <= 64 (use --stretch)");
    if (task.v_max >= 1 && ipow(task.q, task.v_max - 1) > kMaxResidueLength)
        throw GuardError("classification needs q^(v-1) <= 1024 (use --stretch)");
}

Classification enumerate_divisible_sets(const ClassificationTask& task) {
    if (task.n < 1 || task.v_min < 1 || task.v_max < task.v_min)
        throw std::invalid_argument("classification needs n >= 1 and 1 <= v_min <= v_max");
    check_guard(task);
    const Field f = Field::of_order(task.q);
    const long long delta = task.r ? static_cast<long long>(ipow(task.q, *task.r)) : 1;
    if (delta > 65535) throw GuardError("divisor too large");
    Engine engine(f, delta, task.jobs, task.stretch);
    Classification out;
    const int mu = task.projective ? 1 : task.max_mult;
    for (int v = task.v_min; v <= task.v_max; ++v) out.by_dim[v] = engine.classes(v, task.n, mu, task.allowed);
    out.log = engine.log_;
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Vacuous: return "vacuous";
    }
    return "?";
}

ConjectureReport conjecture_report(int q, int r, int v, bool stretch, int jobs) {
    ClassificationTask task;
    task.q = q;
    task.n = static_cast<long long>(ipow(q, r + 1));
    task.v_min = task.v_max = v;
    task.r = r;
    task.stretch = stretch;
    task.jobs = jobs;
    ConjectureReport rep;
    rep.v = v;
    rep.r = r;
    rep.q = q;
    rep.classes = enumerate_divisible_sets(task).by_dim[v];
    bool all = true;
    for (const auto& c : rep.classes) {
        ClassFlags fl;
        fl.cylinder = recognize_cylinder(c.rep, r).has_value();
        fl.affine_geometry = is_affine_geometry(c.rep);
        fl.subfield_embedded = is_subfield_embedded(c.rep);
        all = all && fl.cylinder;
        rep.flags.push_back(fl);
    }
    rep.verdict = rep.classes.empty() ? Verdict::Vacuous : all ? Verdict::True : Verdict::False;
    return rep;
}

std::vector<ClassifiedSet> extension_search(const GeneratorMatrix& g, const ExtensionTask& task) {
    const Field& f = g.field;
    const int q = f.q();
    const int k0 = g.k, n0 = g.n, tk = task.target_k, tn = task.target_n;
    if (tk < k0 || tn < n0) throw std::invalid_argument("extension must not shrink the code");
    if (!task.stretch && ipow(q, tk) > 10'000'000) throw GuardError("extension needs q^k <= 10^7 (use --stretch)");
    std::vector<ClassifiedSet> out;
    if (task.allowed_weights.empty()) return out;

    // Y rows range over representatives of F_q^n0 modulo the row space of G.
    std::vector<Vec> gr;
    for (int i = 0; i < k0; ++i) gr.push_back(g.rows[i]);
    gr = rref(f, gr);
    std::vector<int> free_cols;
    for (int j = 0; j < n0; ++j) {
        bool piv = false;
        for (const auto& row : gr) {
            auto it = std::find_if(row.begin(), row.end(), [](Elem e) { return e != 0; });
            if (it - row.begin() == j) piv = true;
        }
        if (!piv) free_cols.push_back(j);
    }
    const int extra_rows = tk - k0;
    const std::uint64_t per_row = ipow(q, static_cast<int>(free_cols.size()));
    std::uint64_t y_total = 1;
    for (int i = 0; i < extra_rows; ++i) {
        y_total *= per_row;
        if (!task.stretch && y_total > 1'000'000) throw GuardError("too many row extensions (use --stretch)");
    }

    Space space(f, tk);
    const auto points = enumerate_points(space);
    const auto hyper = enumerate_points(space);  // normals
    const size_t np = points.size();
    std::vector<std::vector<std::uint8_t>> hits(np, std::vector<std::uint8_t>(np));
    for (size_t p = 0; p < np; ++p)
        for (size_t h = 0; h < np; ++h) hits[p][h] = space.dot(points[p], hyper[h]) != 0;
    const long long wmax = *task.allowed_weights.rbegin();
    const int add_cols = tn - n0;

    std::map<CanonicalForm, PointMultiset> found;
    const CanonOptions copt{false, task.stretch};
    for (std::uint64_t yi = 0; yi < y_total; ++yi) {
        std::vector<Vec> cols(n0, Vec(tk, 0));
        std::uint64_t rest = yi;
        for (int j = 0; j < n0; ++j)
            for (int i = 0; i < k0; ++i) cols[j][i] = g.at(i, j);
        for (int r = 0; r < extra_rows; ++r) {
            Vec d = digits(rest % per_row, static_cast<int>(free_cols.size()), q);
            rest /= per_row;
            for (size_t t = 0; t < free_cols.size(); ++t) cols[free_cols[t]][k0 + r] = d[t];
        }
        std::vector<long long> weight(np, 0);
        std::map<PointId, int> base;
        bool ok = true;
        for (const auto& c : cols) {
            if (std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; })) {
                ok = false;
                break;
            }
            const PointId id = space.id_of_vector(c);
            if (task.projective && base.count(id)) ok = false;
            ++base[id];
            for (size_t h = 0; h < np; ++h) weight[h] += hits[id][h];
        }
        if (!ok) continue;
        bool over = false;
        for (auto w : weight) over = over || w > wmax;
        if (over) continue;

        std::vector<PointId> chosen;
        std::function<void(PointId)> rec = [&](PointId from) {
            const int left = add_cols - static_cast<int>(chosen.size());
            for (size_t h = 0; h < np; ++h) {
                auto it = task.allowed_weights.lower_bound(weight[h]);
                if (it == task.allowed_weights.end() || *it > weight[h] + left) return;
            }
            if (left == 0) {
                PointMultiset m(space);
                for (auto& [id, c] : base) m.add_id(id, c);
                for (PointId id : chosen) m.add_id(id);
                if (rank(f, m.support()) != tk) return;
                auto form = canonical_form(m, copt);
                if (!found.count(form)) found.emplace(form, form.representative(f));
                return;
            }
            for (PointId p = from; p < static_cast<PointId>(np); ++p) {
                if (task.projective && base.count(p)) continue;
                chosen.push_back(p);
                bool bad = false;
                for (size_t h = 0; h < np; ++h) {
                    weight[h] += hits[p][h];
                    bad = bad || weight[h] > wmax;
                }
                if (!bad) rec(task.projective ? p + 1 : p);
                for (size_t h = 0; h < np; ++h) weight[h] -= hits[p][h];
                chosen.pop_back();
            }
        };
        rec(0);
    }
    for (auto& [form, rep] : found) out.push_back({tk, form, std::move(rep)});
    return out;
}

}  // namespace divcyl
