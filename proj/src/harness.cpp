#include "asd/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace asd::harness {

using json = nlohmann::ordered_json;

const char* tag_name(Tag t) { return t == Tag::Theorem ? "theorem" : "conjecture"; }

long ExponentLaw::eval(long l, long vn) const {
    Rational e = per_l * l + offset + per_vn * vn;
    e.canonicalize();
    if (e.get_den() != 1) throw Error("NonIntegralExponent", text + " is not an integer at l = " + std::to_string(l));
    return e.get_num().get_si();
}

std::vector<std::string> CongruenceSpec::filter_names() const {
    std::vector<std::string> out;
    for (const auto& f : filters) out.push_back(f.name);
    return out;
}

// ---- filters ----------------------------------------------------------------------

PrimeFilter min_prime(long bound) {
    return {"p>=" + std::to_string(bound), [bound](long p) -> std::optional<std::string> {
                if (p < bound) return "p < " + std::to_string(bound);
                return std::nullopt;
            }};
}

PrimeFilter coprime_to(long m, const std::string& name) {
    return {name, [m, name](long p) -> std::optional<std::string> {
                if (m % p == 0) return "fails " + name;
                return std::nullopt;
            }};
}

PrimeFilter j_valuation(const Rational& j) {
    return {"v_p(j)=0=v_p(j-1728)", [j](long p) -> std::optional<std::string> {
                if (j == 0 || valuation(j, p) != 0) return "v_p(j) != 0";
                Rational t = j - 1728;
                if (t == 0 || valuation(t, p) != 0) return "v_p(j-1728) != 0";
                return std::nullopt;
            }};
}

PrimeFilter kronecker_is(long D, int value, const std::string& name) {
    return {name, [D, value, name](long p) -> std::optional<std::string> {
                if (kronecker(D, p) != value) return "fails " + name;
                return std::nullopt;
            }};
}

PrimeFilter custom_filter(std::string name, std::function<std::optional<std::string>(long)> f) {
    return {std::move(name), std::move(f)};
}

// ---- combination valuations ----------------------------------------------------

namespace {

PadicApprox to_padic_coeff(const Coeff& c, long p, std::optional<IdealSide> side, long E) {
    if (auto z = std::get_if<Integer>(&c)) return PadicApprox(p, E, *z);
    if (auto q = std::get_if<QuadraticInteger>(&c)) return embed(*q, p, side.value_or(IdealSide::Pi), E);
    const auto& a = std::get<PadicApprox>(c);
    if (a.p != p) throw Error("InternalError", "p-adic coefficient at the wrong prime");
    return PadicApprox(p, std::min(E, a.N), a.value);
}

long padic_budget(const std::vector<Coeff>& c, long budget) {
    long E = budget;
    for (const auto& x : c)
        if (auto a = std::get_if<PadicApprox>(&x)) E = std::min(E, a->N);
    return E;
}

Valuation padic_valuation(const PadicApprox& v) {
    if (v.value == 0) return {v.N, false, false};
    return {v.valuation(), true, false};
}

// sum c_i a_i with a_0 weighted by 1, entirely in Z/p^E.
Valuation padic_combination(const std::vector<PadicApprox>& a, const std::vector<Coeff>& c, long p,
                            std::optional<IdealSide> side, long E) {
    E = padic_budget(c, E);
    for (const auto& x : a) E = std::min(E, x.N);
    PadicApprox acc(p, E, a[0].value);
    for (size_t i = 1; i < a.size(); ++i) {
        if (a[i].value == 0) continue;
        acc += to_padic_coeff(c[i - 1], p, side, E) * PadicApprox(p, E, a[i].value);
    }
    return padic_valuation(acc);
}

}  // namespace

Valuation combination_valuation(const std::vector<Rational>& a, const std::vector<Coeff>& c, long p,
                                std::optional<IdealSide> side, long budget) {
    if (a.size() != c.size() + 1) throw Error("InternalError", "coefficient count mismatch");
    bool padic = false, quad = false;
    long D = 0;
    for (const auto& x : c) {
        if (std::holds_alternative<PadicApprox>(x)) padic = true;
        if (auto q = std::get_if<QuadraticInteger>(&x)) {
            quad = true;
            D = q->D;
        }
    }
    if (padic) {
        long E = padic_budget(c, budget);
        std::vector<PadicApprox> r;
        for (const auto& x : a) r.push_back(PadicApprox::from_rational(p, E, x));
        return padic_combination(r, c, p, side, E);
    }
    if (!quad) {
        Rational v = a[0];
        for (size_t i = 1; i < a.size(); ++i) v += std::get<Integer>(c[i - 1]) * a[i];
        if (v == 0) return {0, false, true};
        return {valuation(v, p), true, false};
    }
    Integer L = 1;
    for (const auto& x : a) L = lcm(L, Integer(x.get_den()));
    if (L % p == 0) throw Error("NotIntegral", "coefficient not p-integral at p = " + std::to_string(p));
    auto lift = [&](const Rational& x) { return Integer(x.get_num() * (L / x.get_den())); };
    QuadraticInteger v(D, lift(a[0]), 0);
    for (size_t i = 1; i < a.size(); ++i) {
        QuadraticInteger ai(D, lift(a[i]), 0);
        if (auto z = std::get_if<Integer>(&c[i - 1])) v += QuadraticInteger(D, *z, 0) * ai;
        else v += std::get<QuadraticInteger>(c[i - 1]) * ai;
    }
    if (v.is_zero()) return {0, false, true};
    if (!side) return {std::min(valuation(v.x, p), valuation(v.y, p)), true, false};
    try {
        return {ideal_valuation(v, p, *side, budget), true, false};
    } catch (const Error& e) {
        if (e.code() != "PrecisionExhausted") throw;
        return {budget, false, false};
    }
}

// ---- cell evaluation ---------------------------------------------------------------

namespace {

struct Task {
    long p, n;
    int l;
    long required;
};

long ipow_long(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

int step_of(const CongruenceSpec& spec, long p) { return spec.step ? spec.step(p) : 1; }

// Index of a_{n q^{l-i}}, or nothing when it is not an integer (a := 0 there).
std::optional<long> term_index(long n, long q, int l, int i) {
    if (l - i >= 0) return n * ipow_long(q, l - i);
    long d = ipow_long(q, i - l);
    if (n % d) return std::nullopt;
    return n / d;
}

Cell base_cell(const CongruenceSpec& spec, long p, long n, int l) {
    Cell c;
    c.p = p;
    c.n = n;
    c.l = l;
    c.label = spec.variant.empty() ? spec.id : spec.id + "/" + spec.variant;
    return c;
}

Cell skipped(const CongruenceSpec& spec, long p, long n, int l, const std::string& why) {
    Cell c = base_cell(spec, p, n, l);
    c.status = CellStatus::Skipped;
    c.observed = 0;
    c.observed_exact = false;
    c.note = why;
    return c;
}

Cell capped(const CongruenceSpec& spec, const Task& t, const std::string& why) {
    Cell c = base_cell(spec, t.p, t.n, t.l);
    c.required = t.required;
    c.observed = 0;
    c.observed_exact = false;
    c.status = CellStatus::Capped;
    c.note = why;
    return c;
}

void set_observed(Cell& c, const Valuation& v) {
    c.observed = v.value;
    c.observed_exact = v.exact;
    c.observed_infinite = v.infinite;
    c.settle();
}

bool cell_less(const Cell& a, const Cell& b) {
    return std::tie(a.label, a.p, a.l, a.n) < std::tie(b.label, b.p, b.l, b.n);
}

// Runs f(i) for i in [0, count) on `threads` workers; rethrows the first failure.
void parallel_for(size_t count, int threads, const std::function<void(size_t)>& f) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = static_cast<size_t>(t); i < count; i += static_cast<size_t>(threads)) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!first) first = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

void fill_params(VerificationReport& r, const CongruenceSpec& spec, const std::string& descriptor, long N) {
    r.id = spec.id;
    r.params["variant"] = spec.variant;
    r.params["tag"] = tag_name(spec.tag);
    r.params["series"] = descriptor;
    r.params["law"] = spec.law.text;
    std::string f;
    for (const auto& name : spec.filter_names()) f += (f.empty() ? "" : ",") + name;
    r.params["filters"] = f;
    r.params["primes"] = std::to_string(spec.p_lo) + ".." + std::to_string(spec.p_hi);
    r.params["nmax"] = std::to_string(spec.nmax);
    r.params["l"] = std::to_string(spec.lmin) + ".." + std::to_string(spec.lmax);
    r.fingerprint["code_version"] = ASD_VERSION;
    r.fingerprint["precision"] = std::to_string(N);
    r.fingerprint["padic_slack"] = std::to_string(spec.slack);
}

std::optional<std::string> rejected(const CongruenceSpec& spec, long p) {
    for (const auto& f : spec.filters)
        if (auto why = f.reject(p)) return why;
    return std::nullopt;
}

// Cells for the recurrence shape; lines up admissible tasks and the skip records.
void plan(const CongruenceSpec& spec, long N, std::vector<Task>& tasks, std::vector<Cell>& fixed) {
    for (long p : primes_in(spec.p_lo, spec.p_hi)) {
        if (auto why = rejected(spec, p)) {
            fixed.push_back(skipped(spec, p, 0, 0, *why));
            continue;
        }
        long q = ipow_long(p, step_of(spec, p));
        for (int l = spec.lmin; l <= spec.lmax; ++l) {
            long ql = ipow_long(q, l);
            long top = std::max(1L, std::min(spec.nmax, N / ql));
            for (long n = 1; n <= top; ++n) {
                long e = spec.law.eval(l, valuation(Integer(n), p));
                if (e <= 0) {
                    Cell c = skipped(spec, p, n, l, "trivial exponent");
                    c.required = e;
                    fixed.push_back(c);
                    continue;
                }
                tasks.push_back({p, n, l, e});
            }
        }
    }
}

void finish(VerificationReport& r, const CongruenceSpec& spec) {
    std::stable_sort(r.cells.begin(), r.cells.end(), cell_less);
    summarize(r, spec.tag);
}

VerificationReport check_magnetic(const QSeries& f, const CongruenceSpec& spec, const std::string& desc) {
    VerificationReport r;
    fill_params(r, spec, desc, f.precision());
    r.params["magnetic_r"] = std::to_string(spec.magnetic_r);
    long top = std::min(spec.nmax, f.precision());
    for (long n = 2; n <= top; ++n) {
        Rational a = f.coeff(n);
        for (auto [p, e] : factor(n)) {
            Cell c = base_cell(spec, p, n, e);
            c.required = static_cast<long>(spec.magnetic_r) * e;
            if (a == 0) set_observed(c, {0, false, true});
            else set_observed(c, {valuation(a, p), true, false});
            r.cells.push_back(c);
        }
    }
    if (spec.nmax > f.precision()) {
        Task t{0, spec.nmax, 0, 0};
        r.cells.push_back(capped(spec, t, "InsufficientPrecision"));
    }
    finish(r, spec);
    return r;
}

VerificationReport check_custom(const CongruenceSpec& spec, long N, const std::string& desc) {
    VerificationReport r;
    fill_params(r, spec, desc, N);
    const std::string label = base_cell(spec, 0, 0, 0).label;
    for (long p : primes_in(spec.p_lo, spec.p_hi)) {
        if (auto why = rejected(spec, p)) {
            r.cells.push_back(skipped(spec, p, 0, 0, *why));
            continue;
        }
        for (Cell c : spec.custom(p, N)) {
            c.label = label;
            r.cells.push_back(c);
        }
    }
    finish(r, spec);
    return r;
}

}  // namespace

VerificationReport check(const QSeries& series, const CongruenceSpec& spec, int parallelism) {
    const std::string desc = "explicit series";
    if (spec.shape == Shape::Magnetic) return check_magnetic(series, spec, desc);
    if (spec.shape == Shape::Custom) return check_custom(spec, series.precision(), desc);
    VerificationReport r;
    fill_params(r, spec, desc, series.precision());
    r.fingerprint["mode"] = "exact";
    std::vector<Task> tasks;
    plan(spec, series.precision(), tasks, r.cells);
    std::vector<Cell> out(tasks.size());
    parallel_for(tasks.size(), parallelism, [&](size_t i) {
        const Task& t = tasks[i];
        long q = ipow_long(t.p, step_of(spec, t.p));
        if (t.n * ipow_long(q, t.l) > series.precision()) {
            out[i] = capped(spec, t, "InsufficientPrecision");
            return;
        }
        std::vector<Coeff> c;
        for (const auto& provider : spec.coeffs) c.push_back(provider(t.p, t.required + spec.slack));
        std::vector<Rational> a;
        for (int k = 0; k <= static_cast<int>(c.size()); ++k) {
            auto idx = term_index(t.n, q, t.l, k);
            a.push_back(idx ? series.coeff(*idx) : Rational(0));
        }
        Cell cell = base_cell(spec, t.p, t.n, t.l);
        cell.required = t.required;
        set_observed(cell, combination_valuation(a, c, t.p, spec.side, t.required + spec.slack));
        if (spec.side) cell.note = *spec.side == IdealSide::Pi ? "pi" : "pibar";
        out[i] = cell;
    });
    r.cells.insert(r.cells.end(), out.begin(), out.end());
    finish(r, spec);
    return r;
}

VerificationReport check(const SeriesSource& source, const CongruenceSpec& spec, long N, int parallelism) {
    if (spec.shape == Shape::Custom) return check_custom(spec, N, source.descriptor);
    if (spec.shape == Shape::Magnetic || !source.modular) {
        VerificationReport r = check(source.exact(N), spec, parallelism);
        r.params["series"] = source.descriptor;
        return r;
    }
    VerificationReport r;
    fill_params(r, spec, source.descriptor, N);
    r.fingerprint["mode"] = "residues mod p^(required+slack)";
    std::vector<Task> tasks;
    plan(spec, N, tasks, r.cells);

    // One residue expansion per prime, deep enough for every cell at that prime.
    std::map<long, std::pair<long, long>> need;  // p -> (precision, digits)
    for (const auto& t : tasks) {
        long q = ipow_long(t.p, step_of(spec, t.p));
        auto& [prec, digits] = need[t.p];
        prec = std::max(prec, std::min(N, t.n * ipow_long(q, t.l)));
        digits = std::max(digits, t.required + spec.slack);
    }
    std::map<long, PSeries> residues;
    for (const auto& [p, nd] : need) residues.emplace(p, source.modular(nd.first, p, nd.second));

    std::vector<Cell> out(tasks.size());
    parallel_for(tasks.size(), parallelism, [&](size_t i) {
        const Task& t = tasks[i];
        const PSeries& f = residues.at(t.p);
        long q = ipow_long(t.p, step_of(spec, t.p));
        if (t.n * ipow_long(q, t.l) > f.precision()) {
            out[i] = capped(spec, t, "InsufficientPrecision");
            return;
        }
        long E = t.required + spec.slack;
        std::vector<Coeff> c;
        for (const auto& provider : spec.coeffs) c.push_back(provider(t.p, E));
        std::vector<PadicApprox> a;
        for (int k = 0; k <= static_cast<int>(c.size()); ++k) {
            auto idx = term_index(t.n, q, t.l, k);
            a.push_back(idx ? f.coeff(*idx) : PadicApprox(t.p, E, 0));
        }
        Cell cell = base_cell(spec, t.p, t.n, t.l);
        cell.required = t.required;
        set_observed(cell, padic_combination(a, c, t.p, spec.side, E));
        if (spec.side) cell.note = *spec.side == IdealSide::Pi ? "pi" : "pibar";
        out[i] = cell;
    });
    r.cells.insert(r.cells.end(), out.begin(), out.end());
    finish(r, spec);
    return r;
}

// ---- reports -------------------------------------------------------------------------

namespace {

std::string verdict_of(const Summary& s) {
    if (s.fail) return "FAIL";
    if (s.capped) return "CAPPED";
    if (!s.pass) return "PASS-vacuous";
    return "PASS";
}

}  // namespace

void summarize(VerificationReport& r, Tag tag) {
    Summary s;
    for (const auto& c : r.cells) {
        switch (c.status) {
            case CellStatus::Pass: ++s.pass; break;
            case CellStatus::Fail: ++s.fail; break;
            case CellStatus::Skipped: ++s.skipped; break;
            case CellStatus::Capped: ++s.capped; break;
        }
    }
    if (tag == Tag::Theorem) s.theorem_fail = s.fail;
    s.verdict = verdict_of(s);
    r.summary = s;
}

VerificationReport merge(const std::string& id, std::vector<VerificationReport> parts) {
    VerificationReport out;
    out.id = id;
    Summary s;
    std::string ids;
    for (auto& p : parts) {
        for (const auto& [k, v] : p.params) out.params[p.id + (p.params.count("variant") && !p.params.at("variant").empty()
                                                                   ? "/" + p.params.at("variant")
                                                                   : "") + ":" + k] = v;
        for (const auto& [k, v] : p.fingerprint) {
            auto& slot = out.fingerprint[k];
            if (slot.empty()) slot = v;
            else if (slot != v && slot.find(v) == std::string::npos) slot += ";" + v;
        }
        s.pass += p.summary.pass;
        s.fail += p.summary.fail;
        s.skipped += p.summary.skipped;
        s.capped += p.summary.capped;
        s.theorem_fail += p.summary.theorem_fail;
        out.cells.insert(out.cells.end(), p.cells.begin(), p.cells.end());
    }
    std::stable_sort(out.cells.begin(), out.cells.end(), cell_less);
    s.verdict = verdict_of(s);
    out.summary = s;
    return out;
}

std::string to_json(const VerificationReport& r) {
    json j;
    j["id"] = r.id;
    j["params"] = json::object();
    for (const auto& [k, v] : r.params) j["params"][k] = v;
    j["cells"] = json::array();
    for (const auto& c : r.cells) {
        json cj;
        cj["p"] = c.p;
        cj["n"] = c.n;
        cj["l"] = c.l;
        cj["required"] = c.required;
        if (c.observed_exact && !c.observed_infinite) cj["observed"] = c.observed;
        else cj["observed"] = c.observed_text();
        cj["status"] = status_name(c.status);
        cj["label"] = c.label;
        cj["note"] = c.note;
        j["cells"].push_back(cj);
    }
    j["summary"] = {{"pass", r.summary.pass},
                    {"fail", r.summary.fail},
                    {"skipped", r.summary.skipped},
                    {"capped", r.summary.capped},
                    {"theorem_fail", r.summary.theorem_fail},
                    {"verdict", r.summary.verdict}};
    j["fingerprint"] = json::object();
    for (const auto& [k, v] : r.fingerprint) j["fingerprint"][k] = v;
    return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error("ParseError", e.what());
    }
    try {
        VerificationReport r;
        r.id = j.at("id").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
        for (const auto& cj : j.at("cells")) {
            Cell c;
            c.p = cj.at("p").get<long>();
            c.n = cj.at("n").get<long>();
            c.l = cj.at("l").get<long>();
            c.required = cj.at("required").get<long>();
            const auto& o = cj.at("observed");
            if (o.is_number_integer()) {
                c.observed = o.get<long>();
            } else {
                std::string s = o.get<std::string>();
                if (s == "inf") {
                    c.observed_infinite = true;
                    c.observed_exact = false;
                } else if (s.rfind(">=", 0) == 0) {
                    c.observed = std::stol(s.substr(2));
                    c.observed_exact = false;
                } else {
                    throw Error("ParseError", "bad observed value " + s);
                }
            }
            std::string st = cj.at("status").get<std::string>();
            if (st == "PASS") c.status = CellStatus::Pass;
            else if (st == "FAIL") c.status = CellStatus::Fail;
            else if (st == "SKIPPED") c.status = CellStatus::Skipped;
            else if (st == "CAPPED") c.status = CellStatus::Capped;
            else throw Error("ParseError", "bad status " + st);
            c.label = cj.at("label").get<std::string>();
            c.note = cj.at("note").get<std::string>();
            r.cells.push_back(c);
        }
        const auto& s = j.at("summary");
        r.summary.pass = s.at("pass").get<long>();
        r.summary.fail = s.at("fail").get<long>();
        r.summary.skipped = s.at("skipped").get<long>();
        r.summary.capped = s.at("capped").get<long>();
        r.summary.theorem_fail = s.at("theorem_fail").get<long>();
        r.summary.verdict = s.at("verdict").get<std::string>();
        for (const auto& [k, v] : j.at("fingerprint").items()) r.fingerprint[k] = v.get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw Error("ParseError", e.what());
    }
}

Sharpness sharpness_probe(const VerificationReport& r) {
    Sharpness s;
    for (const auto& c : r.cells) {
        if (c.status != CellStatus::Pass && c.status != CellStatus::Fail) continue;
        if (!c.observed_exact || c.observed_infinite) continue;
        long slack = c.observed - c.required;
        if (!s.finite || slack < s.min_slack) {
            s.finite = true;
            s.min_slack = slack;
            s.witness = c;
        }
    }
    return s;
}

Sharpness sharpness_probe(const QSeries& series, const CongruenceSpec& spec) {
    CongruenceSpec deep = spec;
    deep.slack = std::max(spec.slack, 64L);
    return sharpness_probe(check(series, deep));
}

}  // namespace asd::harness
