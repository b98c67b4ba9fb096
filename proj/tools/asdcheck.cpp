// asdcheck: expansions, constructions, registry checks and cross-checks from the shell.

#include "asd/cache.hpp"
#include "asd/cm.hpp"
#include "asd/elliptic.hpp"
#include "asd/hypergeom.hpp"
#include "asd/meromorphic.hpp"
#include "asd/registry.hpp"
#include "asd/shimura.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>

using namespace asd;
using harness::Params;
using harness::VerificationReport;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JobConfig {
    std::string command;
    std::optional<int> k, r;
    std::optional<std::string> c, curve;
    std::optional<long> D, prec, nmax;
    std::optional<int> lmax;
    std::optional<std::string> primes;
    std::vector<std::string> ids;
    std::optional<std::string> out;
    bool json = false;
    int parallel = 1;
};

Rational parse_rational(const std::string& s) {
    try {
        Rational x(s);
        x.canonicalize();
        return x;
    } catch (const std::exception&) {
        throw UsageError("not a rational number: " + s);
    }
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            long p = std::stol(s);
            return {p, p};
        }
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("prime range must look like a..b: " + s);
    }
}

// Keys accepted in a --config file; everything else is rejected.
const std::set<std::string> kConfigKeys = {"command", "k",    "c",   "curve", "D",    "r",    "prec",
                                           "primes",  "nmax", "lmax", "ids",  "out",  "json", "parallel"};

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    JobConfig c;
    try {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!kConfigKeys.count(it.key())) throw UsageError("unknown config key: " + it.key());
        if (j.contains("command")) c.command = j["command"].get<std::string>();
        if (j.contains("k")) c.k = j["k"].get<int>();
        if (j.contains("c")) c.c = j["c"].is_string() ? j["c"].get<std::string>() : j["c"].dump();
        if (j.contains("curve")) c.curve = j["curve"].get<std::string>();
        if (j.contains("D")) c.D = j["D"].get<long>();
        if (j.contains("r")) c.r = j["r"].get<int>();
        if (j.contains("prec")) c.prec = j["prec"].get<long>();
        if (j.contains("primes")) c.primes = j["primes"].get<std::string>();
        if (j.contains("nmax")) c.nmax = j["nmax"].get<long>();
        if (j.contains("lmax")) c.lmax = j["lmax"].get<int>();
        if (j.contains("ids")) c.ids = j["ids"].get<std::vector<std::string>>();
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("json")) c.json = j["json"].get<bool>();
        if (j.contains("parallel")) c.parallel = j["parallel"].get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config value has the wrong type: " + std::string(e.what()));
    }
    return c;
}

// Options shared by the subcommands; the raw values land in `flags`.
struct Flags {
    int k = 0, r = 0, lmax = 0, parallel = 1;
    long D = 0, prec = 0, nmax = 0;
    std::string c, curve, primes, out, config;
    std::vector<std::string> ids;
    bool json = false;
};

void add_object_options(CLI::App* app, Flags& f) {
    app->add_option("--k", f.k, "weight");
    app->add_option("--c", f.c, "pole location c (rational)");
    app->add_option("--curve", f.curve, "curve preset: 49.a4, 32.a3, 27.a4, 37.a1");
    app->add_option("--D", f.D, "negative discriminant");
    app->add_option("--r", f.r, "pole order");
    app->add_option("--prec", f.prec, "q-adic precision");
}

void add_grid_options(CLI::App* app, Flags& f) {
    app->add_option("--primes", f.primes, "prime range a..b");
    app->add_option("--nmax", f.nmax, "largest n");
    app->add_option("--lmax", f.lmax, "largest l");
    app->add_option("--out", f.out, "write the JSON report here");
    app->add_flag("--json", f.json, "print the JSON report instead of the summary");
    app->add_option("--parallel", f.parallel, "worker threads")->check(CLI::PositiveNumber);
}

// Flags given on the command line override the config file.
JobConfig merge(const CLI::App* app, const Flags& f, JobConfig base) {
    auto given = [&](const char* name) {
        const CLI::Option* o = app->get_option_no_throw(name);
        return o && o->count() > 0;
    };
    if (given("--k")) base.k = f.k;
    if (given("--c")) base.c = f.c;
    if (given("--curve")) base.curve = f.curve;
    if (given("--D")) base.D = f.D;
    if (given("--r")) base.r = f.r;
    if (given("--prec")) base.prec = f.prec;
    if (given("--primes")) base.primes = f.primes;
    if (given("--nmax")) base.nmax = f.nmax;
    if (given("--lmax")) base.lmax = f.lmax;
    if (given("--out")) base.out = f.out;
    if (given("--json")) base.json = f.json;
    if (given("--parallel")) base.parallel = f.parallel;
    if (given("--id")) base.ids = f.ids;
    return base;
}

Params to_params(const JobConfig& j) {
    Params p;
    p.k = j.k;
    if (j.c) p.c = parse_rational(*j.c);
    p.curve = j.curve;
    p.D = j.D;
    p.r = j.r;
    p.prec = j.prec;
    p.nmax = j.nmax;
    p.lmax = j.lmax;
    if (j.primes) {
        auto [a, b] = parse_range(*j.primes);
        if (a > b) throw UsageError("empty prime range " + *j.primes);
        p.p_lo = a;
        p.p_hi = b;
    }
    if (p.curve) ec::preset(*p.curve);  // validates the label
    return p;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write " + path);
    out << text;
}

std::string preview(const QSeries& f, long count) {
    std::string s;
    for (long n = f.valuation(); n <= std::min(f.precision(), f.valuation() + count - 1); ++n)
        s += "  a_" + std::to_string(n) + " = " + f.coeff(n).get_str() + "\n";
    return s;
}

// ---- commands -------------------------------------------------------------------------

int cmd_expand(const JobConfig& j) {
    if (!j.k) throw UsageError("expand needs --k");
    if (j.c && j.curve) throw UsageError("give --c or --curve, not both");
    if (!j.c && !j.curve) throw UsageError("expand needs --c or --curve");
    Rational c = j.curve ? ec::preset(*j.curve).curve.j : parse_rational(*j.c);
    const int r = j.r.value_or(1);
    const long N = j.prec.value_or(100);
    if (N < 1) throw UsageError("--prec must be positive");
    auto m = mero::f_series(*j.k, c, r, N);
    const std::string key = cache::descriptor("F", {{"c", to_string(c)}, {"k", std::to_string(*j.k)}, {"r", std::to_string(r)}}, N);
    std::cout << "E_" << *j.k << "/(j - " << to_string(c) << ")^" << r << " to q^" << N << "\n" << preview(m.series, 8);
    if (j.out) {
        write_file(*j.out, cache::entry_text(key, series_to_text(m.series)));
        std::cout << "written " << *j.out << "\n";
    }
    return 0;
}

int cmd_construct(const JobConfig& j) {
    if (!j.k || !j.D || !j.r) throw UsageError("construct needs --k, --D and --r");
    const long N = j.prec.value_or(20);
    auto g = cm::construct_g(*j.k, *j.D, *j.r, N);
    std::string a;
    for (size_t i = 0; i < g.A.size(); ++i) a += (i ? ", " : "") + g.A[i].get_str();
    std::cout << "G^(" << *j.r << ")_{" << *j.k << "," << *j.D << "}  j(alpha_D) = " << g.jD << "\n";
    std::cout << "A: " << a << "\n" << preview(to_rational(g.series), 6);
    if (j.out) {
        const std::string key = cache::descriptor(
            "G", {{"D", std::to_string(*j.D)}, {"k", std::to_string(*j.k)}, {"r", std::to_string(*j.r)}}, N);
        write_file(*j.out, cache::entry_text(key, series_to_text(g.series)));
        std::cout << "written " << *j.out << "\n";
    }
    return 0;
}

void print_summary(const VerificationReport& r) {
    std::map<std::string, std::array<long, 4>> by_label;
    for (const auto& c : r.cells) by_label[c.label][static_cast<int>(c.status)]++;
    for (const auto& [label, n] : by_label)
        std::cout << "  " << label << "  pass=" << n[0] << " fail=" << n[1] << " skipped=" << n[2] << " capped=" << n[3]
                  << "\n";
    long shown = 0;
    for (const auto& c : r.cells) {
        if (c.status != CellStatus::Fail || shown++ >= 10) continue;
        std::cout << "  FAIL " << c.label << " p=" << c.p << " n=" << c.n << " l=" << c.l << " required=" << c.required
                  << " observed=" << c.observed_text() << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
    }
    const auto& s = r.summary;
    std::cout << r.id << ": " << s.verdict << "  pass=" << s.pass << " fail=" << s.fail << " skipped=" << s.skipped
              << " capped=" << s.capped << "\n";
    if (s.fail > s.theorem_fail)
        std::cout << "note: " << s.fail - s.theorem_fail << " FAIL cells in conjecture checks (flagged, not fatal)\n";
}

int finish(const VerificationReport& r, const JobConfig& j) {
    const std::string text = harness::to_json(r);
    if (j.out) write_file(*j.out, text + "\n");
    if (j.json)
        std::cout << text << "\n";
    else
        print_summary(r);
    return r.summary.theorem_fail > 0 ? 1 : 0;
}

int cmd_verify(const JobConfig& j) {
    if (j.ids.size() != 1) throw UsageError("verify needs exactly one --id");
    if (!harness::registry_has(j.ids[0])) throw Error("UnknownId", "no registry entry " + j.ids[0]);
    return finish(harness::run(j.ids[0], to_params(j), j.parallel), j);
}

int cmd_sweep(const JobConfig& j) {
    std::vector<std::string> ids = j.ids.empty() ? harness::registry_ids() : j.ids;
    return finish(harness::sweep(ids, to_params(j), j.parallel), j);
}

int cmd_list() {
    for (const auto& id : harness::registry_ids()) std::cout << id << "\t" << harness::registry_summary(id) << "\n";
    return 0;
}

std::map<std::string, long> parse_kv(const std::vector<std::string>& args, const std::set<std::string>& allowed) {
    std::map<std::string, long> out;
    for (const auto& a : args) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value, got " + a);
        std::string key = a.substr(0, eq);
        if (!allowed.count(key)) throw UsageError("unknown argument " + key);
        try {
            out[key] = std::stol(a.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("not an integer: " + a);
        }
    }
    return out;
}

int cmd_crosscheck(const std::string& name, const std::vector<std::string>& args) {
    bool ok;
    std::string what;
    if (name == "prop62") {
        auto kv = parse_kv(args, {"s", "d", "d0", "N"});
        long s = kv.count("s") ? kv["s"] : 2, d = kv.count("d") ? kv["d"] : -7, d0 = kv.count("d0") ? kv["d0"] : 1;
        long N = kv.count("N") ? kv["N"] : 60;
        what = "shimura lift of f_{s+1/2,|d|} vs trace, s=" + std::to_string(s) + " d=" + std::to_string(d) +
               " d0=" + std::to_string(d0) + " N=" + std::to_string(N);
        ok = shim::lift_trace_check(static_cast<int>(s), d, d0, N);
    } else if (name == "clausen") {
        auto kv = parse_kv(args, {"N"});
        long N = kv.count("N") ? kv["N"] : 200;
        what = "Fricke-Klein and Clausen identities to q^" + std::to_string(N);
        ok = hyp::fricke_clausen_check(N);
    } else if (name == "mobius") {
        auto kv = parse_kv(args, {"s", "D", "N"});
        long s = kv.count("s") ? kv["s"] : 2, D = kv.count("D") ? kv["D"] : -7, N = kv.count("N") ? kv["N"] : 60;
        what = "class sum from lifts, s=" + std::to_string(s) + " D=" + std::to_string(D) + " N=" + std::to_string(N);
        ok = shim::mobius_bridge_check(static_cast<int>(s), D, N);
    } else {
        throw UsageError("unknown cross-check " + name + " (prop62, clausen, mobius)");
    }
    std::cout << what << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

cache::Cache open_cache(const std::string& dir) {
    if (!dir.empty()) return cache::Cache(dir);
    auto c = cache::Cache::from_env();
    if (!c) throw UsageError("no cache directory: pass --dir or set ASD_CACHE_DIR");
    return *c;
}

// Codes raised by invalid input rather than by the mathematics.
bool is_usage_code(const std::string& code) {
    static const std::set<std::string> codes = {"DomainError",    "NotADiscriminant", "NotClassNumberOne",
                                                "UnknownPreset",  "UnknownId",        "IdenticallyZero",
                                                "RamifiedPrime",  "InvalidArgument"};
    return codes.count(code) > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asdcheck: ASD-type congruences for meromorphic modular forms"};
    app.require_subcommand(1);
    Flags f;
    std::string name, cache_dir;
    std::vector<std::string> kv;

    auto* expand = app.add_subcommand("expand", "q-expansion of E_k/(j - c)^r");
    add_object_options(expand, f);
    expand->add_option("--out", f.out, "write the series in cache format");

    auto* construct = app.add_subcommand("construct", "combination vector of G^(r)_{k,D}");
    add_object_options(construct, f);
    construct->add_option("--out", f.out, "write the series in cache format");

    auto* verify = app.add_subcommand("verify", "check one registry id");
    add_object_options(verify, f);
    add_grid_options(verify, f);
    verify->add_option("--id", f.ids, "registry id")->expected(1);
    verify->add_option("--config", f.config, "JSON job file");

    auto* sweep = app.add_subcommand("sweep", "check several registry ids (all by default)");
    add_object_options(sweep, f);
    add_grid_options(sweep, f);
    sweep->add_option("--id", f.ids, "registry ids")->expected(1, -1);
    sweep->add_option("--config", f.config, "JSON job file");

    auto* list = app.add_subcommand("list", "registry ids");

    auto* cross = app.add_subcommand("crosscheck", "identity cross-checks: prop62, clausen, mobius");
    cross->add_option("name", name, "cross-check name")->required();
    cross->add_option("args", kv, "key=value arguments");

    auto* cache_cmd = app.add_subcommand("cache", "inspect the series cache");
    cache_cmd->require_subcommand(1);
    auto* cache_list = cache_cmd->add_subcommand("list", "indexed entries");
    auto* cache_check = cache_cmd->add_subcommand("check", "verify checksums");
    cache_cmd->add_option("--dir", cache_dir, "cache directory (default $ASD_CACHE_DIR)");
    for (auto* sub : {cache_list, cache_check}) sub->add_option("--dir", cache_dir, "cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto job = [&](CLI::App* sub) {
            JobConfig base;
            const CLI::Option* cfg = sub->get_option_no_throw("--config");
            if (cfg && cfg->count()) base = load_config(f.config);
            if (!base.command.empty() && base.command != sub->get_name())
                throw UsageError("config command '" + base.command + "' does not match " + sub->get_name());
            return merge(sub, f, base);
        };
        if (*expand) return cmd_expand(job(expand));
        if (*construct) return cmd_construct(job(construct));
        if (*verify) return cmd_verify(job(verify));
        if (*sweep) return cmd_sweep(job(sweep));
        if (*list) return cmd_list();
        if (*cross) return cmd_crosscheck(name, kv);
        if (*cache_list) {
            for (const auto& [h, key] : open_cache(cache_dir).index()) std::cout << h << "\t" << key << "\n";
            return 0;
        }
        if (*cache_check) {
            auto bad = open_cache(cache_dir).verify();
            for (const auto& key : bad) std::cout << "corrupt\t" << key << "\n";
            std::cout << (bad.empty() ? "cache OK" : std::to_string(bad.size()) + " corrupt entries") << "\n";
            return bad.empty() ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_code(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
