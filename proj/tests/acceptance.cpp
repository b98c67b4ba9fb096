// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any line fails.
#include "asd/cm.hpp"
#include "asd/hypergeom.hpp"
#include "asd/meromorphic.hpp"
#include "asd/modforms.hpp"
#include "asd/registry.hpp"
#include "asd/shimura.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace asd;
using namespace asd::harness;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Tally {
    long pass = 0, fail = 0, capped = 0, skipped = 0, theorem_fail = 0;
    std::vector<Cell> fails;

    void add(const VerificationReport& r, const std::function<bool(const Cell&)>& keep = {}) {
        for (const auto& c : r.cells) {
            if (keep && !keep(c)) continue;
            switch (c.status) {
                case CellStatus::Pass: ++pass; break;
                case CellStatus::Fail: ++fail; fails.push_back(c); break;
                case CellStatus::Capped: ++capped; break;
                case CellStatus::Skipped: ++skipped; break;
            }
        }
        theorem_fail += r.summary.theorem_fail;
    }
    bool clean() const { return fail == 0 && capped == 0 && pass > 0; }
    std::string text() const {
        std::ostringstream os;
        os << "pass=" << pass << " fail=" << fail << " capped=" << capped << " skipped=" << skipped;
        return os.str();
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << s << " s";
    return os.str();
}

std::string cell_text(const Cell& c) {
    std::ostringstream os;
    os << c.label << " p=" << c.p << " n=" << c.n << " l=" << c.l << " required=" << c.required
       << " observed=" << c.observed_text();
    return os.str();
}

// ---- criteria --------------------------------------------------------------------

Outcome supercongruences() {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    t.add(run("T1.2"));
    double s = seconds_since(t0);
    return {t.clean() && s <= 120, t.text() + ", " + fmt_time(s) + " (limit 120 s)"};
}

Outcome magnetic() {
    ZSeries f = mero::f_series_z(4, 0, 1, 500);
    auto r1 = shim::magnetic_check(f, 1, 500);
    auto r2 = shim::magnetic_check(f, 2, 100);
    std::ostringstream os;
    os << "r=1 through 500: " << (r1.pass ? "holds" : "fails") << "; r=2 through 100: "
       << (r2.pass ? "holds" : "fails at n=" + std::to_string(r2.witness) + ", a_n=" + r2.witness_coeff.get_str());
    return {r1.pass && !r2.pass && r2.witness > 0, os.str()};
}

Outcome good_primes() {
    Tally t;
    std::map<std::string, long> checked;
    for (const char* id : {"T1.3", "C2.1", "T5.1"}) {
        VerificationReport r = run(id);
        t.add(r);
        for (const auto& c : r.cells) {
            std::string curve = c.label.substr(c.label.find('/') + 1);
            curve = curve.substr(0, curve.find('/'));
            checked[curve] += c.status == CellStatus::Skipped ? 0 : 1;
        }
    }
    std::string detail = t.text() + " (T1.3, C2.1, T5.1; checked cells per curve:";
    for (const auto& [curve, n] : checked) detail += " " + curve + "=" + std::to_string(n);
    detail += "; j in {0, 1728} fails the valuation filter at every p)";
    return {t.clean(), detail};
}

Outcome hypergeometric() {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    t.add(run("T5.2"));
    double s = seconds_since(t0);
    return {t.clean() && s <= 300, t.text() + ", " + fmt_time(s) + " (limit 300 s)"};
}

Outcome golden() {
    struct G {
        int k;
        long D;
        int r;
        std::vector<Integer> A;
    };
    const std::vector<G> want = {
        {4, -7, 2, {19, -91125}},
        {4, -7, 3, {1399, -19008675, Integer("54251268750")}},
        {6, -4, 3, {13, 31104}},
        {6, -4, 5, {277, 2571264, Integer("3869835264")}},
    };
    int ok = 0;
    std::string bad;
    for (const auto& g : want) {
        if (cm::construct_g(g.k, g.D, g.r, 5).A == g.A) ++ok;
        else bad += " (" + std::to_string(g.k) + "," + std::to_string(g.D) + ",r=" + std::to_string(g.r) + ")";
    }
    return {ok == 4, std::to_string(ok) + "/4 vectors exact" + bad};
}

Outcome scaled_hecke(const VerificationReport& t61) {
    Tally t;
    t.add(t61, [](const Cell& c) { return c.label.find("/hecke") != std::string::npos; });
    return {t.clean(), t.text() + " (six (k,D) pairs, p <= 31, p coprime to D)"};
}

Outcome scaled_magnetic(const VerificationReport& t61) {
    Tally t;
    t.add(t61, [](const Cell& c) { return c.label.find("/magnetic") != std::string::npos; });
    int integral = 0;
    for (auto [k, D] : std::vector<std::pair<int, long>>{{4, -7}, {4, -8}, {6, -3}, {6, -4}, {4, -4}, {4, -3}}) {
        try {
            cm::tilde_scale(k, D, cm::script_g(k, D, 500));
            ++integral;
        } catch (const Error&) {
        }
    }
    return {t.clean() && integral == 6, std::to_string(integral) + "/6 integral through q^500; " + t.text()};
}

Outcome lift_trace() {
    Tally t;
    t.add(run("P6.2"));
    return {t.clean(), t.text() + " ((2,-7,1), (2,-8,1), (3,4,-3) through q^60)"};
}

Outcome half_integral() {
    Tally t;
    for (const char* id : {"L6.4", "P6.6", "P6.7", "P6.8"}) t.add(run(id));
    return {t.clean(), t.text() + " (L6.4, P6.6, P6.7, P6.8; magnetic through n = 300)"};
}

Outcome conjectures() {
    Tally t;
    for (const char* id : {"C2.2", "C2.3", "C3.2", "C3.3", "C4.2", "C4.3", "C4.7", "§7.1"}) t.add(run(id));
    // Conjecture FAIL cells are tolerated and reported; errors and theorem failures are not.
    std::ostringstream os;
    os << t.text();
    if (t.fail) {
        std::map<std::string, long> by;
        for (const auto& c : t.fails) by[c.label + " p=" + std::to_string(c.p) + " l=" + std::to_string(c.l)]++;
        os << "; tolerated FAIL cells:";
        for (const auto& [k, v] : by) os << " [" << k << " x" << v << "]";
        os << "; first: " << cell_text(t.fails.front());
    }
    return {t.theorem_fail == 0 && t.capped == 0 && t.pass > 0, os.str()};
}

Outcome identities() {
    int total = 0, good = 0;
    auto tick = [&](bool b) {
        ++total;
        good += b ? 1 : 0;
    };
    tick(hyp::fricke_clausen_check(200));
    for (int k : {4, 6, 8, 10, 14})
        for (long p : {5L, 7L}) {
            for (long n : {1L, 2L, 3L}) tick(mero::frobenius_poly_congruence_check(k, p, n, 60));
            for (int l = 1; l <= 2; ++l) {
                tick(mero::power_congruence_check(k, p, l, 60));
                if (k != 4) tick(mero::weight_reduction_check(k, p, l));
            }
        }
    // Ring and Hecke identities.
    const long N = 200;
    ZSeries e4 = mf::eisenstein_z(4, N), e6 = mf::eisenstein_z(6, N), d = mf::delta(N), e2 = mf::e2(N);
    tick(e4 * e4 == mf::eisenstein_z(8, N));
    tick(e4 * e6 == mf::eisenstein_z(10, N));
    tick(e4.pow(3) - e6 * e6 == d.scale(1728));
    tick(mf::d_operator(e4).scale(3) == e2 * e4 - e6);
    tick(mf::d_operator(e6).scale(2) == e2 * e6 - e4 * e4);
    tick(mf::d_operator(e2).scale(12) == e2 * e2 - e4);
    for (long p : {2L, 3L, 5L, 7L}) tick(mf::hecke(d, p, 12) == d.truncate(N / p).scale(d.coeff(p)));
    tick(d.coeff(6) == d.coeff(2) * d.coeff(3));
    return {good == total, std::to_string(good) + "/" + std::to_string(total) + " identities exact"};
}

Outcome kazalicki_scholl() {
    Tally t;
    t.add(run("KS"));
    return {t.clean(), t.text() + " (p in {2,3,5}, n <= 30)"};
}

Outcome determinism() {
    auto t0 = std::chrono::steady_clock::now();
    const auto& ids = registry_ids();
    std::string a = to_json(sweep(ids, {}, 1));
    std::string b = to_json(sweep(ids, {}, 1));
    std::string c = to_json(sweep(ids, {}, 4));
    std::ostringstream os;
    os << ids.size() << " ids, report " << a.size() << " bytes; serial rerun " << (a == b ? "identical" : "differs")
       << ", parallel(4) " << (a == c ? "identical" : "differs") << ", " << fmt_time(seconds_since(t0));
    return {a == b && a == c, os.str()};
}

}  // namespace

int main() {
    int failed = 0;
    VerificationReport t61;
    bool have_t61 = false;
    auto t61_report = [&]() -> const VerificationReport& {
        if (!have_t61) {
            t61 = run("T6.1");
            have_t61 = true;
        }
        return t61;
    };
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"T1.2 supercongruences for E4/j and E4/(j-1728)", supercongruences},
        {"T1.1 1-magnetic, not 2-magnetic", magnetic},
        {"good-prime congruence a_{np} = a_p(C)^{k-2} a_n mod p", good_primes},
        {"hypergeometric congruence for a_{p^l}(E4/(j-c))", hypergeometric},
        {"golden combination vectors", golden},
        {"scaled class sums: Hecke recurrence mod p^{(k-1)l}", [&] { return scaled_hecke(t61_report()); }},
        {"scaled class sums: integral and (k-2)/2-magnetic", [&] { return scaled_magnetic(t61_report()); }},
        {"Shimura lift equals the scaled CM trace", lift_trace},
        {"U_p recursion, lift congruences, lift magnetic property", half_integral},
        {"conjecture sweeps (FAIL-tolerated)", conjectures},
        {"identity suite", identities},
        {"Kazalicki-Scholl congruence", kazalicki_scholl},
        {"determinism of sweeps", determinism},
    };
    int i = 0;
    for (const auto& [name, fn] : criteria) {
        ++i;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i << ". " << name << ": " << o.detail << std::endl;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria pass")
              << std::endl;
    return failed ? 1 : 0;
}
