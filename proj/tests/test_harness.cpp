#include "asd/cache.hpp"
#include "asd/meromorphic.hpp"
#include "asd/modforms.hpp"
#include "asd/registry.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace asd;
using namespace asd::harness;
namespace fs = std::filesystem;

namespace {

QSeries e4_over_j(long N) {
    ZSeries e4 = mf::eisenstein_z(4, N + 2);
    QSeries d = to_rational(mf::delta(N + 2));
    return (d * to_rational(e4 * e4).invert()).truncate(N);
}

CoeffProvider constant(std::function<Integer(long)> f) {
    return [f](long p, long) -> Coeff { return f(p); };
}

CongruenceSpec t12_spec() {
    CongruenceSpec s;
    s.id = "test";
    s.tag = Tag::Theorem;
    s.coeffs = {constant([](long p) { return Integer(-kronecker(-3, p) * p); })};
    s.law = ExponentLaw::affine(3, 0, "3l");
    s.p_lo = 5;
    s.p_hi = 5;
    s.nmax = 1;
    s.lmax = 1;
    return s;
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("asd_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("exponent laws") {
    ExponentLaw l = ExponentLaw::affine(13, -1, "(k-1)l - 1");
    CHECK(l.eval(2) == 25);
    ExponentLaw h{Rational(3, 2), Rational(1, 2), 0, "half"};
    CHECK(h.eval(1) == 2);
    CHECK_THROWS_WITH_AS(h.eval(2), doctest::Contains("NonIntegralExponent"), Error);
    ExponentLaw v{0, 0, 11, "11 v_p(n)"};
    CHECK(v.eval(1, 2) == 22);
}

TEST_CASE("single cell against a hand computation") {
    QSeries f = e4_over_j(30);
    VerificationReport r = check(f, t12_spec());
    REQUIRE(r.cells.size() == 1);
    const Cell& c = r.cells[0];
    CHECK(c.p == 5);
    CHECK(c.n == 1);
    CHECK(c.l == 1);
    CHECK(c.required == 3);
    CHECK(c.status == CellStatus::Pass);
    Rational comb = f.coeff(5) + Rational(kronecker(-3, 5) * -5) * f.coeff(1);
    CHECK(c.observed == valuation(comb, 5));
    CHECK(r.summary.verdict == "PASS");
}

TEST_CASE("empty range is vacuous") {
    CongruenceSpec s = t12_spec();
    s.p_lo = 14;
    s.p_hi = 16;
    VerificationReport r = check(e4_over_j(10), s);
    CHECK(r.cells.empty());
    CHECK(r.summary.verdict == "PASS-vacuous");
}

TEST_CASE("truncated data never passes") {
    CongruenceSpec s = t12_spec();
    s.lmax = 3;  // needs a_125
    s.nmax = 2;
    VerificationReport r = check(e4_over_j(40), s);
    bool saw = false;
    for (const auto& c : r.cells)
        if (c.l == 3) {
            CHECK(c.status == CellStatus::Capped);
            saw = true;
        }
    CHECK(saw);
    CHECK(r.summary.verdict == "CAPPED");
    // Residue evaluation: a lower bound short of the requirement is CAPPED, not FAIL.
    Cell c;
    c.required = 5;
    c.observed = 3;
    c.observed_exact = false;
    c.settle();
    CHECK(c.status == CellStatus::Capped);
    c.observed_exact = true;
    c.status = CellStatus::Pass;
    c.settle();
    CHECK(c.status == CellStatus::Fail);
}

TEST_CASE("filters produce skipped cells") {
    CongruenceSpec s = t12_spec();
    s.p_lo = 5;
    s.p_hi = 13;
    s.filters = {kronecker_is(-3, 1, "split")};
    VerificationReport r = check(e4_over_j(40), s);
    for (const auto& c : r.cells) {
        if (kronecker(-3, c.p) == 1) CHECK(c.status != CellStatus::Skipped);
        else CHECK(c.status == CellStatus::Skipped);
    }
    CHECK(min_prime(5).reject(3).has_value());
    CHECK(!min_prime(5).reject(7).has_value());
    CHECK(coprime_to(7, "p!|7").reject(7).has_value());
    CHECK(j_valuation(Rational(-3375)).reject(3).has_value());
    CHECK(j_valuation(Rational(-3375)).reject(5).has_value());
    CHECK(!j_valuation(Rational(-3375)).reject(11).has_value());
}

TEST_CASE("Kazalicki-Scholl form") {
    VerificationReport r = run("KS");
    CHECK(r.summary.verdict == "PASS");
    CHECK(r.summary.fail == 0);
    // Independent recomputation of the cells.
    ZSeries e4 = mf::eisenstein_z(4, 160), d = mf::delta(160);
    ZSeries F = (e4.pow(6) * d.invert()).truncate(150) - e4.pow(3).scale(1464).truncate(150);
    long cells = 0;
    for (long p : {2L, 3L, 5L})
        for (long n = 1; n <= 30; ++n) {
            Integer tp = d.coeff(p);
            Integer v = F.coeff(n * p) - tp * F.coeff(n);
            if (n % p == 0) {
                Integer p11;
                mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
                v += p11 * F.coeff(n / p);
            }
            long need = 11 * valuation(Integer(n), p);
            if (need == 0) continue;
            ++cells;
            CHECK((v == 0 || valuation(v, p) >= need));
        }
    CHECK(cells > 0);
}

TEST_CASE("combination valuations") {
    // a_0 + sum c_i a_i.
    std::vector<Rational> a = {Rational(250), Rational(10)};
    std::vector<Coeff> c = {Integer(-20)};
    Valuation v = combination_valuation(a, c, 5, std::nullopt, 10);
    CHECK(v.exact);
    CHECK(!v.infinite);
    CHECK(v.value == 2);  // 250 - 200
    std::vector<Coeff> cp = {PadicApprox(5, 4, 605)};  // -20 mod 625
    CHECK(combination_valuation(a, cp, 5, std::nullopt, 10).value == 2);
    std::vector<Rational> b = {Rational(3), Rational(1)};
    std::vector<Coeff> c3 = {Integer(-3)};
    CHECK(combination_valuation(b, c3, 3, std::nullopt, 10).infinite);
    // Quadratic coefficient, valuation at the two ideals above 11 in Z[(1+sqrt(-7))/2].
    QuadraticInteger pi = cornacchia_split(11, -7);
    std::vector<Rational> x = {Rational(0), Rational(1)};
    std::vector<Coeff> cq = {pi};
    CHECK(combination_valuation(x, cq, 11, IdealSide::Pi, 10).value == 1);
    CHECK(combination_valuation(x, cq, 11, IdealSide::PiBar, 10).value == 0);
}

TEST_CASE("sharpness") {
    CongruenceSpec m;
    m.id = "mag";
    m.shape = Shape::Magnetic;
    m.magnetic_r = 2;
    m.nmax = 100;
    Sharpness s = sharpness_probe(e4_over_j(100), m);
    CHECK(s.finite);
    CHECK(s.min_slack < 0);
    CHECK(s.witness.n <= 100);
    // 0 = 0.
    CongruenceSpec z = t12_spec();
    z.coeffs = {constant([](long) { return Integer(0); })};
    QSeries zero = QSeries::zero(50);
    Sharpness t = sharpness_probe(zero, z);
    CHECK(!t.finite);
}

TEST_CASE("report JSON round trip") {
    VerificationReport r = run("T1.2");
    std::string a = to_json(r);
    VerificationReport back = report_from_json(a);
    CHECK(to_json(back) == a);
    CHECK(back.cells.size() == r.cells.size());
    CHECK(back.summary.pass == r.summary.pass);
    CHECK(back.fingerprint == r.fingerprint);
    CHECK_THROWS_WITH_AS(report_from_json("{not json"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(report_from_json("{\"id\": 3}"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("sweep determinism and deduplication") {
    VerificationReport serial = sweep({"T1.2", "T1.1", "T1.2", "C4.3"}, {}, 1);
    VerificationReport par = sweep({"C4.3", "T1.1", "T1.2"}, {}, 4);
    CHECK(to_json(serial) == to_json(par));
    VerificationReport one = sweep({"T1.2"}, {}, 1);
    CHECK(one.cells.size() == run("T1.2").cells.size());
    CHECK(to_json(sweep({"T1.2"}, {}, 1)) == to_json(one));
    CHECK_THROWS_WITH_AS(sweep({"nope"}), doctest::Contains("UnknownId"), Error);
}

TEST_CASE("series cache") {
    fs::path dir = fresh_dir("cache");
    cache::Cache c(dir);
    QSeries f = e4_over_j(40);
    std::string key = cache::descriptor("F", {{"k", "4"}, {"c", "0"}}, 40);
    std::string key2 = cache::descriptor("F", {{"k", "4"}, {"c", "1"}}, 40);
    CHECK(key != key2);
    CHECK(cache::descriptor("F", {{"c", "0"}, {"k", "4"}}, 40) == key);
    c.put(key, f);
    auto g = c.get<Rational>(key);
    REQUIRE(g);
    CHECK(*g == f);
    CHECK(series_to_text(*g) == series_to_text(f));
    CHECK(!c.get<Rational>(key2));
    CHECK(c.index().size() == 1);
    CHECK(c.verify().empty());
    // Tamper with a coefficient.
    fs::path p = c.path_for(key);
    std::string text;
    {
        std::ifstream in(p);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    auto pos = text.rfind("240");
    REQUIRE(pos != std::string::npos);
    text[pos] = '3';
    {
        std::ofstream out(p);
        out << text;
    }
    CHECK_THROWS_WITH_AS(c.get<Rational>(key), doctest::Contains("CorruptEntry"), Error);
    CHECK(c.verify() == std::vector<std::string>{key});
    CHECK(cache::checksum("abc") == cache::checksum("abc"));
    CHECK(cache::checksum("abc") != cache::checksum("abd"));
    CHECK(cache::checksum("abc").size() == 16);
    fs::remove_all(dir);
}

TEST_CASE("registry sources go through the cache") {
    fs::path dir = fresh_dir("env");
    ::setenv("ASD_CACHE_DIR", dir.c_str(), 1);
    SeriesSource s = source_f(4, Rational(-3375), 1);
    QSeries a = s.exact(60);
    cache::Cache c(dir);
    CHECK(!c.index().empty());
    QSeries b = s.exact(60);
    CHECK(a == b);
    // A corrupted entry is recomputed, not trusted.
    for (const auto& [h, k] : c.index()) {
        std::ofstream out(c.path_for(k), std::ios::app);
        out << "7\n";
    }
    CHECK(s.exact(60) == a);
    ::unsetenv("ASD_CACHE_DIR");
    fs::remove_all(dir);
}
