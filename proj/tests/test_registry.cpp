#include "asd/cm.hpp"
#include "asd/meromorphic.hpp"
#include "asd/modforms.hpp"
#include "asd/registry.hpp"

#include <doctest.h>

#include <set>

using namespace asd;
using namespace asd::harness;

TEST_CASE("every statement has an id") {
    const std::vector<std::string> expected = {
        "T1.1", "T1.2", "T1.3", "C1.4", "C1.5", "T1.6", "C2.1", "C2.2", "C2.3", "C2.4", "C2.6", "C2.8",
        "C3.2", "C3.3", "C4.1", "C4.2", "C4.3", "C4.4", "T4.5", "C4.6", "C4.7", "C4.8", "T5.1", "T5.2",
        "T6.1", "§7.1", "§7.2", "P6.2", "B6.3", "L6.4", "P6.6", "P6.7", "P6.8", "KS"};
    for (const auto& id : expected) {
        CAPTURE(id);
        CHECK(registry_has(id));
        CHECK(!registry_summary(id).empty());
    }
    CHECK(registry_has("S7.1"));
    std::set<std::string> uniq(registry_ids().begin(), registry_ids().end());
    CHECK(uniq.size() == registry_ids().size());
    CHECK(!registry_has("X9"));
    CHECK_THROWS_WITH_AS(registry_summary("X9"), doctest::Contains("UnknownId"), Error);
    CHECK_THROWS_WITH_AS(run("X9"), doctest::Contains("UnknownId"), Error);
}

TEST_CASE("exponent laws by id") {
    Params p;
    p.k = 14;
    for (const auto& item : registry_build("C2.2", p)) {
        CHECK(item.spec.law.eval(1) == 12);
        CHECK(item.spec.law.eval(2) == 25);
        CHECK(item.spec.tag == Tag::Conjecture);
    }
    for (const auto& item : registry_build("T4.5")) {
        CHECK(item.spec.tag == Tag::Theorem);
        int k = std::stoi(item.spec.variant.substr(item.spec.variant.find('k') + 2));
        CHECK(item.spec.law.eval(1) == k - 1);
    }
}

TEST_CASE("valid pole orders") {
    CHECK(valid_orders(4, -7) == std::vector<int>{1, 2, 3});
    CHECK(valid_orders(6, -4) == std::vector<int>{1, 3, 5});
    CHECK(valid_orders(4, -3) == std::vector<int>{2});
}

// Counterexamples found while running the registry; the statements fail as literally written.
TEST_CASE("supersingular recurrence at p = k - 1") {
    // F = E_14/(j + 3375), p = 13 supersingular for 49.a4.
    const long N = 170;
    ZSeries e4 = mf::eisenstein_z(4, N + 2), d = mf::delta(N + 2);
    QSeries F = (to_rational(mf::eisenstein_z(14, N + 2) * d) *
                 to_rational(e4.pow(3) + d.scale(3375)).invert())
                    .truncate(N);
    CHECK(F == mero::f_series(14, Rational(-3375), 1, N).series);
    Integer p12;
    mpz_ui_pow_ui(p12.get_mpz_t(), 13, 12);
    Rational comb = F.coeff(169) - Rational(p12) * F.coeff(1);
    CHECK(valuation(comb, 13) == 24);
    // Required (k-1)l - 1 = 25; l = 3 is fine.
    Params p;
    p.k = 14;
    p.curve = "49.a4";
    VerificationReport r = run("C2.2", p);
    bool seen = false;
    for (const auto& c : r.cells)
        if (c.p == 13 && c.n == 1 && c.l == 2) {
            CHECK(c.status == CellStatus::Fail);
            CHECK(c.observed == 24);
            CHECK(c.required == 25);
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("G^{(2)}_{4,-7} at p = 3") {
    ZSeries g = cm::construct_g(4, -7, 2, 10).series;
    Integer comb = g.coeff(3) + 3 * g.coeff(1);
    CHECK(valuation(comb, 3) == 1);
    // The j-valuation filter keeps p = 3 out of the theorem check.
    VerificationReport r = run("T4.5");
    CHECK(r.summary.theorem_fail == 0);
    for (const auto& c : r.cells)
        if (c.p == 3 && c.label.find("/scaled") == std::string::npos && c.label.find("-7") != std::string::npos)
            CHECK(c.status == CellStatus::Skipped);
}

TEST_CASE("scaled class sum for (6, -3) at p = 3") {
    ZSeries t = cm::tilde_scale(6, -3, cm::script_g(6, -3, 10));
    CHECK(valuation(t.coeff(3), 3) == 3);
    // (k-1)l = 5 would be needed if p | A were the only exclusion.
}

TEST_CASE("ordinary recurrence on a CM curve has (k-2)l extra digits") {
    Params p;
    p.curve = "49.a4";
    p.k = 4;
    VerificationReport r = run("C2.3", p);
    Sharpness s = sharpness_probe(r);
    CHECK(r.summary.fail == 0);
    REQUIRE(s.finite);
    // The registered law is (k-1)l, so a nonnegative slack is (k-2)l beyond the generic l.
    CHECK(s.min_slack >= 0);
    for (const auto& c : r.cells)
        if (c.status == CellStatus::Pass && c.observed_exact && !c.observed_infinite) CHECK(c.observed >= 3 * c.l);
}
