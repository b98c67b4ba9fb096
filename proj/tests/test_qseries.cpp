#include "asd/modforms.hpp"
#include "asd/qseries.hpp"

#include <doctest.h>

#include <random>

using namespace asd;

namespace {

QSeries Q(long start, std::vector<long> a, long prec) {
    std::vector<Rational> r(a.begin(), a.end());
    return QSeries::from_coeffs(start, r, prec);
}

ZSeries Z(long start, std::vector<long> a, long prec) {
    std::vector<Integer> r(a.begin(), a.end());
    return ZSeries::from_coeffs(start, r, prec);
}

QSeries random_series(std::mt19937& rng, long prec) {
    std::uniform_int_distribution<long> c(-9, 9), v(-2, 2), d(1, 4);
    long start = v(rng);
    std::vector<Rational> a;
    for (long n = start; n <= prec; ++n) a.push_back(Rational(c(rng), d(rng)));
    if (a.empty() || a[0] == 0) a.insert(a.begin(), Rational(1));
    for (auto& x : a) x.canonicalize();
    return QSeries::from_coeffs(start, a, prec);
}

// Delta by the product q prod (1 - q^n)^24, independent of the library's construction.
ZSeries delta_oracle(long N) {
    std::vector<Integer> a(static_cast<size_t>(N + 1), Integer(0));
    a[0] = 1;
    for (long n = 1; n <= N; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (long m = N; m >= n; --m) a[m] -= a[m - n];
    std::vector<Integer> shifted(a.begin(), a.begin() + N);
    return ZSeries::from_coeffs(1, shifted, N);
}

Integer asd_gcd(const Integer& a, const Integer& b) { return gcd(a, b); }

}  // namespace

TEST_CASE("ring arithmetic on small series") {
    CHECK(Q(0, {1, 1}, 5) * Q(0, {1, -1}, 5) == Q(0, {1, 0, -1}, 5));
    QSeries f = Q(0, {3, 0, 2}, 6);
    CHECK(f + QSeries::zero(6) == f);
    CHECK(QSeries::monomial(1, -1, 4) * QSeries::monomial(1, 1, 6) == QSeries::constant(1, 5));
}

TEST_CASE("inversion and division") {
    CHECK(Q(0, {1, 1}, 3).invert() == Q(0, {1, -1, 1, -1}, 3));
    QSeries f = Q(1, {2, 5, -1}, 8);
    CHECK(f.divide(f) == QSeries::constant(1, 7));
    CHECK_THROWS_WITH_AS(Z(0, {2, 1}, 4).invert(), doctest::Contains("NonUnitLeading"), Error);
    QSeries inv = Q(0, {2, 1}, 3).invert();
    CHECK(inv.coeff(0) == Rational(1, 2));
    CHECK(inv.coeff(1) == Rational(-1, 4));
    CHECK(inv.coeff(2) == Rational(1, 8));
}

TEST_CASE("U_p and V_p") {
    ZSeries f = Z(1, {1, 3, 0, 5}, 4);
    ZSeries u = f.u_p(2);
    CHECK(u.coeff(1) == 3);
    CHECK(u.coeff(2) == 5);
    CHECK(u.precision() == 2);
    ZSeries v = Z(1, {1}, 1).v_p(2);
    CHECK(v.valuation() == 2);
    CHECK(v.coeff(2) == 1);
}

TEST_CASE("content normalization") {
    auto [c, g] = content_normalize(Z(1, {-6, 12}, 4));
    CHECK(c == -6);
    CHECK(g == Z(1, {1, -2}, 4));
    auto [c1, g1] = content_normalize(Z(1, {1}, 4));
    CHECK(c1 == 1);
    CHECK(g1 == Z(1, {1}, 4));
    CHECK_THROWS_WITH_AS(content_normalize(ZSeries::zero(5)), doctest::Contains("ZeroSeries"), Error);
}

TEST_CASE("coefficient access") {
    ZSeries e4 = mf::eisenstein_z(4, 12);
    ZSeries j = (e4.pow(3) * delta_oracle(14).invert()).truncate(10);
    CHECK(j.coeff(-1) == 1);
    CHECK(mf::j_invariant(10) == j);
    CHECK(QSeries::zero(10).coeff(4) == 0);
    CHECK_THROWS_WITH_AS(Q(0, {1, 2}, 3).coeff(4), doctest::Contains("OutOfPrecision"), Error);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> P(3, 9);
    for (int i = 0; i < 60; ++i) {
        QSeries a = random_series(rng, P(rng)), b = random_series(rng, P(rng)), c = random_series(rng, P(rng));
        CHECK(((a * b) * c).agrees_with(a * (b * c)));
        CHECK((a * (b + c)).agrees_with(a * b + a * c));
        CHECK((a * b) == (b * a));
        CHECK((a + b) == (b + a));
    }
}

TEST_CASE("inverse is two-sided") {
    std::mt19937 rng(19);
    for (int i = 0; i < 40; ++i) {
        QSeries a = random_series(rng, 8);
        QSeries one = QSeries::constant(1, 100);
        CHECK((a * a.invert()).agrees_with(one));
        CHECK((a.invert() * a).agrees_with(one));
    }
}

TEST_CASE("U_p V_p is the identity and V_p U_p keeps multiples of p") {
    std::mt19937 rng(23);
    for (long p : {2L, 3L, 5L})
        for (int i = 0; i < 20; ++i) {
            QSeries f = random_series(rng, 12);
            CHECK(f.v_p(p).u_p(p) == f);
            QSeries g = f.u_p(p).v_p(p);
            for (long n = g.valuation(); n <= g.precision(); ++n)
                if (n % p)
                    CHECK(g.coeff(n) == 0);
                else
                    CHECK(g.coeff(n) == f.coeff(n));
        }
}

TEST_CASE("content normalization reconstructs its input") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> c(-40, 40);
    for (int i = 0; i < 50; ++i) {
        std::vector<Integer> a;
        for (int n = 0; n < 6; ++n) a.push_back(Integer(c(rng) * 6));
        a[0] = a[0] == 0 ? Integer(6) : a[0];
        ZSeries f = ZSeries::from_coeffs(1, a, 6);
        auto [k, g] = content_normalize(f);
        Integer gcd = 0;
        for (const auto& x : g.raw()) gcd = asd_gcd(gcd, x);
        CHECK(gcd == 1);
        CHECK(g.coeff(g.valuation()) > 0);
        CHECK(to_rational(g).scale(k) == to_rational(f));
    }
}

TEST_CASE("text format round trip in every ring") {
    std::mt19937 rng(31);
    QSeries f = random_series(rng, 9);
    CHECK(series_from_text<Rational>(series_to_text(f)) == f);
    ZSeries z = Z(-1, {1, 744, 196884}, 2);
    CHECK(series_from_text<Integer>(series_to_text(z)) == z);
    PSeries p = to_padic(Z(0, {1, 24, -7, 3}, 3), 7, 5);
    CHECK(series_from_text<PadicApprox>(series_to_text(p)) == p);
    using QI = Series<QuadraticInteger>;
    QI q = QI::from_coeffs(0, {QuadraticInteger(-7, 1, 2), QuadraticInteger(-7, 0, -3)}, 1, QuadCtx{-7});
    CHECK(series_from_text<QuadraticInteger>(series_to_text(q)) == q);
    PolySeries ps = PolySeries::from_coeffs(1, {RatPoly::x(), RatPoly(std::vector<Rational>{Rational(1, 2), 3})}, 2);
    CHECK(series_from_text<RatPoly>(series_to_text(ps)) == ps);
    CHECK_THROWS_WITH_AS(series_from_text<Integer>(series_to_text(f)), doctest::Contains("RingMismatch"), Error);
}
