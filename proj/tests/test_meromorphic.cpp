#include "asd/meromorphic.hpp"

#include <doctest.h>

#include <random>

using namespace asd;
using namespace asd::mero;

namespace {

ZSeries delta_oracle(long N) {
    std::vector<Integer> a(static_cast<size_t>(N + 1), Integer(0));
    a[0] = 1;
    for (long n = 1; n <= N; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (long m = N; m >= n; --m) a[m] -= a[m - n];
    return ZSeries::from_coeffs(1, std::vector<Integer>(a.begin(), a.begin() + N), N);
}

ZSeries e4_oracle(long N) {
    return ZSeries::generate(0, N, [](long n) {
        if (n == 0) return Integer(1);
        long s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s += d * d * d;
        return Integer(240 * s);
    });
}

// P(j) as a series, by Horner.
QSeries poly_of_j(const RatPoly& P, long N) {
    QSeries j = to_rational(mf::j_invariant(N + P.degree() + 2));
    QSeries acc = QSeries::zero(N);
    for (long i = P.degree(); i >= 0; --i) acc = (acc * j + QSeries::constant(P.at(i), N + P.degree() + 2)).truncate(N);
    return acc;
}

}  // namespace

TEST_CASE("E_k/(j - c) expansions") {
    CHECK(f_series(4, Rational(-3375), 1, 20).series.coeff(1) == 1);

    // E_4/j = Delta/E_4^2 from independent Delta and E_4.
    const long N = 30;
    ZSeries oracle = (delta_oracle(N) * e4_oracle(N).pow(2).invert()).truncate(N);
    QSeries f = f_series(4, 0, 1, N).series;
    CHECK(f == to_rational(oracle));
    // Supercongruence instance at n = l = 1, p = 5 with (-3/5) = -1.
    CHECK(mod(f.coeff(5).get_num(), Integer(125)) == mod(Integer(-5), Integer(125)));

    QSeries e4sq = to_rational(mf::eisenstein_z(4, 40).pow(2));
    CHECK(f_series_general(e4sq, 8, Rational(-3375), 1, 40).series == f_series(8, Rational(-3375), 1, 40).series);
}

TEST_CASE("leading behaviour of F^(r)") {
    for (int r = 1; r <= 3; ++r) {
        QSeries f = f_series(6, Rational(8000), r, 12).series;
        CHECK(f.valuation() == r);
        CHECK(f.coeff(r) == 1);
    }
}

TEST_CASE("rational c and residues agree") {
    Rational c(1, 2);
    QSeries f = f_series(4, c, 2, 30).series;
    PSeries g = f_series_padic(4, c, 2, 30, 7, 6);
    CHECK(to_padic(f, 7, 6) == g);
}

TEST_CASE("P_{k,n} polynomials") {
    CHECK(p_poly(4, 1) == RatPoly(Rational(1)));
    CHECK(p_poly(4, 3).degree() == 2);
    QSeries f = f_series(4, Rational(-3375), 1, 50).series;
    for (long n = 1; n <= 50; ++n) CHECK(p_poly(4, n).eval(Rational(-3375)) == f.coeff(n));
}

TEST_CASE("P_{k,n} is integral of degree n - 1") {
    for (int k : {4, 6, 8, 10, 14}) {
        auto table = p_poly_table(k, 60);
        for (long n = 1; n <= 60; ++n) {
            CHECK(static_cast<long>(table[n - 1].size()) == n);
            CHECK(table[n - 1].back() != 0);
        }
    }
}

TEST_CASE("P_{k,n}(c) matches the expansion for random c") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<long> C(-5000, 5000);
    for (int k : {4, 6, 10}) {
        Rational c(C(rng));
        QSeries f = f_series(k, c, 1, 25).series;
        for (long n = 1; n <= 25; ++n) CHECK(p_poly(k, n).eval(c) == f.coeff(n));
    }
}

TEST_CASE("Q_n is the reversal of P_{4,n}") {
    CHECK(q_poly(1) == RatPoly(Rational(1)));
    std::mt19937 rng(47);
    std::uniform_int_distribution<long> C(1, 300);
    for (long n = 1; n <= 12; ++n) {
        CHECK(q_poly(n).degree() <= n - 1);
        Rational c(C(rng), C(rng));
        c.canonicalize();
        Rational lhs = q_poly(n).eval(1 / c) * rpow(c, n - 1);
        CHECK(lhs == p_poly(4, n).eval(c));
    }
}

TEST_CASE("duality forms") {
    for (int k : {4, 6, 8, 10, 14}) {
        const long N = 30;
        ZSeries num = k == 14 ? ZSeries::constant(1, N + 2) : mf::eisenstein_z(14 - k, N + 2);
        ZSeries base = (num * mf::delta(N + 2).invert()).truncate(N);
        CHECK(dual_basis_form(k, 1, N) == base);
        for (long n = 1; n <= 20; ++n) {
            QSeries lhs = poly_of_j(p_poly(k, n), N) * to_rational(base);
            CHECK(lhs.agrees_with(to_rational(dual_basis_form(k, n, N))));
        }
    }
}

TEST_CASE("g_{np} = g_n | V_p mod p^{k-1}") {
    for (int k : {4, 6}) {
        for (long p : {2L, 3L, 5L}) {
            const long N = 40;
            ZSeries a = dual_basis_form(k, 2 * p, N);
            ZSeries b = dual_basis_form(k, 2, N).v_p(p);
            Integer m = ipow(Integer(p), static_cast<unsigned long>(k - 1));
            for (long n = a.valuation(); n <= std::min(a.precision(), b.precision()); ++n)
                CHECK(mod(a.coeff(n) - b.coeff(n), m) == 0);
        }
    }
}

TEST_CASE("Frobenius and power congruences for P") {
    CHECK(frobenius_poly_congruence_check(4, 5, 1, 100));
    CHECK(power_congruence_check(4, 5, 1, 100));
    CHECK(frobenius_poly_congruence_check(6, 5, 2, 200));
    for (int k : {4, 6, 8, 10, 14})
        for (long p : {5L, 7L})
            for (int l = 1; l <= 2; ++l) CHECK(power_congruence_check(k, p, l, 60));
}

TEST_CASE("weight reduction") {
    CHECK(weight_reduction_exponents(6) == std::make_pair(0, 1));
    CHECK(weight_reduction_exponents(8) == std::make_pair(1, 1));
    CHECK(weight_reduction_check(14, 5, 1));
    for (int k : {6, 8, 10, 14})
        for (long p : {5L, 7L})
            for (int l = 1; l <= 2; ++l) CHECK(weight_reduction_check(k, p, l));
}

TEST_CASE("a_{np} = a_p a_n^p mod p away from 0 and 1728") {
    for (Rational c : {Rational(-3375), Rational(8000), Rational(11), Rational(-7)}) {
        for (int k : {4, 6, 8}) {
            QSeries f = f_series(k, c, 1, 30 * 13).series;
            for (long p : primes_in(5, 13)) {
                if (valuation(c, p) != 0 || valuation(c - 1728, p) != 0) continue;
                for (long n = 1; n <= 30; ++n) {
                    Rational d = f.coeff(n * p) - f.coeff(p) * rpow(f.coeff(n), p);
                    CHECK((d == 0 || valuation(d, p) >= 1));
                }
            }
        }
    }
}

TEST_CASE("decomposition at a pole") {
    const long N = 40;
    QSeries e8 = to_rational(mf::eisenstein_z(8, N));
    Decomposition id = decompose_at_pole(e8, e8, 8, Rational(-3375), 1, N);
    CHECK(id.lambda == std::vector<Rational>{1});
    CHECK(id.cusp.is_zero());
    QSeries e4sq = to_rational(mf::eisenstein_z(4, N).pow(2));
    Decomposition sq = decompose_at_pole(e4sq, e8, 8, Rational(-3375), 2, N);
    CHECK(sq.lambda == std::vector<Rational>{0, 1});
    CHECK(sq.cusp.is_zero());

    QSeries f = to_rational(mf::eisenstein_z(4, N)) * mf::eisenstein(12, N);
    QSeries g = mf::eisenstein(16, N);
    Decomposition d = decompose_at_pole(f, g, 16, Rational(-3375), 2, N);
    QSeries de4 = to_rational(mf::delta(N) * mf::eisenstein_z(4, N));
    Rational ratio = d.cusp.coeff(1) / de4.coeff(1);
    CHECK(d.cusp == de4.scale(ratio).truncate(d.cusp.precision()));
    CHECK(recompose(d, g, Rational(-3375), N) == f_series_general(f, 16, Rational(-3375), 2, N).series);
}

TEST_CASE("decomposition rejects a numerator vanishing at the pole") {
    // g = E_4 Delta (j - c) vanishes at the pole.
    const long N = 20;
    ZSeries e4 = mf::eisenstein_z(4, N);
    QSeries g = to_rational(e4 * (e4.pow(3) + mf::delta(N).scale(3375)));
    QSeries f = mf::eisenstein(16, N);
    CHECK_THROWS_WITH_AS(decompose_at_pole(f, g, 16, Rational(-3375), 1, N), doctest::Contains("GVanishesAtPole"), Error);
}
