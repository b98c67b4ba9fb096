#include "asd/exactnum.hpp"

#include <doctest.h>

#include <random>

using namespace asd;

namespace {

// Euler's criterion by brute force, extended to p = 2 by the mod-8 rule.
int legendre_oracle(long a, long p) {
    if (p == 2) {
        long r = ((a % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// sum_{k<=n} C(n+1, k) B_k = 0.
Rational bernoulli_oracle(unsigned n) {
    std::vector<Rational> B{Rational(1)};
    for (unsigned m = 1; m <= n; ++m) {
        Rational s = 0;
        Integer c = 1;  // C(m+1, k)
        for (unsigned k = 0; k < m; ++k) {
            s += Rational(c) * B[k];
            c = c * (m + 1 - k) / (k + 1);
        }
        Rational b = -s / Rational(m + 1);
        b.canonicalize();
        B.push_back(b);
    }
    return B[n];
}

int moebius_oracle(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

}  // namespace

TEST_CASE("kronecker symbol values") {
    CHECK(kronecker(-3, 5) == legendre_oracle(-3, 5));
    CHECK(kronecker(-3, 5) == -1);
    CHECK(kronecker(-3, 2) == legendre_oracle(-3, 2));
    CHECK(kronecker(-3, 2) == -1);
    for (long a : {-7L, -4L, 0L, 3L, 12L}) CHECK(kronecker(a, 1) == 1);
}

TEST_CASE("kronecker agrees with Euler's criterion at odd primes") {
    for (long p : primes_in(3, 60))
        for (long a = -30; a <= 30; ++a) CHECK(kronecker(a, p) == legendre_oracle(a, p));
}

TEST_CASE("kronecker is multiplicative in the top argument") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> A(-500, 500), N(1, 400);
    for (int i = 0; i < 400; ++i) {
        long a = A(rng), b = A(rng), n = N(rng);
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    }
}

TEST_CASE("cornacchia split") {
    QuadraticInteger pi = cornacchia_split(11, -7);
    CHECK(pi.norm() == 11);
    // a^2 + 7 b^2 = 44 forces a = +-4, so the trace is +-4.
    CHECK(abs(pi.trace()) == 4);
    QuadraticInteger two = cornacchia_split(2, -7);
    CHECK(two.norm() == 2);
    CHECK(abs(two.trace()) == 1);
    CHECK_THROWS_WITH_AS(cornacchia_split(3, -7), doctest::Contains("NotSplit"), Error);
}

TEST_CASE("cornacchia: pi times its conjugate is p") {
    for (long D : {-3L, -4L, -7L, -8L, -11L, -19L, -43L, -163L, -12L, -28L})
        for (long p : primes_in(3, 200)) {
            if (kronecker(D, p) != 1) continue;
            QuadraticInteger pi = cornacchia_split(p, D);
            CHECK(pi.norm() == p);
            CHECK(pi * pi.conj() == QuadraticInteger(D, p, 0));
        }
}

TEST_CASE("quadratic norm is multiplicative") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> X(-50, 50);
    for (long D : {-3L, -4L, -7L, 5L, 13L})
        for (int i = 0; i < 50; ++i) {
            QuadraticInteger a(D, X(rng), X(rng)), b(D, X(rng), X(rng));
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK(a * b == b * a);
        }
}

TEST_CASE("unit root by Hensel lifting") {
    // Brute force over Z/121.
    long root = -1;
    for (long u = 0; u < 121; ++u)
        if ((u * u - 4 * u + 11) % 121 == 0 && u % 11) root = u;
    REQUIRE(root == 92);
    CHECK(unit_root(4, 11, 2).value == root);
    CHECK(unit_root(4, 11, 1).value == 4);
    CHECK(unit_root(-3, 7, 1).value == 4);
    CHECK_THROWS_WITH_AS(unit_root(5, 5, 4), doctest::Contains("SupersingularInput"), Error);
}

TEST_CASE("unit root satisfies u (ap - u) = p") {
    std::mt19937 rng(5);
    for (long p : primes_in(3, 97)) {
        long bound = static_cast<long>(2 * std::sqrt(static_cast<double>(p)));
        std::uniform_int_distribution<long> A(-bound, bound);
        for (int i = 0; i < 5; ++i) {
            long ap = A(rng);
            if (ap % p == 0) continue;
            PadicApprox u = unit_root(ap, p, 12);
            CHECK(u.valuation() == 0);
            CHECK(u * (PadicApprox(p, 12, ap) - u) == PadicApprox(p, 12, p));
        }
    }
}

TEST_CASE("ideal valuations") {
    QuadraticInteger pi = cornacchia_split(11, -7);
    CHECK(ideal_valuation(pi, 11, IdealSide::Pi, 20) == 1);
    CHECK(ideal_valuation(pi, 11, IdealSide::PiBar, 20) == 0);
    QuadraticInteger p(-7, 11, 0), one(-7, 1, 0);
    CHECK(ideal_valuation(p, 11, IdealSide::Pi, 20) == 1);
    CHECK(ideal_valuation(p, 11, IdealSide::PiBar, 20) == 1);
    CHECK(ideal_valuation(one, 11, IdealSide::Pi, 20) == 0);
    CHECK_THROWS_WITH_AS(ideal_valuation(QuadraticInteger(-7, 0, 0), 11, IdealSide::Pi, 20),
                         doctest::Contains("PrecisionExhausted"), Error);
}

TEST_CASE("the two ideal valuations add up to v_p of the norm") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> X(-400, 400);
    for (long D : {-7L, -4L, -3L, -8L})
        for (long p : {11L, 29L, 37L, 53L}) {
            if (kronecker(D, p) != 1) continue;
            for (int i = 0; i < 40; ++i) {
                QuadraticInteger x(D, X(rng), X(rng));
                if (x.is_zero()) continue;
                long a = ideal_valuation(x, p, IdealSide::Pi, 40), b = ideal_valuation(x, p, IdealSide::PiBar, 40);
                CHECK(a + b == valuation(x.norm(), p));
            }
        }
}

TEST_CASE("Bernoulli numbers and zeta values") {
    CHECK(bernoulli(2) == bernoulli_oracle(2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(zeta_neg(2) == -bernoulli_oracle(2) / 2);
    CHECK(zeta_neg(2) == Rational(-1, 12));
    CHECK(bernoulli(3) == 0);
    for (unsigned n = 0; n <= 30; ++n) CHECK(bernoulli(n) == bernoulli_oracle(n));
}

TEST_CASE("generalized Bernoulli numbers of the trivial character") {
    // B_{n,1} = B_n except B_{1,1} = +1/2.
    for (unsigned n = 2; n <= 12; ++n) CHECK(generalized_bernoulli(n, 1) == bernoulli(n));
    // B_{1,chi_-4} = -1/2 and B_{1,chi_-3} = -1/3 (class number over w/2).
    CHECK(generalized_bernoulli(1, -4) == Rational(-1, 2));
    CHECK(generalized_bernoulli(1, -3) == Rational(-1, 3));
}

TEST_CASE("rational reconstruction") {
    CHECK(rational_reconstruct(Rational("333333333333/1000000000000"), Rational("1/10000000000"), 100) ==
          Rational(1, 3));
    CHECK(rational_reconstruct(Rational(1, 2), Rational("1/1000000000000"), 10) == Rational(1, 2));
    CHECK_THROWS_WITH_AS(
        rational_reconstruct(Rational("3141592653589793/1000000000000000"), Rational("1/1000000000000"), 10),
        doctest::Contains("NoConvergent"), Error);
}

TEST_CASE("rational reconstruction round-trips small fractions") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> A(-200, 200), B(1, 200);
    for (int i = 0; i < 200; ++i) {
        Rational x(A(rng), B(rng));
        x.canonicalize();
        // 30 decimal digits, truncated.
        Integer scale = ipow(Integer(10), 30);
        Integer t = x.get_num() * scale / x.get_den();
        Rational approx(t, scale);
        approx.canonicalize();
        CHECK(rational_reconstruct(approx, Rational(Integer(1), ipow(Integer(10), 25)), 200) == x);
    }
}

TEST_CASE("moebius function") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(4) == 0);
    CHECK(moebius(6) == moebius_oracle(6));
    CHECK(moebius(6) == 1);
    for (long n = 1; n <= 500; ++n) CHECK(moebius(n) == moebius_oracle(n));
}

TEST_CASE("p-adic precision propagates as the minimum") {
    PadicApprox a(5, 10, 7), b(5, 4, 3);
    CHECK((a + b).N == 4);
    CHECK((a * b).N == 4);
    CHECK(PadicApprox(5, 6, 125).valuation() == 3);
    CHECK(PadicApprox(5, 6, 0).valuation() == 6);
    CHECK_FALSE(PadicApprox(5, 6, 0).valuation_exact());
    CHECK((PadicApprox(7, 8, 3).inverse() * PadicApprox(7, 8, 3)).value == 1);
}

TEST_CASE("rationals stay canonical") {
    Rational x = Rational(3, 2) + Rational(1, 2);
    CHECK(x.get_den() == 1);
    CHECK(x.get_num() == 2);
    Rational h("6/4");
    h.canonicalize();
    CHECK(h == Rational(3, 2));
    Rational y = Rational(-1, 3) * Rational(-3, 1);
    CHECK(y == 1);
    CHECK(y.get_den() > 0);
}
