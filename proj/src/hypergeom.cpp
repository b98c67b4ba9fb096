#include "asd/hypergeom.hpp"

#include "asd/meromorphic.hpp"
#include "asd/modforms.hpp"

namespace asd::hyp {

HypergeometricDatum datum_3f2() { return {{Rational(1, 2), Rational(1, 6), Rational(5, 6)}, {Rational(1), Rational(1)}}; }
HypergeometricDatum datum_2f1_fk() { return {{Rational(1, 12), Rational(5, 12)}, {Rational(1)}}; }
HypergeometricDatum datum_2f1_curve() { return {{Rational(1, 6), Rational(5, 6)}, {Rational(1)}}; }

namespace {

void check_lower(const HypergeometricDatum& d, long r) {
    for (const auto& b : d.beta) {
        if (b.get_den() == 1 && b <= 0 && -b < r) throw Error("LowerParamPole", "lower parameter hits a pole within range");
    }
}

// Tracks p^e * u with u a unit mod p^N.
struct PUnit {
    long p;
    long N;
    Integer mod;
    long e = 0;
    Integer u = 1;

    void mul_integer(Integer x, bool divide) {
        if (x == 0) throw Error("LowerParamPole", "zero factor");
        long v = 0;
        while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
            x /= p;
            ++v;
        }
        x = asd::mod(x, mod);
        if (divide) {
            e -= v;
            u = asd::mod(u * invmod(x, mod), mod);
        } else {
            e += v;
            u = asd::mod(u * x, mod);
        }
    }
    void mul_rational(const Rational& r, bool divide) {
        mul_integer(r.get_num(), divide);
        mul_integer(r.get_den(), !divide);
    }
    Integer value() const {
        if (e < 0) throw Error("NotIntegral", "term is not p-integral");
        if (e >= N) return 0;
        return asd::mod(u * ipow(Integer(p), static_cast<unsigned long>(e)), mod);
    }
};

}  // namespace

Rational pfq_coefficient(const HypergeometricDatum& d, long m) {
    check_lower(d, m);
    Rational c = 1;
    for (long i = 0; i < m; ++i) {
        for (const auto& a : d.alpha) c *= a + i;
        for (const auto& b : d.beta) c /= b + i;
        c /= i + 1;
    }
    c.canonicalize();
    return c;
}

Rational truncated_pfq(const HypergeometricDatum& d, const Rational& z, long r) {
    if (r < 0) throw Error("DomainError", "truncation index must be >= 0");
    check_lower(d, r);
    Rational sum = 1, term = 1;
    for (long i = 0; i < r; ++i) {
        for (const auto& a : d.alpha) term *= a + i;
        for (const auto& b : d.beta) term /= b + i;
        term *= z;
        term /= i + 1;
        term.canonicalize();
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

PadicApprox truncated_pfq(const HypergeometricDatum& d, const PadicApprox& z, long r) {
    if (r < 0) throw Error("DomainError", "truncation index must be >= 0");
    check_lower(d, r);
    PUnit c{z.p, z.N, z.modulus()};
    PadicApprox sum(z.p, z.N, 1), zm(z.p, z.N, 1);
    for (long i = 0; i < r; ++i) {
        for (const auto& a : d.alpha) c.mul_rational(a + i, false);
        for (const auto& b : d.beta) c.mul_rational(b + i, true);
        c.mul_integer(i + 1, true);
        zm = zm * z;
        sum = sum + PadicApprox(z.p, z.N, c.value()) * zm;
    }
    return sum;
}

Integer factorial_sum_mod(const Integer& x, long p, long r) {
    const Integer P = p;
    PUnit t{p, 1, P};
    Integer sum = 1, xm = 1;
    for (long m = 1; m <= r; ++m) {
        // t_m / t_{m-1} = 24 (6m-1)(2m-1)(6m-5) / m^3
        t.mul_integer(24, false);
        t.mul_integer(6 * m - 1, false);
        t.mul_integer(2 * m - 1, false);
        t.mul_integer(6 * m - 5, false);
        for (int i = 0; i < 3; ++i) t.mul_integer(m, true);
        xm = asd::mod(xm * x, P);
        sum += t.value() * xm;
    }
    return asd::mod(sum, P);
}

Cell hypergeom_congruence_check(const Rational& c, long p, int l, long N) {
    if (p < 5 || !is_prime(p)) throw Error("BadValuation", "needs a prime p >= 5");
    if (c == 0 || valuation(c, p) != 0) throw Error("BadValuation", "needs v_p(c) = 0");
    long q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    Cell cell;
    cell.p = p;
    cell.n = 1;
    cell.l = l;
    cell.required = 1;
    if (N < q) {
        cell.observed = 0;
        cell.observed_exact = false;
        cell.settle();
        return cell;
    }
    const Integer P = p;
    Integer lhs = mero::f_series_padic(4, c, 1, q, p, 1).coeff(q).value;
    Integer cm = reduce_mod(c, P);
    Integer pref = powmod(asd::mod(cm * (cm - 1728), P), Integer((q - 1) / 2), P);
    Integer rhs = asd::mod(pref * factorial_sum_mod(invmod(cm, P), p, q - 1), P);
    bool eq = asd::mod(lhs - rhs, P) == 0;
    cell.observed = eq ? 1 : 0;
    cell.observed_exact = !eq;
    cell.settle();
    return cell;
}

namespace {

// sum_{m <= M} coefficient(m) (1728 a)^m as a q-series, where a = 1/j.
QSeries pfq_at_inverse_j(const HypergeometricDatum& d, const QSeries& a, long M) {
    QSeries x = a.scale(Rational(1728));
    QSeries acc = QSeries::constant(pfq_coefficient(d, M), M);
    for (long m = M - 1; m >= 0; --m)
        acc = (acc * x).truncate(M) + QSeries::constant(pfq_coefficient(d, m), M);
    return acc;
}

}  // namespace

bool fricke_clausen_check(long N) {
    if (N < 0) throw Error("DomainError", "precision must be >= 0");
    const long M = N + 4;
    QSeries a = to_rational(mero::inverse_j_minus_c<Integer>(Integer(0), M));
    QSeries f = pfq_at_inverse_j(datum_2f1_fk(), a, M);
    QSeries g = pfq_at_inverse_j(datum_3f2(), a, M);
    QSeries e4 = mf::eisenstein(4, M);
    QSeries f2 = (f * f).truncate(M);
    bool fk = (f2 * f2).truncate(N) == e4.truncate(N);
    bool clausen = f2.truncate(N) == g.truncate(N);

    QSeries e10d = (to_rational(mf::eisenstein_z(10, M + 2)) * to_rational(mf::delta(M + 2)).invert()).truncate(M);
    QSeries lhs = (e10d * e10d * g * g).truncate(N);
    QSeries j = to_rational(mf::j_invariant(M + 2));
    QSeries rhs = (j * (j - QSeries::constant(Rational(1728), M + 2))).truncate(N);
    bool squared = lhs.precision() == N && rhs.precision() == N && lhs == rhs;
    return fk && clausen && squared;
}

bool coefficient_divisibility_check(long p, int l) {
    if (p % 2 == 0 || p % 3 == 0) throw Error("DomainError", "needs p coprime to 6");
    long q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    auto vfact = [p](long n) {
        long v = 0;
        for (long t = n / p; t > 0; t /= p) v += t;
        return v;
    };
    for (long r = (q - 1) / 6 + 1; r <= q - 1; ++r)
        if (vfact(6 * r) - 3 * vfact(r) - vfact(3 * r) < 1) return false;
    return true;
}

Cell curve_2f1_check(const Rational& lambda, long p) {
    if (p <= 3 || !is_prime(p)) throw Error("BadReduction", "needs a prime p >= 5");
    if (lambda == 0 || lambda == 1 || valuation(lambda, p) != 0 || valuation(Rational(1 - lambda), p) != 0)
        throw Error("BadReduction", "y^2 + xy = x^3 - lambda/432 is singular mod p");
    const Integer P = p;
    Integer a6 = reduce_mod(Rational(-lambda / 432), P);
    Integer quarter = invmod(Integer(4), P);
    // (y + x/2)^2 = x^3 + x^2/4 + a6
    long s = 0;
    for (long x = 0; x < p; ++x) {
        Integer X = x;
        s += kronecker(asd::mod(X * X * X + X * X * quarter + a6, P), P);
    }
    Integer ap = -s;
    PadicApprox rhs = truncated_pfq(datum_2f1_curve(), PadicApprox::from_rational(p, 1, lambda), p - 1);
    bool eq = asd::mod(ap - rhs.value, P) == 0;
    Cell cell;
    cell.p = p;
    cell.n = 1;
    cell.l = 1;
    cell.required = 1;
    cell.observed = eq ? 1 : 0;
    cell.observed_exact = !eq;
    cell.settle();
    return cell;
}

}  // namespace asd::hyp
