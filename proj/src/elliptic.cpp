#include "asd/elliptic.hpp"

#include <cmath>

namespace asd::ec {

EllipticCurve::EllipticCurve(Integer A1, Integer A2, Integer A3, Integer A4, Integer A6)
    : a1(std::move(A1)), a2(std::move(A2)), a3(std::move(A3)), a4(std::move(A4)), a6(std::move(A6)) {
    b2 = a1 * a1 + 4 * a2;
    b4 = 2 * a4 + a1 * a3;
    b6 = a3 * a3 + 4 * a6;
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4 = b2 * b2 - 24 * b4;
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw Error("Singular", "discriminant vanishes");
    j = Rational(c4 * c4 * c4, disc);
    j.canonicalize();
}

std::string EllipticCurve::equation() const {
    return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," + a6.get_str() + "]";
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = {
        {"49.a4", EllipticCurve(1, -1, 0, -2, -1), -7},
        {"32.a3", EllipticCurve(0, 0, 0, -1, 0), -4},
        {"27.a4", EllipticCurve(0, 0, 1, 0, 0), -3},
        {"37.a1", EllipticCurve(0, 0, 1, -1, 0), 0},
    };
    return list;
}

const Preset& preset(const std::string& label) {
    for (const auto& p : presets())
        if (p.label == label) return p;
    throw Error("UnknownPreset", "no preset curve '" + label + "'");
}

const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::Ordinary: return "ordinary";
        case Reduction::Supersingular: return "supersingular";
        case Reduction::Bad: return "bad";
    }
    return "?";
}

namespace {

// F_p or F_p[x]/(x^2 + c1 x + c0); element a + b x stored as index a + b p.
struct Field {
    long p;
    int deg;
    long c0 = 0, c1 = 0;

    long size() const { return deg == 1 ? p : p * p; }
    long lo(long e) const { return e % p; }
    long hi(long e) const { return e / p; }
    long make(long a, long b) const { return ((a % p + p) % p) + ((b % p + p) % p) * p; }
    long add(long x, long y) const { return make(lo(x) + lo(y), hi(x) + hi(y)); }
    long neg(long x) const { return make(-lo(x), -hi(x)); }
    long sub(long x, long y) const { return add(x, neg(y)); }
    long mul(long x, long y) const {
        long a = lo(x), b = hi(x), c = lo(y), d = hi(y);
        long bd = b * d % p;
        return make(a * c - bd * c0, a * d + b * c - bd * c1);
    }
    long from(const Integer& v) const { return make(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)), 0); }
};

Field extension(long p) {
    for (long c1 = 0; c1 < p; ++c1)
        for (long c0 = 0; c0 < p; ++c0) {
            bool root = false;
            for (long x = 0; x < p && !root; ++x) root = (x * x + c1 * x + c0) % p == 0;
            if (!root) return Field{p, 2, c0, c1};
        }
    throw Error("InternalError", "no irreducible quadratic");
}

struct Coeffs {
    long a1, a2, a3, a4, a6;
};

long discriminant(const Field& F, const Coeffs& a) {
    long b2 = F.add(F.mul(a.a1, a.a1), F.mul(F.from(4), a.a2));
    long b4 = F.add(F.mul(F.from(2), a.a4), F.mul(a.a1, a.a3));
    long b6 = F.add(F.mul(a.a3, a.a3), F.mul(F.from(4), a.a6));
    long b8 = F.sub(F.add(F.add(F.mul(F.mul(a.a1, a.a1), a.a6), F.mul(F.from(4), F.mul(a.a2, a.a6))),
                          F.mul(a.a2, F.mul(a.a3, a.a3))),
                    F.add(F.mul(a.a1, F.mul(a.a3, a.a4)), F.mul(a.a4, a.a4)));
    long t = F.neg(F.mul(F.mul(b2, b2), b8));
    t = F.sub(t, F.mul(F.from(8), F.mul(b4, F.mul(b4, b4))));
    t = F.sub(t, F.mul(F.from(27), F.mul(b6, b6)));
    t = F.add(t, F.mul(F.from(9), F.mul(b2, F.mul(b4, b6))));
    return t;
}

// Number of projective points.
long count_points(const Field& F, const Coeffs& a) {
    const long q = F.size();
    long count = 1;
    if (F.p == 2) {
        for (long x = 0; x < q; ++x) {
            long rhs = F.add(F.add(F.mul(F.mul(x, x), F.add(x, a.a2)), F.mul(a.a4, x)), a.a6);
            for (long y = 0; y < q; ++y) {
                long lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(a.a1, x), a.a3)));
                if (lhs == rhs) ++count;
            }
        }
        return count;
    }
    std::vector<unsigned char> roots(static_cast<size_t>(q), 0);
    for (long y = 0; y < q; ++y) ++roots[F.mul(y, y)];
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    long b2 = F.add(F.mul(a.a1, a.a1), F.mul(F.from(4), a.a2));
    long b4 = F.add(F.mul(F.from(2), a.a4), F.mul(a.a1, a.a3));
    long b6 = F.add(F.mul(a.a3, a.a3), F.mul(F.from(4), a.a6));
    long four = F.from(4), two = F.from(2);
    for (long x = 0; x < q; ++x) {
        long f = F.add(F.mul(F.add(F.mul(F.add(F.mul(four, x), b2), x), F.mul(two, b4)), x), b6);
        count += roots[f];
    }
    return count;
}

Coeffs reduce_rational(const Field& F, const EllipticCurve& c) {
    return {F.from(c.a1), F.from(c.a2), F.from(c.a3), F.from(c.a4), F.from(c.a6)};
}

void require_good(const EllipticCurve& c, long p) {
    if (p < 2 || !is_prime(p)) throw Error("DomainError", "p must be prime");
    if (!c.good_at(p)) throw Error("BadReduction", "bad reduction at " + std::to_string(p));
}

}  // namespace

Integer ap(const EllipticCurve& c, long p) {
    require_good(c, p);
    Field F{p, 1};
    return Integer(p + 1 - count_points(F, reduce_rational(F, c)));
}

Integer power_trace(const Integer& a, long p, int l) {
    if (l < 0) throw Error("DomainError", "l must be >= 0");
    Integer t0 = 2, t1 = a;
    if (l == 0) return t0;
    for (int i = 1; i < l; ++i) {
        Integer t2 = a * t1 - p * t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

Integer ap_power(const EllipticCurve& c, long p, int l) { return power_trace(ap(c, p), p, l); }

Integer ap_count_fp2(const EllipticCurve& c, long p) {
    require_good(c, p);
    Field F = extension(p);
    return Integer(p * p + 1 - count_points(F, reduce_rational(F, c)));
}

std::vector<Integer> sym_charpoly_from_ap(const Integer& a, long p, int k) {
    if (k < 3) throw Error("DomainError", "k must be >= 3");
    const int w = k - 2;
    // ascending coefficients of the monic product
    std::vector<Integer> poly{Integer(1)};
    auto mul = [&](const std::vector<Integer>& f) {
        std::vector<Integer> r(poly.size() + f.size() - 1, Integer(0));
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < f.size(); ++j) r[i + j] += poly[i] * f[j];
        poly = std::move(r);
    };
    const Integer P = p;
    for (int b = 0; 2 * b < w; ++b) {
        // alpha^{w-b} beta^b and its conjugate: sum p^b t_{w-2b}, product p^w
        Integer s = ipow(P, static_cast<unsigned long>(b)) * power_trace(a, p, w - 2 * b);
        mul({ipow(P, static_cast<unsigned long>(w)), -s, Integer(1)});
    }
    if (w % 2 == 0) mul({-ipow(P, static_cast<unsigned long>(w / 2)), Integer(1)});
    std::vector<Integer> out;
    for (int i = static_cast<int>(poly.size()) - 2; i >= 0; --i) out.push_back(poly[i]);
    return out;
}

std::vector<Integer> sym_charpoly(const EllipticCurve& c, long p, int k) { return sym_charpoly_from_ap(ap(c, p), p, k); }

FrobeniusData classify(const EllipticCurve& c, long p, int k, long N) {
    FrobeniusData d;
    d.p = p;
    d.ap = ap(c, p);
    d.kind = mpz_divisible_ui_p(d.ap.get_mpz_t(), static_cast<unsigned long>(p)) ? Reduction::Supersingular
                                                                                   : Reduction::Ordinary;
    if (d.kind == Reduction::Ordinary) d.unit_root = unit_root(d.ap, p, N);
    d.sym = sym_charpoly_from_ap(d.ap, p, k);
    return d;
}

QSeries theta_series(long D, int w, long N) {
    if (D >= 0 || ((D % 4) + 4) % 4 > 1) throw Error("DomainError", "D must be a negative discriminant");
    if (w < 0 || w % 2) throw Error("DomainError", "w must be even and >= 0");
    std::vector<QuadraticInteger> acc(static_cast<size_t>(N + 1), QuadraticInteger(D, 0, 0));
    const long aD = -D;
    for (long y = 0; aD * y * y <= 4 * N; ++y) {
        for (int sgn : {1, -1}) {
            if (y == 0 && sgn < 0) continue;
            const long sy = sgn * y;
            long rem = 4 * N - aD * y * y;
            long umax = static_cast<long>(std::sqrt(static_cast<double>(rem)));
            while (umax * umax > rem) --umax;
            while ((umax + 1) * (umax + 1) <= rem) ++umax;
            for (long u = -umax; u <= umax; ++u) {
                if (((u - sy * D) % 2 + 2) % 2) continue;
                long n = (u * u + aD * y * y) / 4;
                if (n == 0) {
                    if (w == 0) acc[0] += QuadraticInteger(D, 1, 0);
                    continue;
                }
                QuadraticInteger a(D, (u - sy * D) / 2, sy);
                acc[n] += a.pow(static_cast<unsigned long>(w));
            }
        }
    }
    std::vector<Rational> c(static_cast<size_t>(N + 1));
    for (long n = 0; n <= N; ++n) {
        if (acc[n].y != 0) throw Error("InternalError", "theta coefficient is not rational");
        c[n] = Rational(acc[n].x, 2);
        c[n].canonicalize();
    }
    return QSeries::from_coeffs(0, std::move(c), N);
}

Integer theta_coeff(long D, int w, long p) {
    if (D % p == 0) throw Error("RamifiedPrime", std::to_string(p) + " divides " + std::to_string(D));
    if (kronecker(D, p) == -1) return 0;
    long units = D == -4 ? 4 : D == -3 ? 6 : 2;
    if (w % units) return 0;
    return Integer(units / 2) * cornacchia_split(p, D).pow(static_cast<unsigned long>(w)).trace();
}

QuadraticCurve QuadraticCurve::base_change(const EllipticCurve& c, long D) {
    auto lift = [D](const Integer& x) { return QuadraticInteger(D, x, 0); };
    return {D, lift(c.a1), lift(c.a2), lift(c.a3), lift(c.a4), lift(c.a6)};
}

Integer reduce_at_quadratic_prime(const QuadraticCurve& c, long p, IdealSide side) {
    if (p < 2 || !is_prime(p)) throw Error("DomainError", "p must be prime");
    const long D = c.D;
    int chi = D % p == 0 ? 0 : kronecker(D, p);
    Field F = chi == -1 ? extension(p) : Field{p, 1};
    // image of w: a root of X^2 - D X + D(D-1)/4 in the residue field
    const long m1 = F.from(Integer(-D)), m0 = F.from(Integer(D * (D - 1) / 4));
    std::vector<long> roots;
    for (long x = 0; x < F.size(); ++x)
        if (F.add(F.add(F.mul(x, x), F.mul(m1, x)), m0) == 0) roots.push_back(x);
    if (roots.empty()) throw Error("InternalError", "no root of the minimal polynomial");
    long w = roots[0];
    if (chi == 1) {
        QuadraticInteger pi = cornacchia_split(p, D);
        auto kills = [&](long r) { return F.add(F.from(pi.x), F.mul(F.from(pi.y), r)) == 0; };
        long pi_root = kills(roots[0]) ? roots[0] : roots.back();
        long other = pi_root == roots[0] ? roots.back() : roots[0];
        w = side == IdealSide::Pi ? pi_root : other;
    }
    auto red = [&](const QuadraticInteger& z) { return F.add(F.from(z.x), F.mul(F.from(z.y), w)); };
    Coeffs a{red(c.a1), red(c.a2), red(c.a3), red(c.a4), red(c.a6)};
    if (discriminant(F, a) == 0) throw Error("BadReduction", "bad reduction at the prime above " + std::to_string(p));
    const long q = F.size();
    return Integer(q + 1 - count_points(F, a));
}

}  // namespace asd::ec
