#include "asd/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace asd {

Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& b, long e) {
    if (e < 0) {
        if (b == 0) throw Error("DivisionByZero", "0 to a negative power");
        Rational inv = 1 / b;
        return rpow(inv, -e);
    }
    Rational r(ipow(b.get_num(), static_cast<unsigned long>(e)), ipow(b.get_den(), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
}

Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer invmod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("NotInvertible", to_string(a) + " mod " + to_string(m));
    return r;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> primes_in(long lo, long hi) {
    std::vector<long> out;
    for (long n = std::max(2L, lo); n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

std::vector<std::pair<long, int>> factor(long n) {
    std::vector<std::pair<long, int>> out;
    if (n < 0) n = -n;
    for (long d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<long> divisors(long n) {
    std::vector<long> out{1};
    for (auto [p, e] : factor(n)) {
        size_t sz = out.size();
        long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long sigma(long n, int k) {
    long s = 0;
    for (long d : divisors(n)) {
        long t = 1;
        for (int i = 0; i < k; ++i) t *= d;
        s += t;
    }
    return s;
}

Integer sigma_big(long n, int k) {
    Integer s = 0;
    for (long d : divisors(n)) s += ipow(Integer(d), static_cast<unsigned long>(k));
    return s;
}

long valuation(const Integer& x, long p, long cap) {
    if (x == 0) return cap;
    Integer pp = p;
    Integer t = x;
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
        if (++v >= cap) return cap;
    }
    return v;
}

long valuation(const Rational& x, long p, long cap) {
    if (x == 0) return cap;
    return valuation(x.get_num(), p, cap) - valuation(x.get_den(), p, cap);
}

Integer reduce_mod(const Rational& x, const Integer& m) {
    if (x.get_den() == 1) return mod(x.get_num(), m);
    return mod(x.get_num() * invmod(x.get_den(), m), m);
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Integer sqrt_mod_prime(const Integer& a0, long p) {
    Integer P = p;
    Integer a = mod(a0, P);
    if (p == 2 || a == 0) return a;
    if (kronecker(a, P) != 1) throw Error("NotASquare", to_string(a) + " mod " + std::to_string(p));
    // Tonelli-Shanks
    long q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (kronecker(z, P) != -1) ++z;
    Integer m = s, c = powmod(z, q, P), t = powmod(a, q, P), r = powmod(a, (q + 1) / 2, P);
    while (t != 1) {
        long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % P;
            ++i;
        }
        Integer b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % P;
        m = i;
        c = b * b % P;
        t = t * c % P;
        r = r * b % P;
    }
    return r;
}

// ---- QuadraticInteger -----------------------------------------------------

Integer QuadraticInteger::norm() const {
    Integer a = 2 * x + y * D;
    return (a * a - Integer(D) * y * y) / 4;
}

Integer QuadraticInteger::trace() const { return 2 * x + y * D; }

QuadraticInteger QuadraticInteger::conj() const {
    // conj(w) = D - w
    return QuadraticInteger(D, x + y * D, -y);
}

static void same_order(const QuadraticInteger& a, const QuadraticInteger& b) {
    if (a.D != b.D) throw Error("RingMismatch", "quadratic integers of different discriminants");
}

QuadraticInteger QuadraticInteger::operator+(const QuadraticInteger& o) const {
    same_order(*this, o);
    return QuadraticInteger(D, x + o.x, y + o.y);
}

QuadraticInteger QuadraticInteger::operator-(const QuadraticInteger& o) const {
    same_order(*this, o);
    return QuadraticInteger(D, x - o.x, y - o.y);
}

QuadraticInteger QuadraticInteger::operator-() const { return QuadraticInteger(D, -x, -y); }

QuadraticInteger QuadraticInteger::operator*(const QuadraticInteger& o) const {
    same_order(*this, o);
    // w^2 = D w - D(D-1)/4
    Integer c = Integer(D) * (D - 1) / 4;
    Integer yy = y * o.y;
    return QuadraticInteger(D, x * o.x - yy * c, x * o.y + y * o.x + yy * D);
}

QuadraticInteger QuadraticInteger::pow(unsigned long e) const {
    QuadraticInteger r(D, 1, 0), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

static bool perfect_square(const Integer& n, Integer& root) {
    if (n < 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

QuadraticInteger cornacchia_split(long p, long D) {
    if (kronecker(D, p) != 1 || !is_prime(p))
        throw Error("NotSplit", std::to_string(p) + " does not split in discriminant " + std::to_string(D));
    const long absD = -D;
    Integer a, b;
    bool found = false;
    if (p == 2) {
        for (long bb = 1; absD * bb * bb <= 8 && !found; ++bb) {
            Integer r;
            if (perfect_square(Integer(8 - absD * bb * bb), r)) {
                a = r;
                b = bb;
                found = true;
            }
        }
    } else {
        // modified Cornacchia for a^2 + |D| b^2 = 4p
        Integer x0 = sqrt_mod_prime(Integer(D), p);
        if ((x0 - D) % 2 != 0) x0 = p - x0;
        Integer r0 = 2 * p, r1 = x0, bound;
        mpz_sqrt(bound.get_mpz_t(), Integer(4 * p).get_mpz_t());
        while (r1 > bound) {
            Integer t = r0 % r1;
            r0 = r1;
            r1 = t;
        }
        Integer rest = 4 * p - r1 * r1, root;
        if (rest % absD == 0 && perfect_square(rest / absD, root)) {
            a = r1;
            b = root;
            found = true;
        }
    }
    if (!found) throw Error("NotSplit", "no element of norm " + std::to_string(p) + " (class number > 1?)");
    // (a + b sqrt D)/2 = (a - bD)/2 + b w
    return QuadraticInteger(D, (a - b * D) / 2, b);
}

// ---- PadicApprox ----------------------------------------------------------

PadicApprox::PadicApprox(long pp, long NN, const Integer& v) : p(pp), N(NN) {
    value = mod(v, modulus());
}

PadicApprox PadicApprox::from_rational(long p, long N, const Rational& r) {
    PadicApprox out;
    out.p = p;
    out.N = N;
    out.value = reduce_mod(r, out.modulus());
    return out;
}

Integer PadicApprox::modulus() const { return ipow(Integer(p), static_cast<unsigned long>(N)); }

long PadicApprox::valuation() const { return asd::valuation(value, p, N); }

bool PadicApprox::is_unit() const { return value % p != 0; }

PadicApprox PadicApprox::inverse() const {
    if (!is_unit()) throw Error("NonUnit", "p-adic inverse of a non-unit");
    PadicApprox r = *this;
    r.value = invmod(value, modulus());
    return r;
}

static void same_prime(const PadicApprox& a, const PadicApprox& b) {
    if (a.p != b.p) throw Error("RingMismatch", "p-adic values at different primes");
}

PadicApprox PadicApprox::operator+(const PadicApprox& o) const {
    same_prime(*this, o);
    return PadicApprox(p, std::min(N, o.N), value + o.value);
}

PadicApprox PadicApprox::operator-(const PadicApprox& o) const {
    same_prime(*this, o);
    return PadicApprox(p, std::min(N, o.N), value - o.value);
}

PadicApprox PadicApprox::operator-() const { return PadicApprox(p, N, -value); }

PadicApprox PadicApprox::operator*(const PadicApprox& o) const {
    same_prime(*this, o);
    return PadicApprox(p, std::min(N, o.N), value * o.value);
}

PadicApprox PadicApprox::pow(unsigned long e) const {
    PadicApprox r = *this;
    r.value = powmod(value, Integer(static_cast<unsigned long>(e)), modulus());
    return r;
}

PadicApprox unit_root(const Integer& ap, long p, long N) {
    if (ap % p == 0) throw Error("SupersingularInput", "p divides a_p");
    Integer M = ipow(Integer(p), static_cast<unsigned long>(N));
    Integer u = mod(ap, Integer(p));
    // Newton iteration; f'(u) = 2u - ap is a unit since u = ap mod p.
    for (long prec = 1; prec < N; prec *= 2) {
        Integer f = u * u - ap * u + p;
        Integer df = 2 * u - ap;
        u = mod(u - f * invmod(mod(df, M), M), M);
    }
    return PadicApprox(p, N, u);
}

PadicApprox pi_side_omega(long D, long p, long N) {
    QuadraticInteger pi = cornacchia_split(p, D);
    Integer M = ipow(Integer(p), static_cast<unsigned long>(N));
    Integer P = p;
    // pi = x + y w vanishes mod p: w = -x/y mod p, then lift the root of w^2 - D w + D(D-1)/4.
    Integer w = mod(-pi.x * invmod(mod(pi.y, P), P), P);
    Integer c = Integer(D) * (D - 1) / 4;
    for (long prec = 1; prec < N; prec *= 2) {
        Integer f = w * w - Integer(D) * w + c;
        Integer df = mod(2 * w - D, M);
        w = mod(w - f * invmod(df, M), M);
    }
    return PadicApprox(p, N, w);
}

PadicApprox embed(const QuadraticInteger& x, long p, IdealSide side, long N) {
    PadicApprox w = pi_side_omega(x.D, p, N);
    if (side == IdealSide::PiBar) w = PadicApprox(p, N, Integer(x.D) - w.value);
    return PadicApprox(p, N, x.x + x.y * w.value);
}

long ideal_valuation(const QuadraticInteger& x, long p, IdealSide side, long N) {
    PadicApprox e = embed(x, p, side, N);
    long v = e.valuation();
    if (v >= N) throw Error("PrecisionExhausted", "ideal valuation >= " + std::to_string(N));
    return v;
}

// ---- Bernoulli ------------------------------------------------------------

namespace {
std::mutex bern_mutex;
std::vector<Rational> bern_cache{Rational(1)};

Integer binom(long n, long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}
}  // namespace

Rational bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(bern_mutex);
    while (bern_cache.size() <= n) {
        long m = static_cast<long>(bern_cache.size());
        Rational s = 0;
        for (long k = 0; k < m; ++k) s += Rational(binom(m + 1, k)) * bern_cache[k];
        Rational b = -s / Rational(m + 1);
        b.canonicalize();
        bern_cache.push_back(b);
    }
    return bern_cache[n];
}

static Rational bernoulli_poly(unsigned n, const Rational& x) {
    Rational s = 0;
    for (unsigned k = 0; k <= n; ++k) s += Rational(binom(n, k)) * bernoulli(k) * rpow(x, n - k);
    return s;
}

Rational generalized_bernoulli(unsigned n, long d0) {
    if (d0 == 1) return n == 1 ? Rational(1, 2) : bernoulli(n);
    long f = d0 < 0 ? -d0 : d0;
    Rational s = 0;
    for (long a = 1; a <= f; ++a) {
        int chi = kronecker(d0, a);
        if (!chi) continue;
        Rational x(a, f);
        x.canonicalize();
        s += chi * bernoulli_poly(n, x);
    }
    s *= rpow(Rational(f), static_cast<long>(n) - 1);
    s.canonicalize();
    return s;
}

Rational zeta_neg(unsigned s) {
    Rational r = -bernoulli(s) / Rational(s);
    r.canonicalize();
    return r;
}

Rational l_value_neg(unsigned s, long d0) {
    Rational r = -generalized_bernoulli(s, d0) / Rational(s);
    r.canonicalize();
    return r;
}

bool is_fundamental_discriminant(long d) {
    if (d == 1) return true;
    long m = ((d % 4) + 4) % 4;
    auto squarefree = [](long n) {
        for (auto [p, e] : factor(n))
            if (e > 1) return false;
        return true;
    };
    if (m == 1) return squarefree(d);
    if (m != 0) return false;
    long q = d / 4;
    long r = ((q % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(q);
}

// ---- continued fractions ---------------------------------------------------

namespace {
Integer floor_q(const Rational& x) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Integer ceil_q(const Rational& x) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

// Smallest-denominator rational in [lo, hi] (0 < lo <= hi), by continued fraction descent.
Rational simplest_positive(const Rational& lo, const Rational& hi, const Integer& bound, int depth) {
    if (depth > 4096) throw Error("NoConvergent", "continued fraction too deep");
    Integer c = ceil_q(lo);
    if (Rational(c) <= hi) return Rational(c);
    Integer fl = floor_q(lo);
    Rational inner = simplest_positive(1 / (hi - fl), 1 / (lo - fl), bound, depth + 1);
    if (inner.get_num() > bound) throw Error("NoConvergent", "denominator bound exceeded");
    Rational r = Rational(fl) + 1 / inner;
    r.canonicalize();
    return r;
}
}  // namespace

Rational rational_reconstruct(const Rational& x, const Rational& radius, const Integer& bound) {
    Rational lo = x - radius, hi = x + radius;
    Rational r;
    if (lo <= 0 && hi >= 0) {
        r = 0;
    } else if (hi < 0) {
        r = -simplest_positive(-hi, -lo, bound, 0);
    } else {
        r = simplest_positive(lo, hi, bound, 0);
    }
    if (r.get_den() > bound) throw Error("NoConvergent", "no rational with denominator <= bound in range");
    return r;
}

int moebius(long n) {
    if (n < 1) throw Error("DomainError", "moebius of non-positive integer");
    int m = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace asd
