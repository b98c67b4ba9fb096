#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Error carrying a stable machine-readable code (e.g. "NotSplit").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// ---- elementary integer helpers -------------------------------------------

Integer ipow(const Integer& b, unsigned long e);
Rational rpow(const Rational& b, long e);
Integer powmod(const Integer& b, const Integer& e, const Integer& m);
Integer invmod(const Integer& a, const Integer& m);
Integer mod(const Integer& a, const Integer& m);
bool is_prime(long n);
std::vector<long> primes_in(long lo, long hi);
std::vector<std::pair<long, int>> factor(long n);
std::vector<long> divisors(long n);
long sigma(long n, int k);
Integer sigma_big(long n, int k);

/// v_p(x); returns `cap` when x == 0.
long valuation(const Integer& x, long p, long cap = 1L << 40);
long valuation(const Rational& x, long p, long cap = 1L << 40);

/// Rational reduced mod m (denominator must be a unit mod m).
Integer reduce_mod(const Rational& x, const Integer& m);

// ---- Kronecker symbol -----------------------------------------------------

int kronecker(const Integer& a, const Integer& n);
inline int kronecker(long a, long n) { return kronecker(Integer(a), Integer(n)); }

/// Square root of a modulo an odd prime p (a must be a square).
Integer sqrt_mod_prime(const Integer& a, long p);

// ---- quadratic integers ---------------------------------------------------

/// x + y*w in the order of discriminant D, with w = (D + sqrt D)/2.
struct QuadraticInteger {
    long D = -4;
    Integer x = 0;
    Integer y = 0;

    QuadraticInteger() = default;
    QuadraticInteger(long disc, Integer xx, Integer yy) : D(disc), x(std::move(xx)), y(std::move(yy)) {}

    Integer norm() const;
    Integer trace() const;
    QuadraticInteger conj() const;
    bool is_zero() const { return x == 0 && y == 0; }

    QuadraticInteger operator+(const QuadraticInteger& o) const;
    QuadraticInteger operator-(const QuadraticInteger& o) const;
    QuadraticInteger operator-() const;
    QuadraticInteger operator*(const QuadraticInteger& o) const;
    QuadraticInteger& operator+=(const QuadraticInteger& o) { return *this = *this + o; }
    QuadraticInteger& operator-=(const QuadraticInteger& o) { return *this = *this - o; }
    QuadraticInteger& operator*=(const QuadraticInteger& o) { return *this = *this * o; }
    bool operator==(const QuadraticInteger& o) const { return D == o.D && x == o.x && y == o.y; }
    bool operator!=(const QuadraticInteger& o) const { return !(*this == o); }
    QuadraticInteger pow(unsigned long e) const;
};

/// Element of norm p in O_D. Throws NotSplit unless (D/p) = 1.
QuadraticInteger cornacchia_split(long p, long D);

// ---- p-adic approximations ------------------------------------------------

/// Residue modulo p^N.
struct PadicApprox {
    long p = 2;
    long N = 1;
    Integer value = 0;

    PadicApprox() = default;
    PadicApprox(long pp, long NN, const Integer& v);
    static PadicApprox from_rational(long p, long N, const Rational& r);

    Integer modulus() const;
    /// Exact v_p when < N, otherwise N (read as ">= N").
    long valuation() const;
    bool valuation_exact() const { return valuation() < N; }
    bool is_zero() const { return value == 0; }
    bool is_unit() const;
    PadicApprox inverse() const;

    PadicApprox operator+(const PadicApprox& o) const;
    PadicApprox operator-(const PadicApprox& o) const;
    PadicApprox operator-() const;
    PadicApprox operator*(const PadicApprox& o) const;
    PadicApprox& operator+=(const PadicApprox& o) { return *this = *this + o; }
    PadicApprox& operator-=(const PadicApprox& o) { return *this = *this - o; }
    PadicApprox& operator*=(const PadicApprox& o) { return *this = *this * o; }
    bool operator==(const PadicApprox& o) const { return p == o.p && N == o.N && value == o.value; }
    bool operator!=(const PadicApprox& o) const { return !(*this == o); }
    PadicApprox pow(unsigned long e) const;
};

/// Unit root of X^2 - ap X + p modulo p^N. Throws SupersingularInput if p | ap.
PadicApprox unit_root(const Integer& ap, long p, long N);

enum class IdealSide { Pi, PiBar };

/// Image of w = (D + sqrt D)/2 under the embedding O_D -> Z_p that sends pi into pZ_p,
/// where pi = cornacchia_split(p, D).
PadicApprox pi_side_omega(long D, long p, long N);

/// Image of a quadratic integer in Z_p under the embedding of `side`.
PadicApprox embed(const QuadraticInteger& x, long p, IdealSide side, long N);

/// v_pi(x) or v_pibar(x). Throws PrecisionExhausted when the valuation is >= N.
long ideal_valuation(const QuadraticInteger& x, long p, IdealSide side, long N);

// ---- Bernoulli numbers ----------------------------------------------------

Rational bernoulli(unsigned n);
/// Generalized Bernoulli number B_{n,chi} for chi = (d0/.), d0 a fundamental discriminant (or 1).
Rational generalized_bernoulli(unsigned n, long d0);
/// zeta(1 - s) = -B_s / s.
Rational zeta_neg(unsigned s);
/// L(1 - s, (d0/.)) = -B_{s,chi} / s.
Rational l_value_neg(unsigned s, long d0);

bool is_fundamental_discriminant(long d);

// ---- continued fractions ---------------------------------------------------

/// Unique rational with denominator <= bound within `radius` of x. Throws NoConvergent.
Rational rational_reconstruct(const Rational& x, const Rational& radius, const Integer& bound);

int moebius(long n);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

}  // namespace asd
