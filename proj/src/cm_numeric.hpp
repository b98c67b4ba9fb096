#pragma once

#include "asd/exactnum.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <vector>

namespace asd::cm::num {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision (bits) for Real on this thread while in scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct Complex {
    Real re = 0;
    Real im = 0;
    Complex() = default;
    Complex(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Complex operator/(const Complex& o) const;
    Complex scale(const Real& s) const { return {re * s, im * s}; }
    Complex pow(long e) const;
    Real abs() const;
};

/// E_2*, E_4, E_6 at alpha = (-b + sqrt D)/(2a).
struct PointValues {
    Complex e2s, e4, e6;
    Complex delta() const;
    Complex j() const;
};

PointValues eval_at(long a, long b, long D, unsigned bits);

/// Exact value of a Real as a Rational.
Rational to_rational(const Real& x);

/// Simplest rational within 2^{-(bits - slack)} of x, or throws NoConvergent.
Rational reconstruct(const Real& x, unsigned bits, unsigned slack);

}  // namespace asd::cm::num
