#include "cm_numeric.hpp"

#include <cmath>

namespace asd::cm::num {

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Complex Complex::operator/(const Complex& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Complex Complex::pow(long e) const {
    if (e < 0) return Complex(Real(1)) / pow(-e);
    Complex r(Real(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Real Complex::abs() const { return sqrt(re * re + im * im); }

Complex PointValues::delta() const { return (e4.pow(3) - e6 * e6).scale(Real(1) / 1728); }

Complex PointValues::j() const {
    Complex c = e4.pow(3);
    return (c / (c - e6 * e6)).scale(Real(1728));
}

PointValues eval_at(long a, long b, long D, unsigned bits) {
    const Real pi = boost::multiprecision::mpfr_float(boost::math::constants::pi<Real>());
    const Real y = sqrt(Real(-D)) / (2 * a);
    const Real x = Real(-b) / (2 * a);
    const Real r = exp(-2 * pi * y);
    const Complex q(r * cos(2 * pi * x), r * sin(2 * pi * x));
    // stop once |q|^n n^6 is far below 2^-bits
    const double lq = 2 * M_PI * static_cast<double>(y);
    long nmax = 1;
    while (lq * nmax - 6 * std::log(static_cast<double>(nmax)) < (bits + 40) * std::log(2.0)) ++nmax;
    Complex s1, s3, s5, qn(Real(1));
    for (long n = 1; n <= nmax; ++n) {
        qn = qn * q;
        s1 = s1 + qn.scale(Real(sigma(n, 1)));
        s3 = s3 + qn.scale(Real(sigma_big(n, 3).get_str()));
        s5 = s5 + qn.scale(Real(sigma_big(n, 5).get_str()));
    }
    PointValues v;
    v.e2s = Complex(Real(1)) - s1.scale(Real(24)) - Complex(Real(3) / (pi * y));
    v.e4 = Complex(Real(1)) + s3.scale(Real(240));
    v.e6 = Complex(Real(1)) - s5.scale(Real(504));
    return v;
}

Rational to_rational(const Real& x) {
    Rational out;
    mpfr_get_q(out.get_mpq_t(), x.backend().data());
    return out;
}

Rational reconstruct(const Real& x, unsigned bits, unsigned slack) {
    long mag = 0;
    if (x != 0) mag = std::max(0L, static_cast<long>(mpfr_get_exp(x.backend().data())));
    long eff = static_cast<long>(bits) - static_cast<long>(slack) - mag;
    if (eff < 16) throw Error("NoConvergent", "not enough precision for reconstruction");
    Rational radius(Integer(1), ipow(Integer(2), static_cast<unsigned long>(eff)));
    Integer bound = ipow(Integer(2), static_cast<unsigned long>(eff / 2 - 4));
    return rational_reconstruct(to_rational(x), radius, bound);
}

}  // namespace asd::cm::num
