#pragma once

#include "asd/modforms.hpp"

#include <string>
#include <vector>

namespace asd::mero {

/// E_k/(j - c)^r (or g/(j - c)^r) with its expansion.
struct MeromorphicForm {
    int weight = 0;
    Rational c;
    int r = 1;
    std::string numerator;  // "E_k" or "g"
    QSeries series;
};

/// Delta / (E_4^3 - c Delta) = 1/(j - c), in any coefficient ring.
template <class R>
Series<R> inverse_j_minus_c(const R& c, long N, typename RingTraits<R>::Ctx ctx = {}) {
    auto lift = [&](const ZSeries& z) {
        return z.map<R>([&](const Integer& x) { return RingTraits<R>::from_integer(x, ctx); }, ctx);
    };
    Series<R> d = lift(mf::delta(N));
    Series<R> e4 = lift(mf::eisenstein_z(4, N));
    Series<R> den = e4 * e4 * e4 - d.scale(c);
    return (d * den.invert()).truncate(N);
}

/// Numerator times (1/(j - c))^r through q^N.
template <class R>
Series<R> divide_by_j_power(const Series<R>& g, const R& c, int r, long N) {
    if (r < 0) throw Error("DomainError", "negative pole order");
    Series<R> h = inverse_j_minus_c<R>(c, N, g.ctx());
    Series<R> out = g.truncate(N);
    for (int i = 0; i < r; ++i) out = (out * h).truncate(N);
    return out;
}

/// E_k in ring R.
template <class R>
Series<R> eisenstein_in(int k, long N, typename RingTraits<R>::Ctx ctx = {}) {
    QSeries e = mf::eisenstein(k, N);
    return e.map<R>([&](const Rational& x) { return RingTraits<R>::from_rational(x, ctx); }, ctx);
}

MeromorphicForm f_series(int k, const Rational& c, int r, long N);
/// Integral fast path for integer c.
ZSeries f_series_z(int k, const Integer& c, int r, long N);
/// Residues mod p^e (c must be a p-adic integer).
PSeries f_series_padic(int k, const Rational& c, int r, long N, long p, long e);
/// g/(j - c)^r for a general holomorphic numerator.
MeromorphicForm f_series_general(const QSeries& g, int weight, const Rational& c, int r, long N);

/// Coefficients (ascending) of P_{k,n} for n = 1..nmax; entry n-1 has degree n-1.
std::vector<std::vector<Integer>> p_poly_table(int k, long nmax);
RatPoly p_poly(int k, long n);
/// X^{n-1} P_{4,n}(1/X).
RatPoly q_poly(long n);

/// g_{2-k,n} = n^{k-1} (E_{14-k}/Delta)|T_{n,2-k}.
ZSeries dual_basis_form(int k, long n, long N);

/// Evaluates an integer polynomial at j as a series mod p^e through q^N.
PSeries poly_at_j(const std::vector<Integer>& poly, long N, long p, long e);

/// P_{k,np}(j) g_{2-k} == g_{2-k,n}^p and P_{k,np} == P_{k,p} P_{k,n}^p, both mod p.
bool frobenius_poly_congruence_check(int k, long p, long n, long N);
/// P_{k,p^l}(j) == g_{2-k}^{p^l - 1} mod p, through q^N.
bool power_congruence_check(int k, long p, int l, long N);
/// (a, b) with P_{4,p^l}^{(k-2)/2} == (X^a (X-1728)^b)^{p^l-1} P_{k,p^l} mod p.
std::pair<int, int> weight_reduction_exponents(int k);
bool weight_reduction_check(int k, long p, int l);

/// f/(j-c)^r = sum_i lambda_i g/(j-c)^i + cusp.
struct Decomposition {
    std::vector<Rational> lambda;  // lambda[i-1] multiplies g/(j-c)^i
    QSeries cusp;
};

/// f/g as a polynomial ratio in j: values (P_f(c), P_g(c)) with f = g_k P_f(j), g = g_k P_g(j).
std::pair<Rational, Rational> ratio_at(const QSeries& f, const QSeries& g, int k, const Rational& c);
Decomposition decompose_at_pole(const QSeries& f, const QSeries& g, int k, const Rational& c, int r, long N);
/// Rebuilds f/(j-c)^r from a decomposition.
QSeries recompose(const Decomposition& d, const QSeries& g, const Rational& c, long N);

}  // namespace asd::mero
