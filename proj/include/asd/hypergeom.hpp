#pragma once

#include "asd/qseries.hpp"
#include "asd/report.hpp"

#include <vector>

namespace asd::hyp {

/// Upper parameters alpha and lower parameters beta; (1)_m in the denominator is implicit (z^m/m!).
struct HypergeometricDatum {
    std::vector<Rational> alpha;
    std::vector<Rational> beta;
};

/// ((1/2, 1/6, 5/6), (1, 1)).
HypergeometricDatum datum_3f2();
/// ((1/12, 5/12), (1)).
HypergeometricDatum datum_2f1_fk();
/// ((1/6, 5/6), (1)).
HypergeometricDatum datum_2f1_curve();

/// Coefficient prod (alpha_i)_m / prod (beta_j)_m / m! of z^m. Throws LowerParamPole.
Rational pfq_coefficient(const HypergeometricDatum& d, long m);
/// sum_{m <= r} coefficient(m) z^m.
Rational truncated_pfq(const HypergeometricDatum& d, const Rational& z, long r);
/// Same sum in Z/p^N, reducing factor by factor. Throws NotIntegral if a term is not p-integral.
PadicApprox truncated_pfq(const HypergeometricDatum& d, const PadicApprox& z, long r);

/// sum_{m <= r} (6m)!/(m!^3 (3m)!) x^m mod p, with x already reduced.
Integer factorial_sum_mod(const Integer& x, long p, long r);

/// a_{p^l}(E_4/(j - c)) against (c(c-1728))^{(p^l-1)/2} sum_{m<p^l} (6m)!/(m!^3(3m)!) c^{-m}, mod p.
/// Throws BadValuation unless v_p(c) = 0 and p >= 5. Cells with N < p^l come back CAPPED.
Cell hypergeom_congruence_check(const Rational& c, long p, int l, long N);

/// 2F1(1/12,5/12;1;1728/j)^4 = E_4, the Clausen square, and (E_10/Delta)^2 3F2(1728/j)^2 = j(j-1728) through q^N.
bool fricke_clausen_check(long N);

/// p | (6r)!/(r!^3 (3r)!) for (p^l-1)/6 < r <= p^l - 1.
bool coefficient_divisibility_check(long p, int l);

/// a_p of y^2 + xy = x^3 - lambda/432 against 2F1(1/6,5/6;1;lambda)_{p-1} mod p.
/// Throws BadReduction when p <= 3 or the curve has bad reduction at p.
Cell curve_2f1_check(const Rational& lambda, long p);

}  // namespace asd::hyp
