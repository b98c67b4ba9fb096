#pragma once

#include "asd/qseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asd::ec {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct EllipticCurve {
    Integer a1, a2, a3, a4, a6;
    Integer b2, b4, b6, b8, c4, c6, disc;
    Rational j;

    /// Throws Singular when the discriminant vanishes.
    EllipticCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
    bool good_at(long p) const { return !mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p)); }
    std::string equation() const;
};

struct Preset {
    std::string label;
    EllipticCurve curve;
    long cm_disc;  // 0 for curves without CM
};

/// 49.a4, 32.a3, 27.a4 (CM by -7, -4, -3) and 37.a1 (no CM).
const std::vector<Preset>& presets();
/// Throws UnknownPreset.
const Preset& preset(const std::string& label);

enum class Reduction { Ordinary, Supersingular, Bad };
const char* reduction_name(Reduction r);

/// p + 1 - #C(F_p). Throws BadReduction.
Integer ap(const EllipticCurve& c, long p);
/// alpha^l + beta^l. Throws BadReduction.
Integer ap_power(const EllipticCurve& c, long p, int l);
/// alpha^l + beta^l from a_p.
Integer power_trace(const Integer& ap, long p, int l);
/// q + 1 - #C(F_q) with q = p^2, counted directly.
Integer ap_count_fp2(const EllipticCurve& c, long p);

/// c_1..c_{k-1} with prod_i (X - alpha^{k-2-i} beta^i) = X^{k-1} + c_1 X^{k-2} + ... + c_{k-1}.
std::vector<Integer> sym_charpoly_from_ap(const Integer& ap, long p, int k);
std::vector<Integer> sym_charpoly(const EllipticCurve& c, long p, int k);

struct FrobeniusData {
    long p = 0;
    Integer ap;
    Reduction kind = Reduction::Bad;
    std::optional<PadicApprox> unit_root;  // ordinary only
    std::vector<Integer> sym;              // c^{(k)}_{p,1..k-1}
};

/// Throws BadReduction.
FrobeniusData classify(const EllipticCurve& c, long p, int k, long N);

/// (1/2) sum over alpha in O_D of alpha^w q^{N(alpha)} through q^N.
/// Integral apart from a_0 = 1/2 when w = 0.
QSeries theta_series(long D, int w, long N);
/// Coefficient of q^p: trace(pi^w) when p splits, 0 when inert. Throws RamifiedPrime.
Integer theta_coeff(long D, int w, long p);

/// Curve with coefficients in O_D, reduced at a prime above p.
struct QuadraticCurve {
    long D;
    QuadraticInteger a1, a2, a3, a4, a6;
    static QuadraticCurve base_change(const EllipticCurve& c, long D);
};

/// a_P = N(P) + 1 - #C(F_P). Split primes use the pi side of cornacchia_split; inert primes count over
/// F_p[x]/(least irreducible monic quadratic); ramified primes use F_p. Throws BadReduction.
Integer reduce_at_quadratic_prime(const QuadraticCurve& c, long p, IdealSide side = IdealSide::Pi);

}  // namespace asd::ec
