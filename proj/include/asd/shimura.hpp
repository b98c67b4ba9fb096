#pragma once

#include "asd/qseries.hpp"
#include "asd/report.hpp"

#include <vector>

namespace asd::shim {

/// Weight s+1/2 form in the plus space on Gamma_0(4). With modulus > 0 the coefficients are residues.
struct PlusSpaceForm {
    int s = 2;
    long m = 0;  // principal part q^{-m}, or -1 when the form is not a basis element
    ZSeries series;
    Integer modulus = 0;

    bool exact() const { return modulus == 0; }
    /// a_n = 0 whenever (-1)^s n = 2, 3 mod 4.
    bool mask_ok() const;
};

/// (-1)^s n = 0, 1 mod 4.
bool in_plus_space(int s, long n);
/// (-1)^{s-1} m = 0, 1 mod 4, m >= 0.
bool admissible(int s, long m);

/// theta = sum_{n in Z} q^{n^2}.
ZSeries theta_series(long N);
/// sum_{n odd} sigma_1(n) q^n.
ZSeries level4_weight2(long N);

/// Direct solve in Delta(4 tau)^{-t} M_{s+1/2+12t}(Gamma_0(4)) with t = ceil(m/4).
/// Throws NoSolution for inadmissible m and NonIntegralBasis if the solution is not integral.
PlusSpaceForm plus_basis_direct(int s, long m, long N);

/// f_{s+1/2,m} = q^{-m} + O(q) through q^N; modulus > 0 gives the residues mod modulus.
/// Built from the two seed forms by multiplying with j(4 tau) and clearing principal parts.
PlusSpaceForm plus_basis(int s, long m, long N, const Integer& modulus = 0);

/// f | T_{p, s+1/2}; output precision floor(N / p^2).
PlusSpaceForm half_hecke(const PlusSpaceForm& f, long p);

/// d0-th Shimura lift through q^N. Throws InsufficientPrecision, DomainError.
/// For a modular input the constant term is dropped (set to 0) and coefficients are residues.
QSeries shimura_lift(const PlusSpaceForm& f, long d0, long N);
/// Coefficients n >= 1 of the lift as integers (residues for modular input).
ZSeries shimura_lift_z(const PlusSpaceForm& f, long d0, long N);

/// g_0 .. g_imax of the U_p recursion. Throws NonIntegralStep when a division by p^{2s-1} fails.
std::vector<PlusSpaceForm> g_sequence(int s, long m, long p, int imax, long N);
/// p^2 does not divide m, or p = 2 with (-1)^{s-1} m/4 = 2, 3 mod 4.
bool lemma_hypotheses(int s, long m, long p);

struct MagneticReport {
    int r = 0;
    long nmax = 0;
    bool pass = true;
    long max_uniform = 0;  // largest e with n^e | a_n for all checked n, capped at r
    long witness = 0;      // first n with n^r not dividing a_n, 0 if none
    Integer witness_coeff = 0;
};

/// n^r | a_n for 1 <= n <= nmax. A nonzero modulus must be divisible by every n^r checked.
MagneticReport magnetic_check(const ZSeries& f, int r, long nmax, const Integer& modulus = 0);

/// Largest A with A^2 | m and (-1)^{s-1} m / A^2 = 0, 1 mod 4.
long magnetic_multiplier(int s, long m);

/// Cells for a_{np^l}(F_m) = p^{s-1}((-1)^{s-1}m/p) a_{np^{l-1}}(F_m) mod p^{(2s-1)l}, F_m = S_{d0} f_m.
std::vector<Cell> lift_eigen_cells(int s, long m, long p, long d0, int lmax, long nmax);
/// Cells for p^{(s-1)t} a_{np^l}(F_m) = 0 mod p^{(s-1)l}, t maximal with p^{2t} | m.
std::vector<Cell> lift_divisibility_cells(int s, long m, long p, long d0, int lmax, long nmax);
/// A^{s-1} S_{d0} f_m is (s-1)-magnetic through nmax, computed modulo lcm(1..nmax)^{s-1}.
MagneticReport lift_magnetic_check(int s, long m, long d0, long nmax);

/// S_{d0} f_{|d|} minus the scaled trace of d^{s-1} G_{2s}; true when they agree through q^N.
bool lift_trace_check(int s, long d, long d0, long N);
/// Sign eps(s) in S_{d0} f_{|d|} = eps(s) |d|^{-s/2} |d0|^{(s-1)/2} Tr_{d,d0}(d^{s-1} G_{2s}).
/// With the derivative and G_{2s} used here this is (-1)^{s + floor((s-1)/2)}; the literature
/// form -(-1)^{floor((s-1)/2)} agrees for odd s and has the opposite sign for even s.
int lift_trace_sign(int s);
/// Right side of the identity above. Throws IrrationalScale.
QSeries lift_trace_side(int s, long d, long d0, long N);

/// Scripted G_{2s, A^2 D0} from the lifts of f_{s+1/2,m} (s even: Moebius sum over A' | A;
/// s odd: ascending induction over the divisors of A).
QSeries g_from_lifts(int s, long D, long N);
/// g_from_lifts against cm::script_g.
bool mobius_bridge_check(int s, long D, long N);

}  // namespace asd::shim
