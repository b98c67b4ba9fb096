#pragma once

#include "asd/cm_symbolic.hpp"
#include "asd/qseries.hpp"

#include <vector>

namespace asd::cm {

/// a X^2 + b XY + c Y^2.
struct QuadForm {
    long a = 1;
    long b = 0;
    long c = 1;
    long disc() const { return b * b - 4 * a * c; }
    long content() const;
    bool primitive() const { return content() == 1; }
    bool reduced() const;
    auto operator<=>(const QuadForm&) const = default;
};

struct ClassList {
    long D = 0;
    std::vector<QuadForm> forms;  // all reduced forms, sorted
    std::vector<int> wq;          // 1, 2 or 3 per form
    std::vector<QuadForm> primitive() const;
    long class_number() const { return static_cast<long>(primitive().size()); }
};

/// Throws NotADiscriminant unless D < 0 and D = 0, 1 mod 4.
ClassList reduced_forms(long D);
/// Gauss reduction of a positive definite form.
QuadForm reduce_form(QuadForm q);

/// 4, 6 or 2.
long w_D(long D);
/// (A, D0) with D = A^2 D0, D0 fundamental.
std::pair<long, long> conductor_split(long D);

/// Genus character of Q for disc(Q) = d d0. Throws NoCoprimeRepresentative.
int genus_character(const QuadForm& q, long d, long d0, long bound = 200);

/// j(alpha_D) and the generator normalization at the principal CM point (class number one).
struct CMConstants {
    long D = 0;
    Integer j;
    CMNormalization norm;  // sigma2 = 1 - 1728/j, rho = E_2* E_4 / E_6
};

/// Throws NotClassNumberOne or ReconstructionFailure.
CMConstants cm_constants(long D);

/// Sum_i A_i E_k/(j - j_D)^i with integer A of content one and positive leading series coefficient.
struct GConstruction {
    int k = 0;
    long D = 0;
    int r = 0;
    Integer jD;
    std::vector<Integer> A;  // A[i-1]
    ZSeries series;
};

/// Throws IdenticallyZero when the derivative vanishes at alpha_D.
GConstruction construct_g(int k, long D, int r, long N);
/// Rebuilds the series from a stored combination.
ZSeries g_series(int k, const Integer& jD, const std::vector<Integer>& A, long N);

/// Orders of E_k/(j - j0)^i at the elliptic point for i = 1..kappa, kappa maximal with order <= k-1.
struct PoleProfile {
    int kappa = 0;
    std::vector<int> orders;
};
PoleProfile pole_profile(int k, long j0);

/// (2/w_D) sum over primitive classes of (d^{(k-2)/2} G_k)(z, alpha_Q).
QSeries script_g(int k, long D, long N);
/// Same, with the given representatives (one per primitive class) and forced numeric evaluation.
QSeries script_g_numeric(int k, long D, const std::vector<QuadForm>& reps, long N);
/// |D0|^{-k/4} G or |D0|^{(k-2)/4} G; throws NonIntegralResult.
ZSeries tilde_scale(int k, long D, const QSeries& g);

/// Tr_{d,d0} of (d^{s-1} G_{2s})(z, tau) in tau. Throws NonRationalTrace when chi is not constant
/// on the primitive classes of some order.
QSeries trace(long d, long d0, int s, long N);

}  // namespace asd::cm
