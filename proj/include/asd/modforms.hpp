#pragma once

#include "asd/qseries.hpp"

#include <vector>

namespace asd::mf {

/// Level-one form: q-expansion plus weight and quasi-modular depth (1 for E_2).
struct LevelOneForm {
    QSeries series;
    int weight = 0;
    int depth = 0;
};

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n through q^N.
QSeries eisenstein(int k, long N);
/// Integral E_k for k in {2,4,6,8,10,14}; throws NotIntegral otherwise.
ZSeries eisenstein_z(int k, long N);
ZSeries e2(long N);
ZSeries delta(long N);
ZSeries j_invariant(long N);
LevelOneForm eisenstein_form(int k, long N);

/// Splits k = 12 l + k' with k' in {0,4,6,8,10,14}.
std::pair<int, int> g_k_split(int k);
/// g_k = E_{k'} Delta^l (weakly holomorphic when l < 0).
ZSeries g_k(int k, long N);

/// a_n(f|T_{m,k}) = sum_{r | (m,n)} r^{k-1} a_{mn/r^2}(f); output precision floor(N/m).
QSeries hecke(const QSeries& f, long m, int k);
/// Integer variant; throws NotIntegral if the image has non-integral coefficients.
ZSeries hecke(const ZSeries& f, long m, int k);
PSeries hecke(const PSeries& f, long m, int k);

/// D = q d/dq.
template <class R>
Series<R> d_operator(const Series<R>& f) {
    std::vector<R> a;
    for (long n = f.valuation(); n <= f.precision(); ++n)
        a.push_back(f.coeff(n) * RingTraits<R>::from_integer(Integer(n), f.ctx()));
    return Series<R>::from_coeffs(f.valuation(), std::move(a), f.precision(), f.ctx());
}

int dim_modular(int k);
int dim_cusp(int k);
/// Basis Delta^a E_{k-12a} (a = 1..dim) of S_k(1).
std::vector<ZSeries> cusp_basis(int k, long N);

/// Finitely supported lambda = (lambda_1, ..., lambda_{d+1}) with sum lambda_m a_m(f) = 0 on S_k(1).
struct Relation {
    std::vector<Integer> lambda;  // lambda[m-1]
    long max_index() const { return static_cast<long>(lambda.size()); }
};

Relation cusp_relation(int k);
/// F|lambda = sum lambda_m F|T_{m,k}.
QSeries apply_relation(const QSeries& F, const Relation& rel, int k);
PSeries apply_relation(const PSeries& F, const Relation& rel, int k);

}  // namespace asd::mf
