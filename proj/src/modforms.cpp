#include "asd/modforms.hpp"

#include "asd/linalg.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace asd::mf {

namespace {

std::mutex cache_mutex;
std::map<int, ZSeries> eis_cache;  // integral Eisenstein series, keyed by weight
ZSeries delta_cache;

ZSeries eisenstein_raw(int k, long N) {
    if (k < 2 || k % 2) throw Error("DomainError", "Eisenstein weight must be even and >= 2");
    Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
    c.canonicalize();
    if (c.get_den() != 1) throw Error("NotIntegral", "E_" + std::to_string(k) + " is not integral");
    Integer ci = c.get_num();
    // sigma_{k-1} by a sieve
    std::vector<Integer> sig(static_cast<size_t>(N + 1), Integer(0));
    for (long d = 1; d <= N; ++d) {
        Integer dk = ipow(Integer(d), static_cast<unsigned long>(k - 1));
        for (long m = d; m <= N; m += d) sig[m] += dk;
    }
    std::vector<Integer> a(static_cast<size_t>(N + 1));
    a[0] = 1;
    for (long n = 1; n <= N; ++n) a[n] = ci * sig[n];
    return ZSeries::from_coeffs(0, std::move(a), N);
}

ZSeries delta_raw(long N) {
    // q * prod (1 - q^n)^24, with prod (1 - q^n)^3 = sum (-1)^n (2n+1) q^{n(n+1)/2}
    long M = std::max(0L, N - 1);
    std::vector<Integer> p3(static_cast<size_t>(M + 1), Integer(0));
    for (long n = 0; n * (n + 1) / 2 <= M; ++n) p3[n * (n + 1) / 2] = (n % 2 ? -1 : 1) * (2 * n + 1);
    ZSeries s = ZSeries::from_coeffs(0, std::move(p3), M);
    s = s * s;  // ^2
    s = s * s;  // ^4
    s = s * s;  // ^8  -> (prod)^24
    return s.shift(1);
}

}  // namespace

ZSeries eisenstein_z(int k, long N) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = eis_cache.find(k);
    if (it == eis_cache.end() || it->second.precision() < N) {
        ZSeries e = eisenstein_raw(k, std::max(N, it == eis_cache.end() ? 0L : 2 * it->second.precision()));
        it = eis_cache.insert_or_assign(k, e).first;
    }
    return it->second.truncate(N);
}

QSeries eisenstein(int k, long N) {
    if (k < 2 || k % 2) throw Error("DomainError", "Eisenstein weight must be even and >= 2");
    Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
    c.canonicalize();
    if (c.get_den() == 1) return to_rational(eisenstein_z(k, N));
    std::vector<Rational> a(static_cast<size_t>(N + 1));
    a[0] = 1;
    for (long n = 1; n <= N; ++n) a[n] = c * Rational(sigma_big(n, k - 1));
    return QSeries::from_coeffs(0, std::move(a), N);
}

ZSeries e2(long N) { return eisenstein_z(2, N); }

ZSeries delta(long N) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (delta_cache.precision() < N) delta_cache = delta_raw(std::max(N, 2 * delta_cache.precision()));
    return delta_cache.truncate(N);
}

ZSeries j_invariant(long N) {
    ZSeries e4 = eisenstein_z(4, N + 1);
    ZSeries d = delta(N + 2);
    ZSeries j = e4.pow(3) * d.invert();
    return j.truncate(N);
}

LevelOneForm eisenstein_form(int k, long N) { return {eisenstein(k, N), k, k == 2 ? 1 : 0}; }

std::pair<int, int> g_k_split(int k) {
    if (k % 2) throw Error("DomainError", "g_k needs even weight");
    for (int kp : {0, 4, 6, 8, 10, 14}) {
        if (((k - kp) % 12 + 12) % 12 == 0) return {(k - kp) / 12, kp};
    }
    throw Error("DomainError", "no decomposition");
}

ZSeries g_k(int k, long N) {
    auto [l, kp] = g_k_split(k);
    ZSeries e = kp == 0 ? ZSeries::constant(1, N) : eisenstein_z(kp, N);
    if (l == 0) return e.truncate(N);
    // Delta^l known through N needs Delta to relative precision N - l.
    long need = N - l + 1;
    ZSeries d = delta(std::max(need, 1L) + 1);
    ZSeries dl = l > 0 ? d.pow(static_cast<unsigned long>(l)) : d.invert().pow(static_cast<unsigned long>(-l));
    ZSeries ee = eisenstein_z(kp == 0 ? 4 : kp, N - l + 1);
    if (kp == 0) ee = ZSeries::constant(1, N - l + 1);
    return (ee * dl).truncate(N);
}

namespace {

template <class R>
Series<R> hecke_impl(const Series<R>& f, long m, int k) {
    if (m < 1) throw Error("DomainError", "Hecke index must be positive");
    using T = RingTraits<R>;
    const long v = f.valuation() <= f.precision() ? f.valuation() : 0;
    const long hi = Series<R>::floor_div(f.precision(), m);
    const long lo = v < 0 ? v * m : 0;
    // r^{k-1} for r | m
    std::map<long, R> rk;
    for (long r : divisors(m)) rk.emplace(r, T::from_rational(rpow(Rational(r), k - 1), f.ctx()));
    std::vector<R> a;
    for (long n = lo; n <= hi; ++n) {
        long g = std::gcd(m, n < 0 ? -n : n);
        if (n == 0) g = m;
        R s = T::zero(f.ctx());
        for (long r : divisors(g)) {
            long idx = m * n / (r * r);
            if (idx < v) continue;
            s = s + rk.at(r) * f.coeff(idx);
        }
        a.push_back(s);
    }
    return Series<R>::from_coeffs(lo, std::move(a), hi, f.ctx());
}

}  // namespace

QSeries hecke(const QSeries& f, long m, int k) { return hecke_impl(f, m, k); }

ZSeries hecke(const ZSeries& f, long m, int k) {
    if (k >= 1) return hecke_impl(f, m, k);
    return to_integer(hecke_impl(to_rational(f), m, k));
}

PSeries hecke(const PSeries& f, long m, int k) { return hecke_impl(f, m, k); }

int dim_modular(int k) {
    if (k < 0 || k % 2) return 0;
    if (k == 2) return 0;
    return k % 12 == 2 ? k / 12 : k / 12 + 1;
}

int dim_cusp(int k) { return k >= 12 ? dim_modular(k) - 1 : 0; }

namespace {
ZSeries monomial_weight(int w, long N) {
    // E4^b E6^c with 4b + 6c = w, c in {0,1}
    if (w == 0) return ZSeries::constant(1, N);
    int c = (w % 4 == 0) ? 0 : 1;
    int b = (w - 6 * c) / 4;
    ZSeries r = ZSeries::constant(1, N);
    if (b) r = r * eisenstein_z(4, N).pow(static_cast<unsigned long>(b));
    if (c) r = r * eisenstein_z(6, N);
    return r;
}
}  // namespace

std::vector<ZSeries> cusp_basis(int k, long N) {
    std::vector<ZSeries> out;
    int d = dim_cusp(k);
    for (int a = 1; a <= d; ++a)
        out.push_back((delta(N).pow(static_cast<unsigned long>(a)) * monomial_weight(k - 12 * a, N)).truncate(N));
    return out;
}

Relation cusp_relation(int k) {
    if (k < 4 || k % 2) throw Error("DomainError", "relations are defined for even k >= 4");
    int d = dim_cusp(k);
    if (d == 0) return Relation{{Integer(1)}};
    auto basis = cusp_basis(k, d + 1);
    linalg::Matrix m(d, std::vector<Rational>(d + 1));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= d; ++j) m[i][j] = Rational(basis[i].coeff(j + 1));
    auto ker = linalg::kernel(m);
    if (ker.size() != 1) throw Error("InternalError", "cusp relation kernel is not one-dimensional");
    return Relation{linalg::primitive_integer(ker[0])};
}

namespace {
template <class R>
Series<R> apply_relation_impl(const Series<R>& F, const Relation& rel, int k) {
    Series<R> acc;
    bool have = false;
    for (long m = 1; m <= rel.max_index(); ++m) {
        const Integer& l = rel.lambda[m - 1];
        if (l == 0) continue;
        Series<R> t = hecke(F, m, k).scale(RingTraits<R>::from_integer(l, F.ctx()));
        acc = have ? acc + t : t;
        have = true;
    }
    if (!have) return Series<R>::zero(F.precision(), F.ctx());
    return acc;
}
}  // namespace

QSeries apply_relation(const QSeries& F, const Relation& rel, int k) { return apply_relation_impl(F, rel, k); }
PSeries apply_relation(const PSeries& F, const Relation& rel, int k) { return apply_relation_impl(F, rel, k); }

}  // namespace asd::mf
