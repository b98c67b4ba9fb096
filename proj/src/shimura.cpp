#include "asd/shimura.hpp"

#include "asd/cm.hpp"
#include "asd/linalg.hpp"
#include "asd/modforms.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace asd::shim {

namespace {

long mod4(long x) { return ((x % 4) + 4) % 4; }

ZSeries reduce(const ZSeries& f, const Integer& M) {
    if (M == 0) return f;
    return f.map<Integer>([&](const Integer& x) { return mod(x, M); });
}

ZSeries mulm(const ZSeries& a, const ZSeries& b, const Integer& M) { return reduce(a * b, M); }

// Delta(4 tau)^{-t} through q^N.
ZSeries inverse_delta4(int t, long N, const Integer& M) {
    if (t == 0) return ZSeries::constant(1, N);
    long rel = N + 4L * t;  // relative precision needed in q
    long Nt = rel / 4 + 2;
    ZSeries d = mf::delta(Nt + 1);
    ZSeries inv = reduce(d.invert(), M);  // q^{-1} + ..., precision Nt - 1
    ZSeries pw = inv;
    for (int i = 1; i < t; ++i) pw = mulm(pw, inv, M);
    return pw.v_p(4).truncate(N);
}

// Seed solution: coefficient c[b] of theta^{w - 4b} F^b, times Delta(4 tau)^{-t}.
struct Combination {
    int t = 0;
    long w = 0;  // 2 * weight of the holomorphic part
    std::vector<Rational> c;
};

// theta^{w-4b} F^b for b = 0..w/4.
std::vector<ZSeries> monomials(long w, long N, const Integer& M) {
    long B = w / 4;
    ZSeries th = theta_series(N), F = level4_weight2(N);
    ZSeries th4 = mulm(mulm(th, th, M), mulm(th, th, M), M);
    std::vector<ZSeries> thp(static_cast<size_t>(B + 1)), fp(static_cast<size_t>(B + 1));
    // thp[i] = theta^{w - 4B + 4i}
    ZSeries base = ZSeries::constant(1, N);
    for (long i = 0; i < w - 4 * B; ++i) base = mulm(base, th, M);
    thp[0] = base;
    for (long i = 1; i <= B; ++i) thp[i] = mulm(thp[i - 1], th4, M);
    fp[0] = ZSeries::constant(1, N);
    for (long i = 1; i <= B; ++i) fp[i] = mulm(fp[i - 1], F, M);
    std::vector<ZSeries> out;
    for (long b = 0; b <= B; ++b) out.push_back(mulm(thp[B - b], fp[b], M));
    return out;
}

Combination solve_seed(int s, long m) {
    if (!admissible(s, m)) throw Error("NoSolution", "m is not admissible at this weight");
    Combination cb;
    cb.t = static_cast<int>((m + 3) / 4);
    cb.w = 2L * s + 1 + 24L * cb.t;
    const long K = cb.w / 4 + 1;
    const long lo = -4L * cb.t;
    for (long B = K + 8; B <= 64 * K + 256; B *= 2) {
        auto mono = monomials(cb.w, B + 4L * cb.t, 0);
        ZSeries inv = inverse_delta4(cb.t, B, 0);
        std::vector<ZSeries> cols;
        for (const auto& x : mono) cols.push_back((x * inv).truncate(B));
        linalg::Matrix rows;
        std::vector<Rational> rhs;
        for (long n = lo; n <= B; ++n) {
            if (n > 0 && in_plus_space(s, n)) continue;
            std::vector<Rational> row;
            for (const auto& col : cols) row.emplace_back(col.coeff(n));
            rows.push_back(std::move(row));
            rhs.emplace_back(n == -m ? 1 : 0);
        }
        try {
            cb.c = linalg::solve(rows, rhs);
            return cb;
        } catch (const Error& e) {
            if (e.code() != "NotUnique") throw;
        }
    }
    throw Error("NoSolution", "plus-space system did not become determined");
}

// Seed series through q^N, exact or mod M.
ZSeries evaluate_seed(const Combination& cb, long N, const Integer& M) {
    Integer L = 1;
    for (const auto& x : cb.c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    const Integer LM = M == 0 ? Integer(0) : L * M;
    auto mono = monomials(cb.w, N + 4L * cb.t, LM);
    ZSeries acc = ZSeries::zero(N + 4L * cb.t);
    for (size_t b = 0; b < mono.size(); ++b) {
        if (cb.c[b] == 0) continue;
        Integer cl = cb.c[b].get_num() * (L / cb.c[b].get_den());
        acc = reduce(acc + mono[b].scale(cl), LM);
    }
    ZSeries y = mulm(acc, inverse_delta4(cb.t, N, LM), LM).truncate(N);
    return y.map<Integer>([&](const Integer& x) {
        if (mpz_divisible_p(x.get_mpz_t(), L.get_mpz_t()) == 0)
            throw Error("NonIntegralBasis", "plus-space basis element is not integral");
        Integer q = x / L;
        return M == 0 ? q : mod(q, M);
    });
}

struct BasisCache {
    long prec = -1;
    long mmax = -1;
    std::map<long, ZSeries> forms;
};

std::mutex cache_mutex;
std::map<std::pair<int, std::string>, BasisCache> caches;
std::map<std::pair<int, long>, Combination> seed_cache;

Combination seed(int s, long m) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(s, m);
    auto it = seed_cache.find(key);
    if (it == seed_cache.end()) it = seed_cache.emplace(key, solve_seed(s, m)).first;
    return it->second;
}

// All admissible f_m' (m' <= mmax) through q^N.
BasisCache build(int s, long mmax, long N, const Integer& M) {
    const long m1 = s % 2 == 0 ? 3 : 1;
    const long gens = mmax / 4 + 1;
    const long Nw = N + 4 * gens + 4;
    BasisCache bc;
    bc.prec = N;
    bc.mmax = mmax;
    std::map<long, ZSeries> f;
    f[0] = evaluate_seed(seed(s, 0), Nw, M);
    if (m1 <= mmax) f[m1] = evaluate_seed(seed(s, m1), Nw, M);
    ZSeries j4 = reduce(mf::j_invariant(Nw / 4 + mmax / 4 + 4).v_p(4), M);
    for (long m = 4; m <= mmax; ++m) {
        if (!admissible(s, m)) continue;
        ZSeries g = mulm(f.at(m - 4), j4, M);
        for (long n = -m + 1; n <= 0; ++n) {
            Integer c = g.coeff(n);
            if (c == 0) continue;
            if (!admissible(s, -n)) throw Error("InternalError", "principal part left the plus space");
            g = reduce(g - f.at(-n).scale(c), M);
        }
        if (M == 0 ? g.coeff(-m) != 1 : mod(g.coeff(-m) - 1, M) != 0)
            throw Error("InternalError", "leading coefficient of the j(4 tau) step is not 1");
        f[m] = g;
    }
    for (auto& [m, x] : f) {
        if (x.precision() < N) throw Error("InternalError", "basis recursion lost too much precision");
        bc.forms.emplace(m, x.truncate(N));
    }
    return bc;
}

Integer ipw(long b, long e) { return ipow(Integer(b), static_cast<unsigned long>(e)); }

}  // namespace

bool in_plus_space(int s, long n) {
    long r = mod4(s % 2 ? -n : n);
    return r == 0 || r == 1;
}

bool admissible(int s, long m) { return m >= 0 && in_plus_space(s - 1, m); }

bool PlusSpaceForm::mask_ok() const {
    for (long n = series.valuation(); n <= series.precision(); ++n)
        if (!in_plus_space(s, n) && series.coeff(n) != 0) return false;
    return true;
}

ZSeries theta_series(long N) {
    std::vector<Integer> a(static_cast<size_t>(std::max(N, 0L) + 1), Integer(0));
    if (N < 0) return ZSeries::zero(N);
    a[0] = 1;
    for (long n = 1; n * n <= N; ++n) a[n * n] = 2;
    return ZSeries::from_coeffs(0, std::move(a), N);
}

ZSeries level4_weight2(long N) {
    if (N < 0) return ZSeries::zero(N);
    std::vector<Integer> a(static_cast<size_t>(N + 1), Integer(0));
    for (long d = 1; d <= N; d += 2)
        for (long n = d; n <= N; n += 2 * d) a[n] += d;
    return ZSeries::from_coeffs(0, std::move(a), N);
}

PlusSpaceForm plus_basis_direct(int s, long m, long N) {
    PlusSpaceForm f;
    f.s = s;
    f.m = m;
    f.series = evaluate_seed(solve_seed(s, m), N, 0);
    return f;
}

PlusSpaceForm plus_basis(int s, long m, long N, const Integer& modulus) {
    if (!admissible(s, m)) throw Error("NoSolution", "m is not admissible at this weight");
    if (modulus < 0) throw Error("DomainError", "modulus must be nonnegative");
    auto key = std::make_pair(s, modulus.get_str());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = caches.find(key);
        if (it != caches.end() && it->second.prec >= N && it->second.mmax >= m) {
            return PlusSpaceForm{s, m, it->second.forms.at(m).truncate(N), modulus};
        }
    }
    long mmax = m, prec = N;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = caches.find(key);
        if (it != caches.end()) {
            mmax = std::max(mmax, it->second.mmax);
            if (it->second.mmax >= m) prec = std::max(prec, it->second.prec);
        }
    }
    BasisCache bc = build(s, mmax, prec, modulus);
    PlusSpaceForm out{s, m, bc.forms.at(m).truncate(N), modulus};
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = caches[key];
    if (bc.prec >= slot.prec || bc.mmax >= slot.mmax) slot = std::move(bc);
    return out;
}

PlusSpaceForm half_hecke(const PlusSpaceForm& f, long p) {
    const ZSeries& a = f.series;
    const long p2 = p * p;
    const long N = ZSeries::floor_div(a.precision(), p2);
    const long start = a.is_zero() ? 0 : a.valuation();
    const long lo = start < 0 ? start * p2 : ZSeries::ceil_div(start, p2);
    const Integer c1 = ipw(p, f.s - 1), c2 = ipw(p, 2 * f.s - 1);
    std::vector<Integer> out;
    for (long n = lo; n <= N; ++n) {
        Integer v = 0;
        if (in_plus_space(f.s, n)) {
            v = a.coeff(n * p2);
            int chi = kronecker(Integer(f.s % 2 ? -n : n), Integer(p));
            if (chi) v += chi * c1 * a.coeff(n);
            if (n % p2 == 0) v += c2 * a.coeff(n / p2);
            if (f.modulus != 0) v = mod(v, f.modulus);
        }
        out.push_back(v);
    }
    PlusSpaceForm g = f;
    g.m = -1;
    g.series = ZSeries::from_coeffs(lo, std::move(out), N);
    return g;
}

namespace {

void check_lift_domain(const PlusSpaceForm& f, long d0, long N) {
    if (d0 != 1 && !is_fundamental_discriminant(d0)) throw Error("DomainError", "d0 must be a fundamental discriminant");
    if ((f.s % 2 ? -d0 : d0) <= 0) throw Error("DomainError", "need (-1)^s d0 > 0");
    const long need = std::labs(d0) * N * N;
    if (f.series.precision() < need)
        throw Error("InsufficientPrecision", "lift through q^" + std::to_string(N) + " needs the form through q^" +
                                                 std::to_string(need));
}

std::vector<Integer> lift_coeffs(const PlusSpaceForm& f, long d0, long N) {
    const long ad = std::labs(d0);
    std::vector<Integer> a(static_cast<size_t>(N + 1), Integer(0));
    for (long n = 1; n <= N; ++n) {
        Integer v = 0;
        for (long m : divisors(n)) {
            int chi = kronecker(Integer(d0), Integer(m));
            if (!chi) continue;
            long idx = ad * (n / m) * (n / m);
            v += chi * ipw(m, f.s - 1) * f.series.coeff(idx);
        }
        a[n] = f.modulus == 0 ? v : mod(v, f.modulus);
    }
    return a;
}

}  // namespace

QSeries shimura_lift(const PlusSpaceForm& f, long d0, long N) {
    check_lift_domain(f, d0, N);
    auto a = lift_coeffs(f, d0, N);
    std::vector<Rational> q;
    for (const auto& x : a) q.emplace_back(x);
    if (f.exact() && N >= 0) {
        // L(1-s, chi) = -B_{s,chi}/s
        Rational L = -generalized_bernoulli(static_cast<unsigned>(f.s), d0) / f.s;
        Rational c0 = L * Rational(f.series.coeff(0)) / 2;
        c0.canonicalize();
        q[0] = c0;
    }
    return QSeries::from_coeffs(0, std::move(q), N);
}

ZSeries shimura_lift_z(const PlusSpaceForm& f, long d0, long N) {
    check_lift_domain(f, d0, N);
    return ZSeries::from_coeffs(0, lift_coeffs(f, d0, N), N);
}

bool lemma_hypotheses(int s, long m, long p) {
    if (m % (p * p) != 0) return true;
    if (p == 2) {
        long r = mod4((s % 2 ? m : -m) / 4);
        return r == 2 || r == 3;
    }
    return false;
}

std::vector<PlusSpaceForm> g_sequence(int s, long m, long p, int imax, long N) {
    if (imax < 1) throw Error("DomainError", "imax must be >= 1");
    long need = N;
    for (int i = 1; i < imax; ++i) need *= p * p;
    PlusSpaceForm g1 = plus_basis(s, m, need);
    const int chi = kronecker(Integer(s % 2 ? m : -m), Integer(p));
    PlusSpaceForm g0 = g1;
    g0.m = -1;
    g0.series = g1.series.scale(chi * ipw(p, s - 1));
    std::vector<PlusSpaceForm> out{g0, g1};
    const Integer P = ipw(p, 2 * s - 1);
    for (int i = 1; i < imax; ++i) {
        PlusSpaceForm t = half_hecke(out[i], p);
        ZSeries diff = t.series - out[i - 1].series;
        PlusSpaceForm next = t;
        next.m = m * ipw(p, 2 * i).get_si();
        next.series = diff.map<Integer>([&](const Integer& x) {
            if (mpz_divisible_p(x.get_mpz_t(), P.get_mpz_t()) == 0)
                throw Error("NonIntegralStep", "g_" + std::to_string(i + 1) + " is not integral");
            return Integer(x / P);
        });
        out.push_back(next);
    }
    return out;
}

MagneticReport magnetic_check(const ZSeries& f, int r, long nmax, const Integer& modulus) {
    if (f.precision() < nmax) throw Error("InsufficientPrecision", "series is shorter than nmax");
    MagneticReport rep;
    rep.r = r;
    rep.nmax = nmax;
    const long cap = modulus == 0 ? 64 : r;
    rep.max_uniform = cap;
    for (long n = 2; n <= nmax; ++n) {
        Integer a = f.coeff(n);
        if (modulus != 0) a = mod(a, modulus);
        long e = 0;
        if (a == 0) {
            e = cap;
        } else {
            Integer nn = n;
            Integer pw = nn;
            while (e < cap && mpz_divisible_p(a.get_mpz_t(), pw.get_mpz_t())) {
                ++e;
                pw *= nn;
            }
        }
        if (modulus != 0 && e < cap) {
            // a residue only certifies divisibility by divisors of the modulus
            Integer nr = ipw(n, r);
            if (mpz_divisible_p(modulus.get_mpz_t(), nr.get_mpz_t()) == 0)
                throw Error("DomainError", "modulus is not divisible by n^r");
        }
        rep.max_uniform = std::min(rep.max_uniform, e);
        if (e < r && rep.witness == 0) {
            rep.pass = false;
            rep.witness = n;
            rep.witness_coeff = f.coeff(n);
        }
    }
    return rep;
}

long magnetic_multiplier(int s, long m) {
    long best = 1;
    for (long A = 1; A * A <= m; ++A) {
        if (m % (A * A)) continue;
        long q = m / (A * A);
        if (admissible(s, q)) best = A;
    }
    return best;
}

namespace {

long padic_v(const Integer& x, long p, long cap) { return x == 0 ? cap : std::min(cap, valuation(x, p)); }

}  // namespace

std::vector<Cell> lift_eigen_cells(int s, long m, long p, long d0, int lmax, long nmax) {
    std::vector<Cell> cells;
    if (!lemma_hypotheses(s, m, p)) {
        for (int l = 1; l <= lmax; ++l)
            for (long n = 1; n <= nmax; ++n) {
                Cell c;
                c.p = p;
                c.n = n;
                c.l = l;
                c.required = (2L * s - 1) * l;
                c.status = CellStatus::Skipped;
                c.note = "p^2 | m";
                cells.push_back(c);
            }
        return cells;
    }
    const long E = (2L * s - 1) * lmax + 2;
    const Integer M = ipw(p, E);
    const long Nl = nmax * ipw(p, lmax).get_si();
    PlusSpaceForm f = plus_basis(s, m, std::labs(d0) * Nl * Nl, M);
    ZSeries F = shimura_lift_z(f, d0, Nl);
    const Integer c = kronecker(Integer(s % 2 ? m : -m), Integer(p)) * ipw(p, s - 1);
    for (int l = 1; l <= lmax; ++l) {
        const long pl = ipw(p, l).get_si();
        for (long n = 1; n <= nmax; ++n) {
            Integer diff = mod(F.coeff(n * pl) - c * F.coeff(n * pl / p), M);
            Cell cell;
            cell.p = p;
            cell.n = n;
            cell.l = l;
            cell.required = (2L * s - 1) * l;
            cell.observed = padic_v(diff, p, E);
            cell.observed_exact = diff != 0;
            cell.settle();
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<Cell> lift_divisibility_cells(int s, long m, long p, long d0, int lmax, long nmax) {
    long t = 0;
    for (long T = 1;; ++T) {
        Integer q2 = ipw(p, 2 * T);
        if (q2 > m || m % q2.get_si() != 0 || !admissible(s, m / q2.get_si())) break;
        t = T;
    }
    const long E = (s - 1L) * lmax + 2;
    const Integer M = ipw(p, E);
    const long Nl = nmax * ipw(p, lmax).get_si();
    PlusSpaceForm f = plus_basis(s, m, std::labs(d0) * Nl * Nl, M);
    ZSeries F = shimura_lift_z(f, d0, Nl);
    std::vector<Cell> cells;
    for (int l = 1; l <= lmax; ++l) {
        const long pl = ipw(p, l).get_si();
        for (long n = 1; n <= nmax; ++n) {
            Integer a = mod(F.coeff(n * pl), M);
            Cell cell;
            cell.p = p;
            cell.n = n;
            cell.l = l;
            cell.required = (s - 1L) * l;
            cell.observed = (s - 1L) * t + padic_v(a, p, E);
            cell.observed_exact = a != 0;
            cell.note = "t=" + std::to_string(t);
            cell.settle();
            cells.push_back(cell);
        }
    }
    return cells;
}

MagneticReport lift_magnetic_check(int s, long m, long d0, long nmax) {
    Integer M = 1;
    for (long p : primes_in(2, nmax)) {
        long e = 0;
        for (long q = p; q <= nmax; q *= p) ++e;
        M *= ipw(p, e * (s - 1));
    }
    PlusSpaceForm f = plus_basis(s, m, std::labs(d0) * nmax * nmax, M);
    ZSeries F = shimura_lift_z(f, d0, nmax);
    const Integer A = ipw(magnetic_multiplier(s, m), s - 1);
    F = F.map<Integer>([&](const Integer& x) { return mod(A * x, M); });
    return magnetic_check(F, s - 1, nmax, M);
}

namespace {

// x^{num/2} for x > 0 when rational.
Rational half_power(long x, long num) {
    Integer r;
    if (num % 2 == 0) return rpow(Rational(x), num / 2);
    Integer X = x;
    if (!mpz_perfect_square_p(X.get_mpz_t())) throw Error("IrrationalScale", "scale factor is irrational");
    mpz_sqrt(r.get_mpz_t(), X.get_mpz_t());
    return rpow(Rational(r), num);
}

}  // namespace

int lift_trace_sign(int s) { return (s + (s - 1) / 2) % 2 ? -1 : 1; }

QSeries lift_trace_side(int s, long d, long d0, long N) {
    Rational scale = half_power(std::labs(d), -s) * half_power(std::labs(d0), s - 1) * lift_trace_sign(s);
    scale.canonicalize();
    return cm::trace(d, d0, s, N).scale(scale);
}

bool lift_trace_check(int s, long d, long d0, long N) {
    PlusSpaceForm f = plus_basis(s, std::labs(d), std::labs(d0) * N * N);
    QSeries lhs = shimura_lift(f, d0, N);
    QSeries rhs = lift_trace_side(s, d, d0, N);
    return lhs.precision() == N && rhs.precision() >= N && lhs == rhs.truncate(N);
}

QSeries g_from_lifts(int s, long D, long N) {
    auto [A, D0] = cm::conductor_split(D);
    const long a0 = std::labs(D0);
    if (s % 2 == 0) {
        QSeries acc = QSeries::zero(N);
        for (long Ap : divisors(A)) {
            int mu = moebius(A / Ap);
            if (!mu) continue;
            PlusSpaceForm f = plus_basis(s, Ap * Ap * a0, N * N);
            acc = acc + shimura_lift(f, 1, N).scale(Rational(mu * ipw(Ap, s)));
        }
        // G_{2s,A^2 D0} = eps(s) |D0|^{s/2} sum_{A'|A} mu(A/A') A'^s S_1 f_{A'^2|D0|}
        Rational c = rpow(Rational(a0), s / 2) * lift_trace_sign(s);
        return acc.scale(c);
    }
    // A^s S_{D0} f_{A^2} = eps(s) |D0|^{(s-1)/2} sum_{A'|A} (D0/(A/A')) G_{A'^2 D0}
    const Rational sign = lift_trace_sign(s);
    std::map<long, QSeries> g;
    for (long Ap : divisors(A)) {
        PlusSpaceForm f = plus_basis(s, Ap * Ap, a0 * N * N);
        QSeries t = shimura_lift(f, D0, N).scale(Rational(ipw(Ap, s)) * sign / rpow(Rational(a0), (s - 1) / 2));
        for (long Bp : divisors(Ap)) {
            if (Bp == Ap) continue;
            int chi = kronecker(Integer(D0), Integer(Ap / Bp));
            if (chi) t = t - g.at(Bp).scale(Rational(chi));
        }
        g.emplace(Ap, t);
    }
    return g.at(A);
}

bool mobius_bridge_check(int s, long D, long N) {
    QSeries lhs = g_from_lifts(s, D, N);
    QSeries rhs = cm::script_g(2 * s, D, N);
    return lhs.truncate(N) == rhs.truncate(N);
}

}  // namespace asd::shim
