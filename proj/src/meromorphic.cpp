#include "asd/meromorphic.hpp"

namespace asd::mero {

MeromorphicForm f_series(int k, const Rational& c, int r, long N) {
    if (r < 1) throw Error("DomainError", "pole order must be >= 1");
    MeromorphicForm m;
    m.weight = k;
    m.c = c;
    m.r = r;
    m.numerator = "E_" + std::to_string(k);
    if (c.get_den() == 1)
        m.series = to_rational(f_series_z(k, c.get_num(), r, N));
    else
        m.series = divide_by_j_power<Rational>(eisenstein_in<Rational>(k, N), c, r, N);
    return m;
}

ZSeries f_series_z(int k, const Integer& c, int r, long N) {
    if (r < 1) throw Error("DomainError", "pole order must be >= 1");
    return divide_by_j_power<Integer>(mf::eisenstein_z(k, N), c, r, N);
}

PSeries f_series_padic(int k, const Rational& c, int r, long N, long p, long e) {
    if (r < 1) throw Error("DomainError", "pole order must be >= 1");
    PadicCtx ctx{p, e};
    return divide_by_j_power<PadicApprox>(eisenstein_in<PadicApprox>(k, N, ctx),
                                          PadicApprox::from_rational(p, e, c), r, N);
}

MeromorphicForm f_series_general(const QSeries& g, int weight, const Rational& c, int r, long N) {
    MeromorphicForm m;
    m.weight = weight;
    m.c = c;
    m.r = r;
    m.numerator = "g";
    m.series = divide_by_j_power<Rational>(g, c, r, N);
    return m;
}

std::vector<std::vector<Integer>> p_poly_table(int k, long nmax) {
    std::vector<std::vector<Integer>> table(static_cast<size_t>(nmax));
    if (nmax <= 0) return table;
    ZSeries h0 = inverse_j_minus_c<Integer>(Integer(0), nmax);  // 1/j
    ZSeries t = (mf::eisenstein_z(k, nmax) * h0).truncate(nmax);
    for (long i = 0; i < nmax; ++i) {
        for (long n = i + 1; n <= nmax; ++n) {
            auto& row = table[n - 1];
            if (row.empty()) row.assign(static_cast<size_t>(n), Integer(0));
            row[i] = t.coeff(n);
        }
        if (i + 1 < nmax) t = (t * h0).truncate(nmax);
    }
    return table;
}

RatPoly p_poly(int k, long n) {
    auto table = p_poly_table(k, n);
    std::vector<Rational> c;
    for (const auto& x : table[n - 1]) c.emplace_back(x);
    return RatPoly(c);
}

RatPoly q_poly(long n) { return p_poly(4, n).reversed(n - 1); }

ZSeries dual_basis_form(int k, long n, long N) {
    ZSeries g = mf::g_k(2 - k, N * n);
    QSeries t = mf::hecke(to_rational(g), n, 2 - k);
    return to_integer(t.scale(Rational(ipow(Integer(n), static_cast<unsigned long>(k - 1))))).truncate(N);
}

PSeries poly_at_j(const std::vector<Integer>& poly, long N, long p, long e) {
    PadicCtx ctx{p, e};
    long d = static_cast<long>(poly.size()) - 1;
    while (d > 0 && poly[d] == 0) --d;
    long M = N + std::max(d, 0L) + 1;
    PSeries j = to_padic(mf::j_invariant(M), p, e);
    PSeries acc = PSeries::constant(PadicApprox(p, e, d >= 0 ? poly[d] : Integer(0)), M, ctx);
    for (long i = d - 1; i >= 0; --i) acc = acc * j + PSeries::constant(PadicApprox(p, e, poly[i]), M, ctx);
    return acc.truncate(N);
}

namespace {

std::vector<Integer> polymul_mod(const std::vector<Integer>& a, const std::vector<Integer>& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    return kernel::mul_mod(a, b, a.size() + b.size() - 1, m);
}

std::vector<Integer> reduce(std::vector<Integer> a, const Integer& m) {
    for (auto& x : a) x = mod(x, m);
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<Integer> polypow_mod(const std::vector<Integer>& a, unsigned long e, const Integer& m) {
    std::vector<Integer> r{Integer(1)}, b = reduce(a, m);
    while (e) {
        if (e & 1) r = reduce(polymul_mod(r, b, m), m);
        e >>= 1;
        if (e) b = reduce(polymul_mod(b, b, m), m);
    }
    return r;
}

PSeries padic_g(int k, long M, long p) { return to_padic(mf::g_k(2 - k, M), p, 1); }

}  // namespace

bool frobenius_poly_congruence_check(int k, long p, long n, long N) {
    auto table = p_poly_table(k, n * p);
    const Integer P = p;
    // polynomial form
    auto lhs_poly = reduce(table[n * p - 1], P);
    auto rhs_poly = reduce(polymul_mod(reduce(table[p - 1], P), polypow_mod(table[n - 1], p, P), P), P);
    if (lhs_poly != rhs_poly) return false;
    // series form: P_{k,np}(j) g_{2-k} == g_{2-k,n}^p
    long np = n * p;
    PSeries pj = poly_at_j(table[np - 1], N + 1, p, 1);
    PSeries lhs = (pj * padic_g(k, N + np + 1, p)).truncate(N);
    long Mn = N + (p - 1) * n + 1;
    PSeries gn = to_padic(dual_basis_form(k, n, Mn), p, 1);
    PSeries rhs = gn.pow(static_cast<unsigned long>(p)).truncate(N);
    return lhs.precision() == N && rhs.precision() == N && lhs == rhs;
}

bool power_congruence_check(int k, long p, int l, long N) {
    long q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    auto table = p_poly_table(k, q);
    PSeries lhs = poly_at_j(table[q - 1], N, p, 1);
    PSeries rhs = padic_g(k, N + q, p).pow(static_cast<unsigned long>(q - 1)).truncate(N);
    return lhs.precision() == N && rhs.precision() == N && lhs == rhs;
}

std::pair<int, int> weight_reduction_exponents(int k) {
    switch (k) {
        case 6: return {0, 1};
        case 8: return {1, 1};
        case 10: return {1, 2};
        case 14: return {2, 3};
        default: throw Error("DomainError", "weight reduction needs k in {6,8,10,14}");
    }
}

bool weight_reduction_check(int k, long p, int l) {
    auto [a, b] = weight_reduction_exponents(k);
    long q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    const Integer P = p;
    auto t4 = p_poly_table(4, q), tk = p_poly_table(k, q);
    auto lhs = polypow_mod(t4[q - 1], static_cast<unsigned long>((k - 2) / 2), P);
    std::vector<Integer> xa(static_cast<size_t>(a) + 1, Integer(0));
    xa[a] = 1;
    auto base = polymul_mod(xa, polypow_mod({Integer(-1728), Integer(1)}, static_cast<unsigned long>(b), P), P);
    auto rhs = reduce(polymul_mod(polypow_mod(base, static_cast<unsigned long>(q - 1), P), reduce(tk[q - 1], P), P), P);
    return reduce(lhs, P) == rhs;
}

namespace {

// f = g_k * P(j) with deg P <= l; returns P's coefficients.
std::vector<Rational> as_poly_in_j(const QSeries& f, int k) {
    auto [l, kp] = mf::g_k_split(k);
    if (l < 0) throw Error("DomainError", "weight must be nonnegative");
    long N = f.precision();
    if (N < l + 2) throw Error("InsufficientPrecision", "need precision beyond the j-degree");
    QSeries gk = to_rational(mf::g_k(k, N + l + 2));
    QSeries rem = (f * gk.invert()).truncate(N - l);
    std::vector<Rational> coeffs(static_cast<size_t>(l + 1), Rational(0));
    QSeries j = to_rational(mf::j_invariant(N + l + 2));
    for (int d = l; d >= 0; --d) {
        Rational cd = rem.coeff(-d);
        coeffs[d] = cd;
        if (cd != 0) rem = rem - j.pow(static_cast<unsigned long>(d)).scale(cd).truncate(rem.precision());
    }
    if (!rem.is_zero()) throw Error("NotModular", "quotient is not a polynomial in j of degree <= l");
    return coeffs;
}

}  // namespace

std::pair<Rational, Rational> ratio_at(const QSeries& f, const QSeries& g, int k, const Rational& c) {
    RatPoly pf(as_poly_in_j(f, k)), pg(as_poly_in_j(g, k));
    return {pf.eval(c), pg.eval(c)};
}

Decomposition decompose_at_pole(const QSeries& f, const QSeries& g, int k, const Rational& c, int r, long N) {
    if (r < 1) throw Error("DomainError", "pole order must be >= 1");
    Decomposition out;
    out.lambda.assign(static_cast<size_t>(r), Rational(0));
    QSeries inv = inverse_j_minus_c<Rational>(c, N);
    QSeries cur = f.truncate(N);
    for (int i = r; i >= 1; --i) {
        auto [fv, gv] = ratio_at(cur, g, k, c);
        if (gv == 0) throw Error("GVanishesAtPole", "g vanishes at the pole");
        Rational lam = fv / gv;
        lam.canonicalize();
        out.lambda[i - 1] = lam;
        cur = ((cur - g.scale(lam)) * inv).truncate(N);
        if (cur.valuation() < 1) throw Error("InternalError", "remainder is not a cusp form");
    }
    out.cusp = cur;
    return out;
}

QSeries recompose(const Decomposition& d, const QSeries& g, const Rational& c, long N) {
    QSeries inv = inverse_j_minus_c<Rational>(c, N);
    QSeries acc = d.cusp.truncate(N);
    QSeries gp = g.truncate(N);
    for (size_t i = 0; i < d.lambda.size(); ++i) {
        gp = (gp * inv).truncate(N);
        acc = acc + gp.scale(d.lambda[i]);
    }
    return acc;
}

}  // namespace asd::mero
