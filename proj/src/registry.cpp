#include "asd/registry.hpp"

#include "asd/cache.hpp"
#include "asd/cm.hpp"
#include "asd/elliptic.hpp"
#include "asd/hypergeom.hpp"
#include "asd/meromorphic.hpp"
#include "asd/shimura.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace asd::harness {

namespace {

using ec::EllipticCurve;
using Opt = std::optional<std::string>;

// ---- caching wrapper ---------------------------------------------------------------

QSeries cached_exact(const std::string& desc, long N, const std::function<QSeries(long)>& f) {
    auto c = cache::Cache::from_env();
    if (!c) return f(N);
    const std::string key = cache::descriptor(desc, {}, N);
    try {
        if (auto s = c->get<Rational>(key)) return *s;
    } catch (const Error& e) {
        if (e.code() != "CorruptEntry" && e.code() != "ParseError") throw;
    }
    QSeries s = f(N);
    c->put(key, s);
    return s;
}

std::string str(const Rational& x) { return to_string(x); }

// ---- series sources ----------------------------------------------------------------

PSeries combination_padic(int k, const Integer& jD, const std::vector<Integer>& A, long N, long p, long e) {
    PadicCtx ctx{p, e};
    PSeries h = mero::inverse_j_minus_c<PadicApprox>(PadicApprox(p, e, jD), N, ctx);
    PSeries acc = PSeries::zero(N, ctx);
    for (size_t i = A.size(); i-- > 0;) acc = ((acc + PSeries::constant(PadicApprox(p, e, A[i]), N, ctx)) * h).truncate(N);
    return (mero::eisenstein_in<PadicApprox>(k, N, ctx) * acc).truncate(N);
}

SeriesSource source_product(const SeriesSource& a, const SeriesSource& b) {
    SeriesSource s;
    s.descriptor = a.descriptor + " * " + b.descriptor + " (coefficientwise)";
    s.exact = [a, b](long N) {
        QSeries x = a.exact(N), y = b.exact(N);
        return QSeries::generate(1, N, [&](long n) { return Rational(x.coeff(n) * y.coeff(n)); });
    };
    if (a.modular && b.modular) {
        s.modular = [a, b](long N, long p, long e) {
            PSeries x = a.modular(N, p, e), y = b.modular(N, p, e);
            return PSeries::generate(1, N, [&](long n) { return x.coeff(n) * y.coeff(n); }, PadicCtx{p, e});
        };
    }
    return s;
}

SeriesSource source_ks() {
    SeriesSource s;
    s.descriptor = "E_4^6/Delta - 1464 E_4^3";
    s.exact = [d = s.descriptor](long N) {
        return cached_exact(d, N, [](long M) {
            ZSeries e4 = mf::eisenstein_z(4, M + 2);
            ZSeries f = (e4.pow(6) * mf::delta(M + 2).invert()).truncate(M) - e4.pow(3).scale(1464).truncate(M);
            return to_rational(f);
        });
    };
    s.modular = [ex = s.exact](long N, long p, long e) { return to_padic(ex(N), p, e); };
    return s;
}

// g/(j - c) with g = E_4^{k/4}, then the cusp-killing relation.
SeriesSource source_relation(int k, const Rational& c) {
    mf::Relation rel = mf::cusp_relation(k);
    const long M = rel.max_index();
    SeriesSource s;
    s.descriptor = "(E_4^" + std::to_string(k / 4) + "/(j - " + str(c) + "))|lambda_" + std::to_string(k);
    s.exact = [=, d = s.descriptor](long N) {
        return cached_exact(d, N, [=](long P) {
            QSeries g = to_rational(mf::eisenstein_z(4, P * M).pow(static_cast<unsigned long>(k / 4)));
            QSeries F = mero::divide_by_j_power<Rational>(g, c, 1, P * M);
            return mf::apply_relation(F, rel, k).truncate(P);
        });
    };
    s.modular = [=](long N, long p, long e) {
        PSeries g = to_padic(mf::eisenstein_z(4, N * M).pow(static_cast<unsigned long>(k / 4)), p, e);
        PSeries F = mero::divide_by_j_power<PadicApprox>(g, PadicApprox::from_rational(p, e, c), 1, N * M);
        return mf::apply_relation(F, rel, k).truncate(N);
    };
    return s;
}

// ---- filters and coefficients ------------------------------------------------------

PrimeFilter good(const EllipticCurve& C) {
    return custom_filter("good", [C](long p) -> Opt {
        if (!C.good_at(p)) return "bad reduction";
        return std::nullopt;
    });
}

PrimeFilter ordinary(const EllipticCurve& C) {
    return custom_filter("ordinary", [C](long p) -> Opt {
        if (ec::ap(C, p) % p == 0) return "supersingular";
        return std::nullopt;
    });
}

PrimeFilter supersingular(const EllipticCurve& C) {
    return custom_filter("supersingular", [C](long p) -> Opt {
        if (ec::ap(C, p) % p != 0) return "ordinary";
        return std::nullopt;
    });
}

PrimeFilter coprime(long D) { return coprime_to(D, "p∤" + std::to_string(std::labs(D))); }
PrimeFilter split(long D) { return kronecker_is(D, 1, "(" + std::to_string(D) + "/p)=1"); }
PrimeFilter inert(long D) { return kronecker_is(D, -1, "(" + std::to_string(D) + "/p)=-1"); }

CoeffProvider int_coeff(std::function<Integer(long)> f) {
    return [f](long p, long) { return Coeff(f(p)); };
}
CoeffProvider zero_coeff() { return int_coeff([](long) { return Integer(0); }); }

Integer P(long p, long e) { return ipow(Integer(p), static_cast<unsigned long>(e)); }

PadicApprox upow(const PadicApprox& u, long e) {
    return e >= 0 ? u.pow(static_cast<unsigned long>(e)) : u.inverse().pow(static_cast<unsigned long>(-e));
}

PadicApprox curve_unit(const EllipticCurve& C, long p, long E) { return unit_root(ec::ap(C, p), p, E); }

// The generator of the split prime that is a unit under the embedding sending pibar into pZ_p.
PadicApprox disc_unit(long D, long p, long E) {
    PadicApprox u = embed(cornacchia_split(p, D), p, IdealSide::PiBar, E);
    if (!u.is_unit()) throw Error("InternalError", "pi is not a unit on the pibar side");
    return u;
}

// -u^e p^f as a coefficient.
CoeffProvider minus_unit_curve(const EllipticCurve& C, long e, long f = 0) {
    return [C, e, f](long p, long E) {
        PadicApprox v = upow(curve_unit(C, p, E), e) * PadicApprox(p, E, P(p, f));
        return Coeff(-v);
    };
}
CoeffProvider minus_unit_disc(long D, long e, long f = 0) {
    return [D, e, f](long p, long E) {
        PadicApprox v = upow(disc_unit(D, p, E), e) * PadicApprox(p, E, P(p, f));
        return Coeff(-v);
    };
}

// ---- grids ---------------------------------------------------------------------------

long ipow_long(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

void apply_grid(CongruenceSpec& s, const Params& g) {
    if (g.p_lo) s.p_lo = *g.p_lo;
    if (g.p_hi) s.p_hi = *g.p_hi;
    if (g.nmax) s.nmax = *g.nmax;
    if (g.lmax) s.lmax = *g.lmax;
    s.lmin = std::min(s.lmin, s.lmax);
}

// Largest n p^{f l} needed by the admissible primes, bounded by cap.
long choose_N(const CongruenceSpec& s, const Params& g, long cap) {
    if (g.prec) return *g.prec;
    if (s.shape == Shape::Magnetic) return s.nmax;
    long best = 1;
    for (long p : primes_in(s.p_lo, s.p_hi)) {
        bool ok = true;
        for (const auto& f : s.filters) ok = ok && !f.reject(p);
        if (!ok) continue;
        long q = ipow_long(p, s.step ? s.step(p) : 1);
        double need = static_cast<double>(s.nmax) * std::pow(static_cast<double>(q), s.lmax);
        if (need >= static_cast<double>(cap)) return cap;
        best = std::max(best, static_cast<long>(need));
    }
    return std::min(best, cap);
}

struct Builder {
    const Params& params;
    std::vector<RegistryItem> items;

    void add(CongruenceSpec spec, SeriesSource source, long cap) {
        apply_grid(spec, params);
        long N = choose_N(spec, params, cap);
        items.push_back({std::move(spec), std::move(source), N});
    }
};

std::vector<int> ks(const Params& g, std::vector<int> dflt) { return g.k ? std::vector<int>{*g.k} : dflt; }
std::vector<std::string> curves(const Params& g, std::vector<std::string> dflt) {
    return g.curve ? std::vector<std::string>{*g.curve} : dflt;
}
std::vector<int> rs(const Params& g, std::vector<int> dflt) {
    if (!g.r) return dflt;
    if (std::find(dflt.begin(), dflt.end(), *g.r) == dflt.end())
        throw Error("DomainError", "pole order " + std::to_string(*g.r) + " is not available here");
    return {*g.r};
}

const std::vector<int> kAllK = {4, 6, 8, 10, 14};

const EllipticCurve& curve_of(const std::string& label) { return ec::preset(label).curve; }

void require_class_one_D(long D) {
    if (cm::reduced_forms(D).class_number() != 1)
        throw Error("DomainError", "D = " + std::to_string(D) + " does not have class number one");
}

Integer jD_of(long D) { return cm::cm_constants(D).j; }

// Valuation hypothesis; for j in {0, 1728} the replacement is p >= 5.
PrimeFilter j_filter(const Rational& j) {
    if (j == 0 || j == 1728) return min_prime(5);
    return j_valuation(j);
}

// ---- entries -----------------------------------------------------------------------

using BuildFn = std::function<void(Builder&)>;

struct Entry {
    std::string id;
    std::string summary;
    BuildFn build;
};

void t11(Builder& b) {
    std::vector<Rational> cs = b.params.c ? std::vector<Rational>{*b.params.c} : std::vector<Rational>{0, 1728};
    for (const Rational& c : cs) {
        if (c != 0 && c != 1728) throw Error("DomainError", "c must be 0 or 1728");
        CongruenceSpec s;
        s.id = "T1.1";
        s.variant = "E4/(j-" + str(c) + ")";
        s.tag = Tag::Theorem;
        s.shape = Shape::Magnetic;
        s.magnetic_r = 1;
        s.nmax = 500;
        s.law.text = "n | a_n";
        b.add(s, source_f(4, c, 1), 500);
    }
}

void t12(Builder& b) {
    std::vector<Rational> cs = b.params.c ? std::vector<Rational>{*b.params.c} : std::vector<Rational>{0, 1728};
    for (const Rational& c : cs) {
        if (c != 0 && c != 1728) throw Error("DomainError", "c must be 0 or 1728");
        long D = c == 0 ? -3 : -4;
        CongruenceSpec s;
        s.id = "T1.2";
        s.variant = "E4/(j-" + str(c) + ")";
        s.tag = Tag::Theorem;
        s.coeffs = {int_coeff([D](long p) { return Integer(-kronecker(D, p) * p); })};
        s.law = ExponentLaw::affine(3, 0, "3l");
        s.filters = {min_prime(5)};
        s.p_lo = 5;
        s.p_hi = 13;
        s.nmax = 3000;
        s.lmax = 2;
        b.add(s, source_f(4, c, 1), 3000);
    }
}

// a_{nq} = a_P^{k-2} a_n mod p, rational primes or primes of a quadratic field.
void good_prime(Builder& b, const std::string& id, Tag tag, std::vector<int> kdef, long nmax, long p_hi) {
    for (const auto& label : curves(b.params, {"49.a4", "32.a3", "27.a4", "37.a1"})) {
        const EllipticCurve C = curve_of(label);
        for (int k : ks(b.params, kdef)) {
            CongruenceSpec s;
            s.id = id;
            s.variant = label + "/k=" + std::to_string(k);
            s.tag = tag;
            s.coeffs = {int_coeff([C, k](long p) { return Integer(-ipow(ec::ap(C, p), k - 2)); })};
            s.law = ExponentLaw::affine(0, 1, "1");
            s.filters = {good(C), min_prime(5), j_valuation(C.j)};
            s.p_lo = 5;
            s.p_hi = p_hi;
            s.nmax = nmax;
            s.lmax = 1;
            b.add(s, source_f(k, C.j, 1), 4000);
        }
    }
}

void c14(Builder& b) {
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const EllipticCurve C = curve_of(label);
        CongruenceSpec s;
        s.id = "C1.4";
        s.variant = label;
        s.law = ExponentLaw::affine(0, 2, "2");
        s.filters = {good(C), j_valuation(C.j), supersingular(C)};
        s.p_lo = 5;
        s.p_hi = 97;
        s.nmax = 1;
        s.lmax = 1;
        b.add(s, source_f(4, C.j, 1), 4000);
    }
}

void sym_asd(Builder& b, const std::string& id, std::vector<int> kdef, bool with_r) {
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const EllipticCurve C = curve_of(label);
        for (int k : ks(b.params, kdef)) {
            std::vector<int> all;
            for (int r = 1; r <= k - 1; ++r) all.push_back(r);
            for (int r : with_r ? rs(b.params, all) : std::vector<int>{1}) {
                CongruenceSpec s;
                s.id = id;
                s.variant = label + "/k=" + std::to_string(k) + (with_r ? "/r=" + std::to_string(r) : "");
                for (int i = 0; i < k - 1; ++i)
                    s.coeffs.push_back(int_coeff([C, k, i](long p) { return ec::sym_charpoly(C, p, k)[i]; }));
                Rational off = with_r ? Rational(-(k - 3) * k, 2) - r : Rational(-3);
                s.law = ExponentLaw::affine(k - 1, off,
                                            with_r ? "(k-1)l - (k-3)k/2 - r" : "3l - 3");
                s.filters = {good(C), j_valuation(C.j)};
                s.p_lo = 5;
                s.p_hi = 13;
                s.nmax = 5;
                s.lmax = 3;
                b.add(s, source_f(k, C.j, r), 6000);
            }
        }
    }
}

void c22(Builder& b) {
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const EllipticCurve C = curve_of(label);
        for (int k : ks(b.params, kAllK)) {
            CongruenceSpec s;
            s.id = "C2.2";
            s.variant = label + "/k=" + std::to_string(k);
            s.coeffs = {zero_coeff(), int_coeff([k](long p) { return Integer(-P(p, k - 2)); })};
            s.law = ExponentLaw::affine(k - 1, -1, "(k-1)l - 1");
            s.filters = {good(C), j_valuation(C.j), supersingular(C)};
            s.p_lo = 5;
            s.p_hi = 31;
            s.lmax = 2;
            s.nmax = 10;
            b.add(s, source_f(k, C.j, 1), 6000);
        }
    }
}

void c23(Builder& b) {
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const auto& pre = ec::preset(label);
        const EllipticCurve C = pre.curve;
        for (int k : ks(b.params, kAllK)) {
            CongruenceSpec s;
            s.id = "C2.3";
            s.variant = label + "/k=" + std::to_string(k);
            s.coeffs = {minus_unit_curve(C, k - 2)};
            s.law = pre.cm_disc ? ExponentLaw::affine(k - 1, 0, "(k-1)l") : ExponentLaw::affine(1, 0, "l");
            s.filters = {good(C), j_valuation(C.j), ordinary(C)};
            s.p_lo = 5;
            s.p_hi = 31;
            s.lmax = 2;
            s.nmax = 10;
            b.add(s, source_f(k, C.j, 1), 6000);
        }
    }
}

void c24(Builder& b) {
    for (const auto& label : curves(b.params, {"49.a4"})) {
        const auto& pre = ec::preset(label);
        if (!pre.cm_disc) throw Error("DomainError", label + " has no CM");
        const EllipticCurve C = pre.curve;
        const long D = pre.cm_disc;
        for (int k : ks(b.params, kAllK)) {
            CongruenceSpec s;
            s.id = "C2.4";
            s.variant = label + "/k=" + std::to_string(k);
            s.coeffs = {int_coeff([C, D, k](long p) {
                            return kronecker(D, p) == 1 ? Integer(-ec::power_trace(ec::ap(C, p), p, k - 2)) : Integer(0);
                        }),
                        int_coeff([D, k](long p) { return Integer(kronecker(D, p) * P(p, k - 2)); })};
            s.law = ExponentLaw::affine(k - 1, -1, "(k-1)l - 1");
            s.filters = {good(C), j_valuation(C.j)};
            s.p_lo = 5;
            s.p_hi = 31;
            s.lmax = 2;
            s.nmax = 10;
            b.add(s, source_f(k, C.j, 1), 6000);
        }
    }
}

void c26(Builder& b) {
    const long D = b.params.D.value_or(-7);
    if (D >= -4) throw Error("DomainError", "needs D < -4");
    require_class_one_D(D);
    const Integer j = jD_of(D);
    for (int k : ks(b.params, kAllK)) {
        CongruenceSpec s;
        s.id = "C2.6";
        s.variant = "D=" + std::to_string(D) + "/k=" + std::to_string(k);
        s.coeffs = {int_coeff([D, k](long p) { return Integer(-ec::theta_coeff(D, k - 2, p)); }),
                    int_coeff([D, k](long p) { return Integer(kronecker(D, p) * P(p, k - 2)); })};
        s.law = ExponentLaw::affine(k - 1, -1, "(k-1)l - 1");
        s.filters = {coprime(D), j_valuation(j)};
        s.p_lo = 5;
        s.p_hi = 31;
        s.lmax = 2;
        s.nmax = 10;
        b.add(s, source_f(k, j, 1), 6000);
    }
}

void c28(Builder& b) {
    const long D = b.params.D.value_or(-7);
    require_class_one_D(D);
    const Integer j = jD_of(D);
    for (int k : ks(b.params, kAllK)) {
        for (IdealSide side : {IdealSide::PiBar, IdealSide::Pi}) {
            CongruenceSpec s;
            s.id = "C2.8";
            bool bar = side == IdealSide::PiBar;
            s.variant = "D=" + std::to_string(D) + "/k=" + std::to_string(k) + (bar ? "/mod pibar" : "/mod pi");
            // pi^{k-2} modulo pibar-powers, and the conjugate.
            s.coeffs = {[D, k, bar](long p, long) {
                QuadraticInteger pi = cornacchia_split(p, D);
                if (!bar) pi = pi.conj();
                return Coeff(-pi.pow(static_cast<unsigned long>(k - 2)));
            }};
            s.side = side;
            s.quad_disc = D;
            s.law = ExponentLaw::affine(k - 1, 0, "(k-1)l");
            s.filters = {split(D), j_valuation(j)};
            s.p_lo = 5;
            s.p_hi = 31;
            s.lmax = 2;
            s.nmax = 10;
            b.add(s, source_f(k, j, 1), 6000);
        }
    }
}

// ---- CM families G^{(r)}_{k,D} ---------------------------------------------------------

struct KD {
    int k;
    long D;
};

std::vector<KD> kds(const Params& g, std::vector<KD> dflt) {
    if (g.k || g.D) return {{g.k.value_or(dflt.front().k), g.D.value_or(dflt.front().D)}};
    return dflt;
}

std::string kd_name(int k, long D) { return "k=" + std::to_string(k) + "/D=" + std::to_string(D); }

std::vector<PrimeFilter> cm_filters(long D, const Integer& j) { return {coprime(D), j_filter(Rational(j))}; }

void c41(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {6, -4}})) {
        const Integer j = jD_of(D);
        for (int r : rs(b.params, valid_orders(k, D))) {
            CongruenceSpec s;
            s.id = "C4.1";
            s.variant = kd_name(k, D) + "/r=" + std::to_string(r);
            s.coeffs = {zero_coeff(), int_coeff([k](long p) { return Integer(-P(p, k - 2)); })};
            s.law = ExponentLaw::affine(k - 1, -r, "(k-1)l - r");
            s.filters = cm_filters(D, j);
            s.filters.push_back(inert(D));
            s.p_lo = 5;
            s.p_hi = 31;
            s.nmax = 10;
            b.add(s, source_g(k, D, r), 6000);
        }
    }
}

void c42(Builder& b, const std::string& id, std::vector<KD> dflt) {
    for (auto [k, D] : kds(b.params, dflt)) {
        const Integer j = jD_of(D);
        for (int r : rs(b.params, valid_orders(k, D))) {
            CongruenceSpec s;
            s.id = id;
            s.variant = kd_name(k, D) + "/r=" + std::to_string(r);
            s.coeffs = {minus_unit_disc(D, k - 2 * r, r - 1)};
            s.law = ExponentLaw::affine(k - 1, 0, "(k-1)l");
            s.filters = cm_filters(D, j);
            s.filters.push_back(split(D));
            s.p_lo = 5;
            s.p_hi = 31;
            s.nmax = 10;
            b.add(s, source_g(k, D, r), 6000);
        }
    }
}

void c44(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {6, -7}, {6, -4}})) {
        for (int r : rs(b.params, valid_orders(k, D))) {
            int rp = std::min(r, k - r);
            CongruenceSpec s;
            s.id = "C4.4";
            s.variant = kd_name(k, D) + "/r=" + std::to_string(r);
            s.shape = Shape::Magnetic;
            s.magnetic_r = rp - 1;
            s.nmax = 300;
            s.law.text = "n^(r'-1) | a_n";
            b.add(s, source_g(k, D, r), 300);
        }
    }
}

void t45(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {4, -8}, {6, -7}})) {
        CongruenceSpec s;
        s.id = "T4.5";
        s.variant = kd_name(k, D);
        s.tag = Tag::Theorem;
        s.coeffs = {int_coeff([k, D](long p) {
            return Integer(-ipow(Integer(kronecker(D, p) * p), static_cast<unsigned long>((k - 2) / 2)));
        })};
        s.law = ExponentLaw::affine(k - 1, 0, "(k-1)l");
        // At p | j(alpha_D)(j(alpha_D) - 1728) the unscaled form can lose digits (D = -7, p = 3).
        s.filters = {coprime(D), j_valuation(Rational(jD_of(D)))};
        s.p_lo = 2;
        s.p_hi = 31;
        s.nmax = 10;
        b.add(s, source_g(k, D, k / 2), 6000);

        CongruenceSpec t = s;
        t.variant = kd_name(k, D) + "/scaled";
        t.filters = {coprime(D)};
        b.add(t, source_tilde_g(k, D), 6000);
    }
}

void c46(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {6, -7}})) {
        const Integer j = jD_of(D);
        for (int r : rs(b.params, valid_orders(k, D))) {
            if (2 * r == k) continue;
            int rp = std::min(r, k - r);
            CongruenceSpec s;
            s.id = "C4.6";
            s.variant = kd_name(k, D) + "/r=" + std::to_string(r);
            s.coeffs = {int_coeff([D, k, rp](long p) { return Integer(-P(p, rp - 1) * ec::theta_coeff(D, k - 2 * rp, p)); }),
                        int_coeff([D, k](long p) { return Integer(kronecker(D, p) * P(p, k - 2)); })};
            s.law = ExponentLaw::affine(k - 1, -r, "(k-1)l - r");
            s.filters = cm_filters(D, j);
            s.p_lo = 5;
            s.p_hi = 31;
            s.nmax = 10;
            b.add(s, source_g(k, D, r), 6000);
        }
    }
}

void c47(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {6, -4}})) {
        const Integer j = jD_of(D);
        auto orders = valid_orders(k, D);
        for (int r : rs(b.params, orders)) {
            if (2 * r > k) continue;
            int rp = std::min(r, k - r);
            for (bool strong : {false, true}) {
                CongruenceSpec s;
                s.id = "C4.7";
                s.variant = kd_name(k, D) + "/r=" + std::to_string(r) + (strong ? "/inert l>=2" : "");
                s.coeffs = {int_coeff([k](long p) { return Integer(-P(p, k - 2)); })};
                s.law = strong ? ExponentLaw::affine(k + rp - 2, k - 2 * rp, "(k+r'-2)l + k - 2r'")
                               : ExponentLaw::affine(k + rp - 2, 0, "(k+r'-2)l");
                s.filters = cm_filters(D, j);
                if (strong) {
                    s.filters.push_back(inert(D));
                    s.lmin = 2;
                }
                s.p_lo = 5;
                s.p_hi = 31;
                s.nmax = 10;
                b.add(s, source_product(source_g(k, D, r), source_g(k, D, k - r)), 6000);
            }
        }
    }
}

void c48(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {6, -7}, {6, -4}})) {
        for (int r : rs(b.params, valid_orders(k, D))) {
            if (2 * r > k) continue;
            CongruenceSpec s;
            s.id = "C4.8";
            s.variant = kd_name(k, D) + "/r=" + std::to_string(r);
            s.shape = Shape::Magnetic;
            s.magnetic_r = k - 2;
            s.nmax = 200;
            s.law.text = "n^(k-2) | a_n(G^(r)) a_n(G^(k-r))";
            b.add(s, source_product(source_g(k, D, r), source_g(k, D, k - r)), 200);
        }
    }
}

void t51(Builder& b) {
    const long D = b.params.D.value_or(-4);
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const EllipticCurve C = curve_of(label);
        const auto QC = ec::QuadraticCurve::base_change(C, D);
        for (int k : ks(b.params, kAllK)) {
            CongruenceSpec s;
            s.id = "T5.1";
            s.variant = label + "/K=Q(sqrt" + std::to_string(D) + ")/k=" + std::to_string(k);
            s.tag = Tag::Theorem;
            s.step = [D](long p) { return kronecker(D, p) == -1 ? 2 : 1; };
            s.coeffs = {int_coeff([QC, k](long p) {
                return Integer(-ipow(ec::reduce_at_quadratic_prime(QC, p), static_cast<unsigned long>(k - 2)));
            })};
            s.law = ExponentLaw::affine(0, 1, "1");
            s.filters = {good(C), min_prime(5), coprime(D), j_valuation(C.j)};
            s.p_lo = 5;
            s.p_hi = 23;
            s.nmax = 5;
            s.lmax = 1;
            b.add(s, source_f(k, C.j, 1), 4000);
        }
    }
}

void t52(Builder& b, const std::string& id) {
    std::vector<Rational> cs = b.params.c ? std::vector<Rational>{*b.params.c}
                                          : std::vector<Rational>{-3375, 8000, 54000, 287496, 1, 2};
    for (const Rational& c : cs) {
        CongruenceSpec s;
        s.id = id;
        s.variant = "c=" + str(c);
        s.tag = Tag::Theorem;
        s.shape = Shape::Custom;
        int lmax = b.params.lmax.value_or(2);
        s.custom = [c, lmax](long p, long) {
            std::vector<Cell> out;
            for (int l = 1; l <= lmax; ++l) out.push_back(hyp::hypergeom_congruence_check(c, p, l, ipow_long(p, l)));
            return out;
        };
        s.law = ExponentLaw::affine(0, 1, "1");
        s.filters = {min_prime(5), custom_filter("v_p(c)=0", [c](long p) -> Opt {
                         if (c == 0 || valuation(c, p) != 0) return "v_p(c) != 0";
                         return std::nullopt;
                     })};
        s.p_lo = 5;
        s.p_hi = 31;
        s.lmax = lmax;
        SeriesSource src;
        src.descriptor = "E4/(j-" + str(c) + ") at q^(p^l), truncated 3F2";
        b.add(s, src, 1);
    }
}

void t61(Builder& b) {
    for (auto [k, D] : kds(b.params, {{4, -7}, {4, -8}, {6, -3}, {6, -4}, {4, -4}, {4, -3}})) {
        SeriesSource src = source_tilde_g(k, D);
        CongruenceSpec m;
        m.id = "T6.1";
        m.variant = kd_name(k, D) + "/magnetic";
        m.tag = Tag::Theorem;
        m.shape = Shape::Magnetic;
        m.magnetic_r = (k - 2) / 2;
        m.nmax = 500;
        m.law.text = "n^((k-2)/2) | a_n";
        b.add(m, src, 500);

        CongruenceSpec s;
        s.id = "T6.1";
        s.variant = kd_name(k, D) + "/hecke";
        s.tag = Tag::Theorem;
        s.coeffs = {int_coeff([k, D](long p) {
            return Integer(-ipow(Integer(kronecker(D, p) * p), static_cast<unsigned long>((k - 2) / 2)));
        })};
        s.law = ExponentLaw::affine(k - 1, 0, "(k-1)l");
        // p ∤ D rather than p ∤ A: for (6, -3) the congruence fails at p = 3.
        s.filters = {coprime(D)};
        s.p_lo = 2;
        s.p_hi = 31;
        s.nmax = 10;
        b.add(s, src, 10000);
    }
}

void s71(Builder& b) {
    // E_14/j against 27.a4 (j = 0).
    {
        CongruenceSpec s;
        s.id = "§7.1";
        s.variant = "E14/j/ordinary";
        s.coeffs = {minus_unit_disc(-3, 12)};
        s.law = ExponentLaw::affine(13, 0, "13l");
        s.filters = {min_prime(5), split(-3)};
        s.p_lo = 5;
        s.p_hi = 13;
        s.nmax = 10;
        b.add(s, source_f(14, 0, 1), 6000);

        CongruenceSpec t = s;
        t.variant = "E14/j/inert";
        t.coeffs = {zero_coeff(), int_coeff([](long p) { return Integer(-P(p, 12)); })};
        t.law = ExponentLaw::affine(13, -1, "13l - 1");
        t.filters = {min_prime(13), inert(-3)};
        b.add(t, source_f(14, 0, 1), 6000);
    }
    // Double and triple poles at the elliptic points.
    struct Mag {
        int k;
        Rational c;
        int r;
    };
    for (const Mag& mg : std::vector<Mag>{{6, 0, 2}, {8, 1728, 1}, {10, 0, 1}}) {
        CongruenceSpec s;
        s.id = "§7.1";
        s.variant = "E" + std::to_string(mg.k) + "/(j-" + str(mg.c) + ")/magnetic";
        s.shape = Shape::Magnetic;
        s.magnetic_r = mg.r;
        s.nmax = 300;
        s.law.text = "n^" + std::to_string(mg.r) + " | a_n";
        b.add(s, source_f(mg.k, mg.c, 1), 300);
    }
    {
        CongruenceSpec s;
        s.id = "§7.1";
        s.variant = "E6/j/hecke";
        s.coeffs = {int_coeff([](long p) { return Integer(-P(p, 2)); })};
        s.law = ExponentLaw::affine(5, 0, "5l");
        s.filters = {min_prime(5)};
        s.p_lo = 5;
        s.p_hi = 13;
        s.nmax = 10;
        b.add(s, source_f(6, 0, 1), 6000);
    }
    // The family G^{(r)}_{6,-4}, r = 1, 3, 5.
    for (int r : {1, 3, 5}) {
        CongruenceSpec s;
        s.id = "§7.1";
        s.variant = "G6,-4/r=" + std::to_string(r) + "/ordinary";
        s.coeffs = {minus_unit_disc(-4, 6 - 2 * r, r - 1)};
        s.law = ExponentLaw::affine(5, 0, "5l");
        s.filters = {min_prime(5), split(-4)};
        s.p_lo = 5;
        s.p_hi = 13;
        s.nmax = 10;
        b.add(s, source_g(6, -4, r), 6000);

        CongruenceSpec t = s;
        t.variant = "G6,-4/r=" + std::to_string(r) + "/inert";
        t.coeffs = {zero_coeff(), int_coeff([](long p) { return Integer(-P(p, 4)); })};
        t.law = ExponentLaw::affine(5, -r, "5l - r");
        t.filters = {min_prime(5), inert(-4)};
        b.add(t, source_g(6, -4, r), 6000);
    }
    {
        CongruenceSpec s;
        s.id = "§7.1";
        s.variant = "G6,-4/r=3/magnetic";
        s.shape = Shape::Magnetic;
        s.magnetic_r = 2;
        s.nmax = 300;
        s.law.text = "n^2 | a_n";
        b.add(s, source_g(6, -4, 3), 300);

        CongruenceSpec t;
        t.id = "§7.1";
        t.variant = "G6,-4/r=3/hecke";
        t.coeffs = {int_coeff([](long p) { return Integer(-P(p, 2)); })};
        t.law = ExponentLaw::affine(5, 0, "5l");
        t.filters = {min_prime(5)};
        t.p_lo = 5;
        t.p_hi = 13;
        t.nmax = 10;
        b.add(t, source_g(6, -4, 3), 6000);

        CongruenceSpec u = t;
        u.variant = "G6,-4/r=1*r=5/product";
        u.coeffs = {int_coeff([](long p) { return Integer(-P(p, 4)); })};
        b.add(u, source_product(source_g(6, -4, 1), source_g(6, -4, 5)), 6000);
    }
}

void s72(Builder& b) {
    const int k = b.params.k.value_or(12);
    if (k % 4 || k < 12) throw Error("DomainError", "numerator E_4^(k/4) needs k = 0 mod 4, k >= 12");
    for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
        const auto& pre = ec::preset(label);
        const EllipticCurve C = pre.curve;
        SeriesSource src = source_relation(k, C.j);
        const std::string base = label + "/k=" + std::to_string(k);

        CongruenceSpec g;
        g.id = "§7.2";
        g.variant = base + "/good";
        g.coeffs = {int_coeff([C, k](long p) { return Integer(-ipow(ec::ap(C, p), k - 2)); })};
        g.law = ExponentLaw::affine(0, 1, "1");
        g.filters = {good(C), j_valuation(C.j)};
        g.p_lo = 5;
        g.p_hi = 13;
        g.nmax = 10;
        g.lmax = 1;
        b.add(g, src, 3000);

        CongruenceSpec s;
        s.id = "§7.2";
        s.variant = base + "/supersingular";
        s.coeffs = {zero_coeff(), int_coeff([k](long p) { return Integer(-P(p, k - 2)); })};
        s.law = ExponentLaw::affine(k - 1, -1, "(k-1)l - 1");
        s.filters = {good(C), j_valuation(C.j), supersingular(C)};
        s.p_lo = 5;
        s.p_hi = 13;
        s.nmax = 10;
        b.add(s, src, 3000);

        CongruenceSpec o;
        o.id = "§7.2";
        o.variant = base + "/ordinary";
        o.coeffs = {minus_unit_curve(C, k - 2)};
        o.law = pre.cm_disc ? ExponentLaw::affine(k - 1, 0, "(k-1)l") : ExponentLaw::affine(1, 0, "l");
        o.filters = {good(C), j_valuation(C.j), ordinary(C)};
        o.p_lo = 5;
        o.p_hi = 13;
        o.nmax = 10;
        b.add(o, src, 3000);
    }
}

void ks_entry(Builder& b) {
    CongruenceSpec s;
    s.id = "KS";
    s.variant = "E4^6/Delta-1464E4^3";
    s.tag = Tag::Theorem;
    s.coeffs = {int_coeff([](long p) { return Integer(-mf::delta(p).coeff(p)); }),
                int_coeff([](long p) { return P(p, 11); })};
    s.law = ExponentLaw{0, 0, 11, "11 v_p(n)"};
    s.p_lo = 2;
    s.p_hi = 5;
    s.nmax = 30;
    s.lmax = 1;
    b.add(s, source_ks(), 150);
}

// ---- half-integral weight checks ---------------------------------------------------------

struct SMP {
    int s;
    long m, p, d0;
};

std::vector<SMP> smps(const Params&) { return {{2, 7, 3, 1}, {2, 8, 5, 1}, {3, 4, 3, -3}}; }

Cell identity_cell(long p, long n, bool holds, const std::string& note) {
    Cell c;
    c.p = p;
    c.n = n;
    c.required = 1;
    c.observed_infinite = holds;
    c.observed_exact = !holds;
    c.observed = 0;
    c.note = note;
    c.settle();
    return c;
}

CongruenceSpec once(const std::string& id, const std::string& variant, Tag tag,
                    std::function<std::vector<Cell>(long, long)> f) {
    CongruenceSpec s;
    s.id = id;
    s.variant = variant;
    s.tag = tag;
    s.shape = Shape::Custom;
    s.custom = std::move(f);
    s.p_lo = s.p_hi = 2;  // a single evaluation; the prime is a placeholder
    s.lmin = s.lmax = 1;
    s.law = ExponentLaw::affine(0, 1, "identity");
    return s;
}

SeriesSource no_series(const std::string& d) {
    SeriesSource s;
    s.descriptor = d;
    return s;
}

void p62(Builder& b) {
    struct T {
        int s;
        long d, d0;
    };
    long N = b.params.prec.value_or(60);
    for (T t : std::vector<T>{{2, -7, 1}, {2, -8, 1}, {3, 4, -3}}) {
        std::string v = "s=" + std::to_string(t.s) + "/d=" + std::to_string(t.d) + "/d0=" + std::to_string(t.d0);
        b.items.push_back({once("P6.2", v, Tag::Theorem,
                                [t, N](long, long) {
                                    return std::vector<Cell>{
                                        identity_cell(0, N, shim::lift_trace_check(t.s, t.d, t.d0, N), "series identity")};
                                }),
                           no_series("Shimura lift against CM trace"), N});
    }
}

void b63(Builder& b) {
    long N = b.params.prec.value_or(60);
    struct T {
        int s;
        long D;
    };
    for (T t : std::vector<T>{{2, -7}, {2, -12}, {3, -3}, {3, -12}, {4, -7}}) {
        std::string v = "s=" + std::to_string(t.s) + "/D=" + std::to_string(t.D);
        b.items.push_back({once("B6.3", v, Tag::Theorem,
                                [t, N](long, long) {
                                    return std::vector<Cell>{
                                        identity_cell(0, N, shim::mobius_bridge_check(t.s, t.D, N), "series identity")};
                                }),
                           no_series("class sums from lifts"), N});
    }
}

void l64(Builder& b) {
    for (SMP t : smps(b.params)) {
        std::string v = "s=" + std::to_string(t.s) + "/m=" + std::to_string(t.m) + "/p=" + std::to_string(t.p);
        b.items.push_back({once("L6.4", v, Tag::Theorem,
                                [t](long, long) {
                                    const long N = 30;
                                    bool holds = false;
                                    std::string note = "g_2 = f_{m p^2}";
                                    try {
                                        auto g = shim::g_sequence(t.s, t.m, t.p, 2, N);
                                        auto f = shim::plus_basis(t.s, t.m * t.p * t.p, N);
                                        holds = g[2].series == f.series && g[2].mask_ok();
                                    } catch (const Error& e) {
                                        if (e.code() != "NonIntegralStep") throw;
                                        note = "NonIntegralStep";
                                    }
                                    return std::vector<Cell>{identity_cell(t.p, N, holds, note)};
                                }),
                           no_series("U_p recursion on plus-space basis"), 30});
    }
}

void p66(Builder& b, bool eigen) {
    const std::string id = eigen ? "P6.6" : "P6.7";
    for (SMP t : smps(b.params)) {
        CongruenceSpec s;
        s.id = id;
        s.variant = "s=" + std::to_string(t.s) + "/m=" + std::to_string(t.m) + "/d0=" + std::to_string(t.d0);
        s.tag = Tag::Theorem;
        s.shape = Shape::Custom;
        int lmax = b.params.lmax.value_or(2);
        long nmax = b.params.nmax.value_or(10);
        s.custom = [t, lmax, nmax, eigen](long p, long) {
            return eigen ? shim::lift_eigen_cells(t.s, t.m, p, t.d0, lmax, nmax)
                         : shim::lift_divisibility_cells(t.s, t.m, p, t.d0, lmax, nmax);
        };
        s.law = eigen ? ExponentLaw::affine(2 * t.s - 1, 0, "(2s-1)l") : ExponentLaw::affine(t.s - 1, 0, "(s-1)l");
        s.p_lo = b.params.p_lo.value_or(t.p);
        s.p_hi = b.params.p_hi.value_or(t.p);
        s.lmax = lmax;
        s.nmax = nmax;
        b.items.push_back({s, no_series("Shimura lift of f_{s+1/2,m}"), nmax});
    }
}

void p68(Builder& b) {
    long nmax = b.params.nmax.value_or(300);
    for (SMP t : smps(b.params)) {
        std::string v = "s=" + std::to_string(t.s) + "/m=" + std::to_string(t.m) + "/d0=" + std::to_string(t.d0);
        b.items.push_back({once("P6.8", v, Tag::Theorem,
                                [t, nmax](long, long) {
                                    auto r = shim::lift_magnetic_check(t.s, t.m, t.d0, nmax);
                                    Cell c;
                                    c.n = r.pass ? nmax : r.witness;
                                    c.required = t.s - 1;
                                    c.observed = r.max_uniform;
                                    c.observed_exact = !r.pass;
                                    c.note = r.pass ? "all n <= " + std::to_string(nmax) : "witness";
                                    c.settle();
                                    return std::vector<Cell>{c};
                                }),
                           no_series("A^{s-1} times the Shimura lift"), nmax});
    }
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {"T1.1", "E4/j and E4/(j-1728) are 1-magnetic", t11},
        {"T1.2", "a_{np^l} = (chi(p) p) a_{np^{l-1}} mod p^{3l} for E4/j, E4/(j-1728)", t12},
        {"T1.3", "a_p(E4/(j-j(C))) = a_p(C)^2 mod p",
         [](Builder& b) { good_prime(b, "T1.3", Tag::Theorem, {4}, 1, 97); }},
        {"C1.4", "a_p(E4/(j-j(C))) = 0 mod p^2 at supersingular p", c14},
        {"C1.5", "three-term Sym^2 recurrence mod p^{3l-3}", [](Builder& b) { sym_asd(b, "C1.5", {4}, false); }},
        {"T1.6", "a_p(E4/(j-c)) against the truncated 3F2 sum mod p", [](Builder& b) { t52(b, "T1.6"); }},
        {"C2.1", "a_{np}(F_{k,C}) = a_p(C)^{k-2} a_n mod p",
         [](Builder& b) { good_prime(b, "C2.1", Tag::Conjecture, kAllK, 20, 97); }},
        {"C2.2", "supersingular: a_{np^l} = p^{k-2} a_{np^{l-2}} mod p^{(k-1)l-1}", c22},
        {"C2.3", "ordinary: a_{np^l} = u_p^{k-2} a_{np^{l-1}} mod p^l, or p^{(k-1)l} with CM", c23},
        {"C2.4", "three-term CM recurrence with a_p(Theta) mod p^{(k-1)l-1}", c24},
        {"C2.6", "three-term recurrence for F_{k,D} mod p^{(k-1)l-1}", c26},
        {"C2.8", "a_{np^l} = pi^{k-2} a_{np^{l-1}} mod pibar^{(k-1)l} and conjugate", c28},
        {"C3.2", "Sym^{k-2} recurrence for F^{(r)} mod p^{(k-1)l-(k-3)k/2-r}",
         [](Builder& b) { sym_asd(b, "C3.2", {4, 6}, true); }},
        {"C3.3", "supersingular F^{(r)}: p^{k-2} a_{np^{l-2}} mod p^{(k-1)l-r}",
         [](Builder& b) {
             for (const auto& label : curves(b.params, {"49.a4", "37.a1"})) {
                 const EllipticCurve C = curve_of(label);
                 for (int k : ks(b.params, {4, 6})) {
                     std::vector<int> all;
                     for (int r = 1; r <= k - 1; ++r) all.push_back(r);
                     for (int r : rs(b.params, all)) {
                         CongruenceSpec s;
                         s.id = "C3.3";
                         s.variant = label + "/k=" + std::to_string(k) + "/r=" + std::to_string(r);
                         s.coeffs = {zero_coeff(), int_coeff([k](long p) { return Integer(-P(p, k - 2)); })};
                         s.law = ExponentLaw::affine(k - 1, -r, "(k-1)l - r");
                         s.filters = {good(C), j_valuation(C.j), supersingular(C)};
                         s.p_lo = 5;
                         s.p_hi = 31;
                         s.nmax = 10;
                         b.add(s, source_f(k, C.j, r), 6000);
                     }
                 }
             }
         }},
        {"C4.1", "supersingular G^{(r)}: p^{k-2} a_{np^{l-2}} mod p^{(k-1)l-r}", c41},
        {"C4.2", "ordinary G^{(r)}: u_p^{k-2r} p^{r-1} a_{np^{l-1}} mod p^{(k-1)l}",
         [](Builder& b) { c42(b, "C4.2", {{4, -7}, {6, -7}, {6, -4}}); }},
        {"C4.3", "worked family G^{(r)}_{4,-7}, r = 1, 2, 3, mod p^{3l}", [](Builder& b) { c42(b, "C4.3", {{4, -7}}); }},
        {"C4.4", "G^{(r)} is (r'-1)-magnetic", c44},
        {"T4.5", "G^{(k/2)}: ((D/p) p)^{(k-2)/2} a_{np^{l-1}} mod p^{(k-1)l}", t45},
        {"C4.6", "three-term recurrence with p^{r'-1} a_p(Theta_{r'}) mod p^{(k-1)l-r}", c46},
        {"C4.7", "a(G^{(r)}) a(G^{(k-r)}) product recurrence mod p^{(k+r'-2)l}", c47},
        {"C4.8", "n^{k-2} | a_n(G^{(r)}) a_n(G^{(k-r)})", c48},
        {"T5.1", "a_{n N(P)}(F_{k,C}) = a_P(C)^{k-2} a_n mod P over a quadratic field", t51},
        {"T5.2", "a_{p^l}(E4/(j-c)) against the truncated 3F2 sum mod p", [](Builder& b) { t52(b, "T5.2"); }},
        {"P6.2", "Shimura lift of f_{s+1/2,|d|} equals the scaled CM trace", p62},
        {"B6.3", "class sums recovered from lifts of plus-space forms", b63},
        {"L6.4", "U_p recursion on f_{s+1/2,m} is integral and ends at f_{mp^2}", l64},
        {"P6.6", "lift: a_{np^l} = p^{s-1}((-1)^{s-1}m/p) a_{np^{l-1}} mod p^{(2s-1)l}",
         [](Builder& b) { p66(b, true); }},
        {"P6.7", "lift: p^{(s-1)t} a_{np^l} = 0 mod p^{(s-1)l}", [](Builder& b) { p66(b, false); }},
        {"P6.8", "A^{s-1} times the lift is (s-1)-magnetic", p68},
        {"T6.1", "scaled CM class sum: integral, (k-2)/2-magnetic, Hecke recurrence mod p^{(k-1)l}", t61},
        {"§7.1", "poles at j = 0 and j = 1728", s71},
        {"§7.2", "other weights: F_{g,C}|lambda", s72},
        {"KS", "E4^6/Delta - 1464 E4^3: a_{np} - tau(p) a_n + p^11 a_{n/p} mod p^{11 v_p(n)}", ks_entry},
    };
    return list;
}

std::string canonical(const std::string& id) {
    if (id == "S7.1") return "§7.1";
    if (id == "S7.2") return "§7.2";
    return id;
}

const Entry& entry(const std::string& id) {
    const std::string c = canonical(id);
    for (const auto& e : entries())
        if (e.id == c) return e;
    throw Error("UnknownId", "no registry entry " + id);
}

}  // namespace

// ---- public sources ------------------------------------------------------------------

SeriesSource source_f(int k, const Rational& c, int r) {
    SeriesSource s;
    s.descriptor = "E_" + std::to_string(k) + "/(j - " + str(c) + ")^" + std::to_string(r);
    s.exact = [=, d = s.descriptor](long N) {
        return cached_exact(d, N, [=](long M) { return mero::f_series(k, c, r, M).series; });
    };
    s.modular = [=](long N, long p, long e) { return mero::f_series_padic(k, c, r, N, p, e); };
    return s;
}

SeriesSource source_combination(int k, const Integer& jD, const std::vector<Integer>& A, const std::string& name) {
    SeriesSource s;
    s.descriptor = name;
    s.exact = [=](long N) { return cached_exact(name, N, [=](long M) { return to_rational(cm::g_series(k, jD, A, M)); }); };
    s.modular = [=](long N, long p, long e) { return combination_padic(k, jD, A, N, p, e); };
    return s;
}

SeriesSource source_g(int k, long D, int r) {
    cm::GConstruction g = cm::construct_g(k, D, r, 4);
    return source_combination(k, g.jD, g.A, "G^(" + std::to_string(r) + ")_{" + std::to_string(k) + "," +
                                                 std::to_string(D) + "}");
}

SeriesSource source_tilde_g(int k, long D) {
    const std::string name = "tilde G_{" + std::to_string(k) + "," + std::to_string(D) + "}";
    // Weight 13k-12 Sturm bound for (j - jD)^{k-1} times the difference, with room to spare.
    const long N0 = std::max(60L, 2 * (13L * k - 12) / 12 + 2);
    QSeries t = to_rational(cm::tilde_scale(k, D, cm::script_g(k, D, N0)));
    cm::GConstruction g = cm::construct_g(k, D, k / 2, N0);
    QSeries gs = to_rational(g.series);
    long v = gs.valuation();
    if (v <= N0 && gs.coeff(v) != 0) {
        Rational lambda = t.coeff(v) / gs.coeff(v);
        lambda.canonicalize();
        if (gs.scale(lambda) == t.truncate(gs.precision())) {
            SeriesSource base = source_combination(k, g.jD, g.A, name + " via G^(k/2)");
            SeriesSource s;
            s.descriptor = name + " = " + str(lambda) + " G^(" + std::to_string(k / 2) + ")";
            s.exact = [base, lambda](long N) { return base.exact(N).scale(lambda); };
            s.modular = [base, lambda](long N, long p, long e) {
                if (lambda.get_den() % p == 0) return to_padic(base.exact(N).scale(lambda), p, e);
                return base.modular(N, p, e).scale(PadicApprox::from_rational(p, e, lambda));
            };
            return s;
        }
    }
    SeriesSource s;
    s.descriptor = name;
    s.exact = [=](long N) {
        return cached_exact(name, N, [=](long M) { return to_rational(cm::tilde_scale(k, D, cm::script_g(k, D, M))); });
    };
    return s;
}

std::vector<int> valid_orders(int k, long D) {
    std::vector<int> out;
    if (D == -3 || D == -4) return cm::pole_profile(k, D == -3 ? 0 : 1728).orders;
    for (int r = 1; r <= k - 1; ++r) out.push_back(r);
    return out;
}

// ---- registry ------------------------------------------------------------------------

const std::vector<std::string>& registry_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& e : entries()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

bool registry_has(const std::string& id) {
    const std::string c = canonical(id);
    for (const auto& e : entries())
        if (e.id == c) return true;
    return false;
}

std::string registry_summary(const std::string& id) { return entry(id).summary; }

std::vector<RegistryItem> registry_build(const std::string& id, const Params& params) {
    const Entry& e = entry(id);
    Builder b{params, {}};
    e.build(b);
    return std::move(b.items);
}

VerificationReport run(const std::string& id, const Params& params, int parallelism) {
    std::vector<VerificationReport> parts;
    for (const auto& item : registry_build(id, params)) {
        VerificationReport r = check(item.source, item.spec, item.N, parallelism);
        summarize(r, item.spec.tag);
        parts.push_back(std::move(r));
    }
    return merge(canonical(id), std::move(parts));
}

VerificationReport sweep(const std::vector<std::string>& ids, const Params& params, int parallelism) {
    std::set<std::string> unique;
    for (const auto& id : ids) {
        if (!registry_has(id)) throw Error("UnknownId", "no registry entry " + id);
        unique.insert(canonical(id));
    }
    std::vector<VerificationReport> parts;
    std::string name;
    for (const auto& id : unique) {
        parts.push_back(run(id, params, parallelism));
        name += (name.empty() ? "" : ",") + id;
    }
    return merge(name, std::move(parts));
}

}  // namespace asd::harness
