#include "asd/cm.hpp"

#include "asd/linalg.hpp"
#include "asd/meromorphic.hpp"
#include "asd/modforms.hpp"
#include "cm_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asd::cm {

long QuadForm::content() const { return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)); }

bool QuadForm::reduced() const {
    if (!(std::labs(b) <= a && a <= c)) return false;
    if ((std::labs(b) == a || a == c) && b < 0) return false;
    return true;
}

std::vector<QuadForm> ClassList::primitive() const {
    std::vector<QuadForm> out;
    for (const auto& q : forms)
        if (q.primitive()) out.push_back(q);
    return out;
}

ClassList reduced_forms(long D) {
    if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw Error("NotADiscriminant", std::to_string(D) + " is not a negative discriminant");
    ClassList out;
    out.D = D;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2) continue;
            long num = b * b - D;
            if (num % (4 * a)) continue;
            QuadForm q{a, b, num / (4 * a)};
            if (q.reduced()) out.forms.push_back(q);
        }
    }
    std::sort(out.forms.begin(), out.forms.end());
    for (const auto& q : out.forms) out.wq.push_back(q.b == 0 && q.a == q.c ? 2 : (q.a == q.b && q.b == q.c ? 3 : 1));
    return out;
}

QuadForm reduce_form(QuadForm q) {
    if (q.a <= 0 || q.disc() >= 0) throw Error("DomainError", "form must be positive definite");
    for (;;) {
        // translate b into (-a, a] via (x, y) -> (x + ty, y)
        while (q.b > q.a) {
            q.c += q.a - q.b;
            q.b -= 2 * q.a;
        }
        while (q.b <= -q.a) {
            q.c += q.a + q.b;
            q.b += 2 * q.a;
        }
        if (q.a > q.c) {
            std::swap(q.a, q.c);
            q.b = -q.b;
            continue;
        }
        if (q.a == q.c && q.b < 0) q.b = -q.b;
        return q;
    }
}

long w_D(long D) { return D == -4 ? 4 : D == -3 ? 6 : 2; }

namespace {
Rational two_over_w(long D) {
    Rational r(2, w_D(D));
    r.canonicalize();
    return r;
}
}  // namespace

std::pair<long, long> conductor_split(long D) {
    for (long A = static_cast<long>(std::sqrt(static_cast<double>(-D))) + 1; A >= 1; --A) {
        if (D % (A * A)) continue;
        long D0 = D / (A * A);
        if (is_fundamental_discriminant(D0)) return {A, D0};
    }
    throw Error("NotADiscriminant", "no fundamental part for " + std::to_string(D));
}

int genus_character(const QuadForm& q, long d, long d0, long bound) {
    if (q.disc() != d * d0) throw Error("DomainError", "disc(Q) must equal d d0");
    if (d0 == 1) return 1;
    if (std::gcd(q.content(), std::labs(d0)) > 1) return 0;
    for (long s = 1; s <= bound; ++s)
        for (long x = -s; x <= s; ++x)
            for (long y : {s - std::labs(x), -(s - std::labs(x))}) {
                long r = q.a * x * x + q.b * x * y + q.c * y * y;
                if (r > 0 && std::gcd(r, std::labs(d0)) == 1) return kronecker(d0, r);
            }
    throw Error("NoCoprimeRepresentative", "search bound exhausted");
}

namespace {

const std::vector<unsigned> kLadder = {128, 256, 512, 1024, 2048, 4096};

}  // namespace

CMConstants cm_constants(long D) {
    ClassList cl = reduced_forms(D);
    if (cl.class_number() != 1) throw Error("NotClassNumberOne", "D = " + std::to_string(D));
    const QuadForm q = cl.primitive().front();
    CMConstants out;
    out.D = D;
    Rational prev_rho;
    bool have_prev = false;
    for (unsigned bits : kLadder) {
        num::PrecisionScope scope(bits);
        num::PointValues v = num::eval_at(q.a, q.b, D, bits);
        num::Complex jv = v.j();
        num::Real jr = round(jv.re);
        if (abs(jv.re - jr) > num::Real("1e-20") || abs(jv.im) > num::Real("1e-20")) continue;
        out.j = num::to_rational(jr).get_num();
        if (out.j == 0) {
            out.norm.e4_zero = true;
            return out;
        }
        out.norm.sigma2 = 1 - Rational(1728) / Rational(out.j);
        out.norm.sigma2.canonicalize();
        if (out.j == 1728) return out;
        Rational rho;
        try {
            rho = num::reconstruct(((v.e2s * v.e4) / v.e6).re, bits, 24);
        } catch (const Error&) {
            continue;
        }
        if (have_prev && rho == prev_rho) {
            out.norm.rho = rho;
            return out;
        }
        prev_rho = rho;
        have_prev = true;
    }
    throw Error("ReconstructionFailure", "CM constants for D = " + std::to_string(D) + " did not stabilize");
}

ZSeries g_series(int k, const Integer& jD, const std::vector<Integer>& A, long N) {
    ZSeries h = mero::inverse_j_minus_c<Integer>(jD, N);
    ZSeries acc = ZSeries::zero(N);
    for (size_t i = A.size(); i-- > 0;) acc = ((acc + ZSeries::constant(A[i], N)) * h).truncate(N);
    return (mf::eisenstein_z(k, N) * acc).truncate(N);
}

GConstruction construct_g(int k, long D, int r, long N) {
    SymbolicKernelSum s = partial_g(k, r);
    CMConstants cc = cm_constants(D);
    std::vector<Rational> vals = evaluate(s, cc.norm);
    if (std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x == 0; }))
        throw Error("IdenticallyZero", "derivative of order " + std::to_string(r - 1) + " vanishes at alpha_D for k = " +
                                           std::to_string(k) + ", D = " + std::to_string(D));
    GConstruction g;
    g.k = k;
    g.D = D;
    g.r = r;
    g.jD = cc.j;
    g.A = linalg::primitive_integer(vals);
    while (!g.A.empty() && g.A.back() == 0) g.A.pop_back();
    g.series = g_series(k, g.jD, g.A, N);
    return g;
}

PoleProfile pole_profile(int k, long j0) {
    if (k != 4 && k != 6 && k != 8 && k != 10 && k != 14) throw Error("DomainError", "k must be in {4,6,8,10,14}");
    auto order = [&](int i) {
        if (j0 == 0) return 3 * i - k % 3;
        if (j0 == 1728) return 2 * i - (k / 2) % 2;
        throw Error("DomainError", "j0 must be 0 or 1728");
    };
    PoleProfile p;
    for (int i = 1; order(i) <= k - 1; ++i) p.orders.push_back(order(i));
    p.kappa = static_cast<int>(p.orders.size());
    return p;
}

namespace {

QSeries combine_exact(int k, const Integer& jD, const std::vector<Rational>& R, const Rational& scale, long N) {
    QSeries h = to_rational(mero::inverse_j_minus_c<Integer>(jD, N));
    QSeries acc = QSeries::zero(N);
    for (size_t i = R.size(); i-- > 0;) acc = ((acc + QSeries::constant(R[i], N)) * h).truncate(N);
    return (mf::eisenstein(k, N) * acc).truncate(N).scale(scale);
}

using CPoly = std::vector<num::Complex>;  // ascending

CPoly cmul(const CPoly& a, const CPoly& b) {
    CPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

CPoly cpow(const CPoly& a, int e) {
    CPoly r{num::Complex(num::Real(1))};
    for (int i = 0; i < e; ++i) r = cmul(r, a);
    return r;
}

// Evaluates the weight-0 sum at a point: coefficient of K^i for i = 1..d.
std::vector<num::Complex> evaluate_numeric(const SymbolicKernelSum& s, const num::PointValues& v) {
    std::vector<num::Complex> out(static_cast<size_t>(s.max_k_degree()));
    num::Complex dl = v.delta();
    for (const auto& [x, c] : s.terms) {
        num::Complex t = v.e2s.pow(x.a) * v.e4.pow(x.b) * v.e6.pow(x.c) * dl.pow(-x.m);
        num::Real cr = num::Real(c.get_num().get_str()) / num::Real(c.get_den().get_str());
        out[x.i - 1] = out[x.i - 1] + t.scale(cr);
    }
    return out;
}

QSeries poly_at_j_rational(const std::vector<Rational>& p, long M) {
    QSeries j = to_rational(mf::j_invariant(M));
    QSeries acc = QSeries::constant(p.empty() ? Rational(0) : p.back(), M);
    for (size_t i = p.size(); i-- > 1;) acc = acc * j + QSeries::constant(p[i - 1], M);
    return acc;
}

}  // namespace

QSeries script_g_numeric(int k, long D, const std::vector<QuadForm>& reps, long N) {
    if (k % 2) throw Error("DomainError", "k must be even");
    const int r = k / 2;
    SymbolicKernelSum s = partial_g(k, r);
    if (s.weight() != 0) throw Error("InternalError", "class sums need weight 0");
    const long h = static_cast<long>(reps.size());
    // j_Q grows like exp(pi sqrt|D| / a); H^r needs about h r log2|j| bits
    double lj = M_PI * std::sqrt(static_cast<double>(-D)) / std::log(2.0) + 12;
    unsigned start = static_cast<unsigned>(std::max(256.0, 2 * h * r * lj + 128));
    std::vector<Rational> prevP, P;
    std::vector<Integer> prevH, H;
    bool have_prev = false;
    for (unsigned bits = start; bits <= 65536; bits *= 2) {
        num::PrecisionScope scope(bits);
        std::vector<std::vector<num::Complex>> R;
        std::vector<num::Complex> js;
        for (const auto& q : reps) {
            num::PointValues v = num::eval_at(q.a, q.b, D, bits);
            R.push_back(evaluate_numeric(s, v));
            js.push_back(v.j());
        }
        std::vector<CPoly> lin;
        for (const auto& jq : js) lin.push_back(CPoly{num::Complex() - jq, num::Complex(num::Real(1))});
        CPoly Hc{num::Complex(num::Real(1))};
        for (const auto& l : lin) Hc = cmul(Hc, l);
        CPoly Pc(static_cast<size_t>(h * r), num::Complex());
        for (long qi = 0; qi < h; ++qi) {
            CPoly others{num::Complex(num::Real(1))};
            for (long o = 0; o < h; ++o)
                if (o != qi) others = cmul(others, cpow(lin[o], r));
            for (int i = 1; i <= static_cast<int>(R[qi].size()); ++i) {
                CPoly t = cmul(cpow(lin[qi], r - i), others);
                for (size_t e = 0; e < t.size(); ++e) Pc[e] = Pc[e] + t[e] * R[qi][i - 1];
            }
        }
        try {
            H.clear();
            P.clear();
            for (const auto& c : Hc) {
                num::Real rr = round(c.re);
                if (abs(c.re - rr) > num::Real("1e-10")) throw Error("NoConvergent", "class polynomial not integral");
                H.push_back(num::to_rational(rr).get_num());
            }
            for (const auto& c : Pc) P.push_back(num::reconstruct(c.re, bits, 64));
        } catch (const Error&) {
            have_prev = false;
            continue;
        }
        if (have_prev && P == prevP && H == prevH) {
            const long M = N + 3 * h * r + 6;
            QSeries hj = poly_at_j_rational(std::vector<Rational>(H.begin(), H.end()), M);
            QSeries pj = poly_at_j_rational(P, M);
            QSeries out = mf::eisenstein(k, M) * pj * hj.pow(static_cast<unsigned long>(r)).invert();
            if (out.precision() < N) throw Error("InternalError", "lost precision assembling the class sum");
            return out.truncate(N).scale(two_over_w(D));
        }
        prevP = P;
        prevH = H;
        have_prev = true;
    }
    throw Error("ReconstructionFailure", "class sum for D = " + std::to_string(D) + " did not stabilize");
}

QSeries script_g(int k, long D, long N) {
    if (k % 2) throw Error("DomainError", "k must be even");
    ClassList cl = reduced_forms(D);
    if (cl.class_number() > 1) return script_g_numeric(k, D, cl.primitive(), N);
    SymbolicKernelSum s = partial_g(k, k / 2);
    CMConstants cc = cm_constants(D);
    return combine_exact(k, cc.j, evaluate(s, cc.norm), two_over_w(D), N);
}

ZSeries tilde_scale(int k, long D, const QSeries& g) {
    auto [A, D0] = conductor_split(D);
    (void)A;
    const Integer a0 = std::labs(D0);
    Rational f = k % 4 == 0 ? Rational(1) / Rational(ipow(a0, static_cast<unsigned long>(k / 4)))
                            : Rational(ipow(a0, static_cast<unsigned long>((k - 2) / 4)));
    QSeries t = g.scale(f);
    if (!is_integral(t)) throw Error("NonIntegralResult", "scaled class sum is not integral");
    return to_integer(t);
}

QSeries trace(long d, long d0, int s, long N) {
    const long Dp = d * d0;
    if (Dp >= 0) throw Error("DomainError", "d d0 must be negative");
    if (d0 != 1 && !is_fundamental_discriminant(d0)) throw Error("DomainError", "d0 must be fundamental");
    const int k = 2 * s;
    auto [A, D0] = conductor_split(Dp);
    QSeries acc = QSeries::zero(N);
    for (long Ap : divisors(A)) {
        const long Db = Ap * Ap * D0;
        const long m = A / Ap;
        ClassList cl = reduced_forms(Db);
        int chi = 2;
        for (const auto& q : cl.primitive()) {
            int c = genus_character(QuadForm{m * q.a, m * q.b, m * q.c}, d, d0);
            if (chi != 2 && c != chi) throw Error("NonRationalTrace", "genus character is not constant on a block");
            chi = c;
        }
        if (chi == 0) continue;
        acc = acc + script_g(k, Db, N).scale(Rational(chi));
    }
    return acc;
}

}  // namespace asd::cm
