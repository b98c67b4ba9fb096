#include "asd/cm_symbolic.hpp"

namespace asd::cm {

namespace {

void add(std::map<Monomial, Rational>& t, const Monomial& mono, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(mono, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

}  // namespace

SymbolicKernelSum SymbolicKernelSum::kernel(int k) {
    SymbolicKernelSum s;
    Monomial mono;
    mono.m = 1;
    mono.i = 1;
    switch (k) {
        case 4: mono.b = 1, mono.c = 1; break;  // E_10 = E_4 E_6
        case 6: mono.b = 2; break;              // E_8 = E_4^2
        case 8: mono.c = 1; break;
        case 10: mono.b = 1; break;
        case 14: break;
        default: throw Error("DomainError", "k must be in {4,6,8,10,14}");
    }
    s.terms.emplace(mono, Rational(1));
    return s;
}

SymbolicKernelSum SymbolicKernelSum::derive() const {
    SymbolicKernelSum out;
    auto& t = out.terms;
    for (const auto& [x, c] : terms) {
        // d e2 = (e2^2 - e4)/12
        if (x.a) {
            Monomial u = x;
            u.a += 1;
            add(t, u, c * x.a / 12);
            u = x;
            u.a -= 1;
            u.b += 1;
            add(t, u, -c * x.a / 12);
        }
        // d e4 = (e2 e4 - e6)/3
        if (x.b) {
            Monomial u = x;
            u.a += 1;
            add(t, u, c * x.b / 3);
            u = x;
            u.b -= 1;
            u.c += 1;
            add(t, u, -c * x.b / 3);
        }
        // d e6 = (e2 e6 - e4^2)/2
        if (x.c) {
            Monomial u = x;
            u.a += 1;
            add(t, u, c * x.c / 2);
            u = x;
            u.c -= 1;
            u.b += 2;
            add(t, u, -c * x.c / 2);
        }
        // d Delta^{-m} = -m e2 Delta^{-m}
        if (x.m) {
            Monomial u = x;
            u.a += 1;
            add(t, u, -c * x.m);
        }
        // d K^i = i K^{i+1} dJ with dJ = -e4^2 e6 / Delta
        if (x.i) {
            Monomial u = x;
            u.b += 2;
            u.c += 1;
            u.m += 1;
            u.i += 1;
            add(t, u, -c * x.i);
        }
    }
    for (auto& [x, c] : t) c.canonicalize();
    return out;
}

int SymbolicKernelSum::weight() const {
    if (terms.empty()) return 0;
    int w = terms.begin()->first.weight();
    for (const auto& [x, c] : terms)
        if (x.weight() != w) throw Error("NotHomogeneous", "mixed weights in kernel sum");
    return w;
}

int SymbolicKernelSum::max_k_degree() const {
    int d = 0;
    for (const auto& [x, c] : terms) d = std::max(d, x.i);
    return d;
}

SymbolicKernelSum partial_g(int k, int r) {
    if (r < 1 || r > k - 1) throw Error("DomainError", "need 1 <= r <= k-1");
    SymbolicKernelSum s = SymbolicKernelSum::kernel(k);
    for (int i = 1; i < r; ++i) {
        s = s.derive();
        s.weight();
    }
    return s;
}

std::vector<Rational> evaluate(const SymbolicKernelSum& s, const CMNormalization& norm, int* eps) {
    const int w = s.weight();
    std::vector<Rational> out(static_cast<size_t>(s.max_k_degree()), Rational(0));
    // Delta = (e4^3 - e6^2)/1728
    const Rational delta = norm.e4_zero ? Rational(-1, 1728) : Rational(1 - norm.sigma2) / 1728;
    if (delta == 0) throw Error("DomainError", "Delta vanishes under this normalization");
    const int e = norm.e4_zero ? 0 : ((w / 2) % 2 + 2) % 2;
    if (eps) *eps = e;
    for (const auto& [x, c] : s.terms) {
        Rational v = c * rpow(delta, -x.m);
        if (norm.e4_zero) {
            if (x.a || x.b) continue;
        } else {
            int sc = x.a + x.c;  // power of sigma
            if ((sc - e) % 2) throw Error("InternalError", "sigma parity mismatch");
            if (norm.sigma2 == 0 && sc > 0) continue;
            v *= rpow(norm.rho, x.a) * rpow(norm.sigma2, (sc - e) / 2);
        }
        out[x.i - 1] += v;
    }
    for (auto& x : out) x.canonicalize();
    return out;
}

}  // namespace asd::cm
