#pragma once

#include "asd/exactnum.hpp"

#include <compare>
#include <map>
#include <vector>

namespace asd::cm {

/// e2^a e4^b e6^c Delta^{-m} K^i, where e2 is the almost-holomorphic E_2* and K = 1/(j(z) - j(tau)).
struct Monomial {
    int a = 0;
    int b = 0;
    int c = 0;
    int m = 0;
    int i = 0;
    auto operator<=>(const Monomial&) const = default;
    int weight() const { return 2 * a + 4 * b + 6 * c - 12 * m; }
};

/// Formal sum of monomials with rational coefficients, in the tau variable.
struct SymbolicKernelSum {
    std::map<Monomial, Rational> terms;

    /// (E_{14-k}/Delta)(tau) K, i.e. G_k(z, tau) / E_k(z).
    static SymbolicKernelSum kernel(int k);
    /// Nonholomorphic derivative in tau.
    SymbolicKernelSum derive() const;
    /// Common weight; throws NotHomogeneous.
    int weight() const;
    int max_k_degree() const;
    bool is_zero() const { return terms.empty(); }
};

/// d^{r-1} applied to the kernel for weight k.
SymbolicKernelSum partial_g(int k, int r);

/// Values of the generators at a CM point, up to the weight scaling.
/// Generic: e4 = 1, e6 = sigma with sigma^2 = sigma2, e2 = rho sigma.
/// E4Zero: e4 = 0, e6 = 1, e2 = 0 (the point rho of discriminant -3).
struct CMNormalization {
    bool e4_zero = false;
    Rational sigma2 = 0;
    Rational rho = 0;
};

/// Coefficients R_1..R_d (index i-1) of K^i after substitution; the common factor sigma^eps is dropped.
/// eps is written to *eps when given. All zero means the expression vanishes identically at the point.
std::vector<Rational> evaluate(const SymbolicKernelSum& s, const CMNormalization& norm, int* eps = nullptr);

}  // namespace asd::cm
