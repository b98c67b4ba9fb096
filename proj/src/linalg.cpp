#include "asd/linalg.hpp"

namespace asd::linalg {

std::vector<size_t> rref(Matrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rational inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) {
            m[r][j] *= inv;
            m[r][j].canonicalize();
        }
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> kernel(Matrix m) {
    if (m.empty()) return {};
    const size_t cols = m[0].size();
    auto piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Rational>> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        out.push_back(v);
    }
    return out;
}

std::vector<Rational> solve(Matrix m, const std::vector<Rational>& b) {
    const size_t rows = m.size();
    if (rows == 0) return {};
    const size_t cols = m[0].size();
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto piv = rref(m);
    for (auto c : piv)
        if (c == cols) throw Error("NoSolution", "inconsistent linear system");
    if (piv.size() < cols) throw Error("NotUnique", "linear system has a nontrivial kernel");
    std::vector<Rational> x(cols);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
    return x;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
    Integer l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out;
    for (const auto& x : v) {
        Integer n = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        out.push_back(n);
    }
    if (g == 0) return out;
    int sign = 1;
    for (const auto& x : out)
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    for (auto& x : out) x = sign * x / g;
    return out;
}

}  // namespace asd::linalg
