#include "asd/qseries.hpp"

namespace asd {

// ---- RatPoly ------------------------------------------------------------------

Rational RatPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (long i = degree(); i >= 0; --i) r = r * x + c[i];
    r.canonicalize();
    return r;
}

Integer RatPoly::eval_mod(const Integer& x, const Integer& m) const {
    Integer r = 0;
    for (long i = degree(); i >= 0; --i) r = mod(r * x + reduce_mod(c[i], m), m);
    return r;
}

RatPoly RatPoly::reversed(long n) const {
    std::vector<Rational> out(static_cast<size_t>(n + 1), Rational(0));
    for (long i = 0; i <= degree(); ++i) {
        if (i > n) throw Error("DomainError", "reversal degree below polynomial degree");
        out[n - i] = c[i];
    }
    return RatPoly(out);
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> r(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return RatPoly(r);
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rational> r(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return RatPoly(r);
}

bool RatPoly::integral() const {
    for (const auto& x : c)
        if (x.get_den() != 1) return false;
    return true;
}

// ---- ring multiplication hooks ---------------------------------------------------

namespace {
Integer common_denominator(const std::vector<Rational>& a, size_t n) {
    Integer l = 1;
    for (size_t i = 0; i < a.size() && i < n; ++i)
        if (a[i].get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i].get_den_mpz_t());
    return l;
}

std::vector<Integer> scaled_numerators(const std::vector<Rational>& a, size_t n, const Integer& l) {
    std::vector<Integer> out(std::min(a.size(), n));
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i].get_num() * (l / a[i].get_den());
    return out;
}
}  // namespace

std::vector<Rational> RingTraits<Rational>::mul(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                                size_t n, const Ctx&) {
    Integer la = common_denominator(a, n), lb = common_denominator(b, n);
    auto c = kernel::mul(scaled_numerators(a, n, la), scaled_numerators(b, n, lb), n);
    Integer l = la * lb;
    std::vector<Rational> out(n);
    for (size_t i = 0; i < n; ++i) {
        out[i] = Rational(c[i], l);
        out[i].canonicalize();
    }
    return out;
}

std::vector<QuadraticInteger> RingTraits<QuadraticInteger>::mul(const std::vector<QuadraticInteger>& a,
                                                                const std::vector<QuadraticInteger>& b, size_t n,
                                                                const Ctx& ctx) {
    // (x1 + y1 w)(x2 + y2 w) with w^2 = D w - D(D-1)/4, via four integer products.
    size_t na = std::min(a.size(), n), nb = std::min(b.size(), n);
    std::vector<Integer> ax(na), ay(na), bx(nb), by(nb);
    for (size_t i = 0; i < na; ++i) {
        ax[i] = a[i].x;
        ay[i] = a[i].y;
    }
    for (size_t i = 0; i < nb; ++i) {
        bx[i] = b[i].x;
        by[i] = b[i].y;
    }
    auto xx = kernel::mul(ax, bx, n), xy = kernel::mul(ax, by, n), yx = kernel::mul(ay, bx, n),
         yy = kernel::mul(ay, by, n);
    Integer c = Integer(ctx.D) * (ctx.D - 1) / 4;
    std::vector<QuadraticInteger> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = QuadraticInteger(ctx.D, xx[i] - yy[i] * c, xy[i] + yx[i] + yy[i] * ctx.D);
    return out;
}

std::vector<PadicApprox> RingTraits<PadicApprox>::mul(const std::vector<PadicApprox>& a,
                                                      const std::vector<PadicApprox>& b, size_t n, const Ctx& ctx) {
    std::vector<Integer> ra(std::min(a.size(), n)), rb(std::min(b.size(), n));
    for (size_t i = 0; i < ra.size(); ++i) ra[i] = a[i].value;
    for (size_t i = 0; i < rb.size(); ++i) rb[i] = b[i].value;
    Integer m = ctx.modulus();
    auto c = kernel::mul_mod(ra, rb, n, m);
    std::vector<PadicApprox> out(n);
    for (size_t i = 0; i < n; ++i) {
        out[i].p = ctx.p;
        out[i].N = ctx.N;
        out[i].value = std::move(c[i]);
    }
    return out;
}

std::string RingTraits<RatPoly>::write(const RatPoly& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < x.c.size(); ++i) {
        if (i) s += ",";
        s += x.c[i].get_str();
    }
    return s;
}

RatPoly RingTraits<RatPoly>::read(const std::string& s, const Ctx&) {
    std::vector<Rational> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rational r(tok);
        r.canonicalize();
        c.push_back(r);
    }
    return RatPoly(c);
}

std::vector<RatPoly> RingTraits<RatPoly>::mul(const std::vector<RatPoly>& a, const std::vector<RatPoly>& b,
                                              size_t n, const Ctx&) {
    std::vector<RatPoly> out(n);
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

// ---- conversions ------------------------------------------------------------

QSeries to_rational(const ZSeries& f) {
    return f.map<Rational>([](const Integer& x) { return Rational(x); });
}

ZSeries to_integer(const QSeries& f) {
    return f.map<Integer>([](const Rational& x) { return RingTraits<Integer>::from_rational(x, {}); });
}

bool is_integral(const QSeries& f) {
    for (const auto& x : f.raw())
        if (x.get_den() != 1) return false;
    return true;
}

PSeries to_padic(const ZSeries& f, long p, long N) {
    PadicCtx c{p, N};
    return f.map<PadicApprox>([&](const Integer& x) { return PadicApprox(p, N, x); }, c);
}

PSeries to_padic(const QSeries& f, long p, long N) {
    PadicCtx c{p, N};
    return f.map<PadicApprox>([&](const Rational& x) { return PadicApprox::from_rational(p, N, x); }, c);
}

std::pair<Rational, ZSeries> content_normalize(const QSeries& f) {
    if (f.is_zero()) throw Error("ZeroSeries", "cannot normalize the zero series");
    Integer g = 0, l = 1;
    for (const auto& x : f.raw()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    Rational content(g, l);
    content.canonicalize();
    if (f.raw().front() < 0) content = -content;
    QSeries n = f.scale(Rational(1) / content);
    return {content, to_integer(n)};
}

std::pair<Rational, ZSeries> content_normalize(const ZSeries& f) { return content_normalize(to_rational(f)); }

// ---- cache header -----------------------------------------------------------------

namespace {
std::string expect_field(std::istream& is, const std::string& key) {
    std::string line;
    if (!std::getline(is, line)) throw Error("ParseError", "missing " + key + " line");
    if (line.rfind(key + "=", 0) != 0) throw Error("ParseError", "expected " + key + "=, got " + line);
    return line.substr(key.size() + 1);
}
}  // namespace

SeriesHeader read_series_header(std::istream& is) {
    SeriesHeader h;
    h.ring = expect_field(is, "ring");
    h.valuation = std::stol(expect_field(is, "valuation"));
    h.precision = std::stol(expect_field(is, "precision"));
    return h;
}

QuadCtx parse_quad_tag(const std::string& tag) {
    if (tag.rfind("quad:", 0) != 0) throw Error("RingMismatch", "expected quad ring, got " + tag);
    return QuadCtx{std::stol(tag.substr(5))};
}

PadicCtx parse_padic_tag(const std::string& tag) {
    if (tag.rfind("padic:", 0) != 0) throw Error("RingMismatch", "expected padic ring, got " + tag);
    auto body = tag.substr(6);
    auto k = body.find(',');
    if (k == std::string::npos) throw Error("ParseError", "padic tag needs p,N");
    return PadicCtx{std::stol(body.substr(0, k)), std::stol(body.substr(k + 1))};
}

}  // namespace asd
