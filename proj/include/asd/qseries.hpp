#pragma once

#include "asd/exactnum.hpp"
#include "asd/kernel.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace asd {

/// Polynomial in one variable X over Q, coefficients in ascending degree, no trailing zeros.
struct RatPoly {
    std::vector<Rational> c;

    RatPoly() = default;
    RatPoly(const Rational& a) {
        if (a != 0) c.push_back(a);
    }
    explicit RatPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
    static RatPoly x() { return RatPoly(std::vector<Rational>{0, 1}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Rational at(long i) const { return i >= 0 && i < static_cast<long>(c.size()) ? c[i] : Rational(0); }
    Rational eval(const Rational& x) const;
    Integer eval_mod(const Integer& x, const Integer& m) const;
    RatPoly reversed(long n) const;  // X^n P(1/X)

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator-() const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly& operator+=(const RatPoly& o) { return *this = *this + o; }
    RatPoly& operator-=(const RatPoly& o) { return *this = *this - o; }
    RatPoly& operator*=(const RatPoly& o) { return *this = *this * o; }
    bool operator==(const RatPoly& o) const { return c == o.c; }
    bool operator!=(const RatPoly& o) const { return !(*this == o); }
    bool integral() const;
};

// ---- ring traits ------------------------------------------------------------

template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
    struct Ctx {
        bool operator==(const Ctx&) const { return true; }
    };
    static constexpr bool kNewton = true;
    static std::string tag(const Ctx&) { return "int"; }
    static Integer zero(const Ctx&) { return 0; }
    static Integer from_integer(const Integer& x, const Ctx&) { return x; }
    static Integer from_rational(const Rational& x, const Ctx&) {
        if (x.get_den() != 1) throw Error("NotIntegral", x.get_str() + " is not an integer");
        return x.get_num();
    }
    static bool is_zero(const Integer& x) { return x == 0; }
    static bool is_unit(const Integer& x) { return x == 1 || x == -1; }
    static Integer inverse(const Integer& x) {
        if (!is_unit(x)) throw Error("NonUnitLeading", "leading coefficient " + x.get_str() + " is not a unit in Z");
        return x;
    }
    static std::string write(const Integer& x) { return x.get_str(); }
    static Integer read(const std::string& s, const Ctx&) { return Integer(s); }
    static std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t n,
                                    const Ctx&) {
        return kernel::mul(a, b, n);
    }
};

template <>
struct RingTraits<Rational> {
    struct Ctx {
        bool operator==(const Ctx&) const { return true; }
    };
    static constexpr bool kNewton = true;
    static std::string tag(const Ctx&) { return "rat"; }
    static Rational zero(const Ctx&) { return 0; }
    static Rational from_integer(const Integer& x, const Ctx&) { return Rational(x); }
    static Rational from_rational(const Rational& x, const Ctx&) { return x; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool is_unit(const Rational& x) { return x != 0; }
    static Rational inverse(const Rational& x) {
        if (x == 0) throw Error("NonUnitLeading", "zero leading coefficient");
        Rational r = 1 / x;
        r.canonicalize();
        return r;
    }
    static std::string write(const Rational& x) { return x.get_str(); }
    static Rational read(const std::string& s, const Ctx&) {
        Rational r(s);
        r.canonicalize();
        return r;
    }
    static std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, size_t n,
                                     const Ctx&);
};

struct QuadCtx {
    long D = -4;
    bool operator==(const QuadCtx& o) const { return D == o.D; }
};

template <>
struct RingTraits<QuadraticInteger> {
    using Ctx = QuadCtx;
    static constexpr bool kNewton = false;
    static std::string tag(const Ctx& c) { return "quad:" + std::to_string(c.D); }
    static QuadraticInteger zero(const Ctx& c) { return QuadraticInteger(c.D, 0, 0); }
    static QuadraticInteger from_integer(const Integer& x, const Ctx& c) { return QuadraticInteger(c.D, x, 0); }
    static QuadraticInteger from_rational(const Rational& x, const Ctx& c) {
        return from_integer(RingTraits<Integer>::from_rational(x, {}), c);
    }
    static bool is_zero(const QuadraticInteger& x) { return x.is_zero(); }
    static bool is_unit(const QuadraticInteger& x) {
        Integer n = x.norm();
        return n == 1 || n == -1;
    }
    static QuadraticInteger inverse(const QuadraticInteger& x) {
        Integer n = x.norm();
        if (n != 1 && n != -1) throw Error("NonUnitLeading", "leading quadratic integer is not a unit");
        QuadraticInteger c = x.conj();
        return n == 1 ? c : -c;
    }
    static std::string write(const QuadraticInteger& x) { return x.x.get_str() + "," + x.y.get_str(); }
    static QuadraticInteger read(const std::string& s, const Ctx& c) {
        auto k = s.find(',');
        if (k == std::string::npos) throw Error("ParseError", "quadratic integer needs x,y");
        return QuadraticInteger(c.D, Integer(s.substr(0, k)), Integer(s.substr(k + 1)));
    }
    static std::vector<QuadraticInteger> mul(const std::vector<QuadraticInteger>& a,
                                             const std::vector<QuadraticInteger>& b, size_t n, const Ctx& c);
};

struct PadicCtx {
    long p = 2;
    long N = 1;
    bool operator==(const PadicCtx& o) const { return p == o.p && N == o.N; }
    Integer modulus() const { return ipow(Integer(p), static_cast<unsigned long>(N)); }
};

template <>
struct RingTraits<PadicApprox> {
    using Ctx = PadicCtx;
    static constexpr bool kNewton = true;
    static std::string tag(const Ctx& c) { return "padic:" + std::to_string(c.p) + "," + std::to_string(c.N); }
    static PadicApprox zero(const Ctx& c) { return PadicApprox(c.p, c.N, 0); }
    static PadicApprox from_integer(const Integer& x, const Ctx& c) { return PadicApprox(c.p, c.N, x); }
    static PadicApprox from_rational(const Rational& x, const Ctx& c) {
        return PadicApprox::from_rational(c.p, c.N, x);
    }
    static bool is_zero(const PadicApprox& x) { return x.is_zero(); }
    static bool is_unit(const PadicApprox& x) { return x.is_unit(); }
    static PadicApprox inverse(const PadicApprox& x) {
        if (!x.is_unit()) throw Error("NonUnitLeading", "leading p-adic coefficient is not a unit");
        return x.inverse();
    }
    static std::string write(const PadicApprox& x) { return x.value.get_str(); }
    static PadicApprox read(const std::string& s, const Ctx& c) { return PadicApprox(c.p, c.N, Integer(s)); }
    static std::vector<PadicApprox> mul(const std::vector<PadicApprox>& a, const std::vector<PadicApprox>& b,
                                        size_t n, const Ctx& c);
};

template <>
struct RingTraits<RatPoly> {
    struct Ctx {
        bool operator==(const Ctx&) const { return true; }
    };
    static constexpr bool kNewton = false;
    static std::string tag(const Ctx&) { return "polyrat"; }
    static RatPoly zero(const Ctx&) { return RatPoly(); }
    static RatPoly from_integer(const Integer& x, const Ctx&) { return RatPoly(Rational(x)); }
    static RatPoly from_rational(const Rational& x, const Ctx&) { return RatPoly(x); }
    static bool is_zero(const RatPoly& x) { return x.is_zero(); }
    static bool is_unit(const RatPoly& x) { return x.degree() == 0; }
    static RatPoly inverse(const RatPoly& x) {
        if (x.degree() != 0) throw Error("NonUnitLeading", "leading polynomial coefficient is not a nonzero constant");
        return RatPoly(Rational(1) / x.c[0]);
    }
    static std::string write(const RatPoly& x);
    static RatPoly read(const std::string& s, const Ctx&);
    static std::vector<RatPoly> mul(const std::vector<RatPoly>& a, const std::vector<RatPoly>& b, size_t n,
                                    const Ctx&);
};

/// Default storage cap on the number of stored terms of one series.
inline constexpr long kMaxTerms = 1L << 22;
inline constexpr long kDefaultPrecision = 2000;

// ---- TruncatedSeries -----------------------------------------------------------

/// Laurent series sum_{n >= start} a_n q^n known exactly through exponent `precision` (inclusive).
template <class R>
class Series {
public:
    using Traits = RingTraits<R>;
    using Ctx = typename Traits::Ctx;

    Series() : prec_(-1), start_(0) {}

    /// Zero series known through exponent prec.
    static Series zero(long prec, Ctx ctx = {}) {
        Series s;
        s.ctx_ = ctx;
        s.prec_ = prec;
        s.start_ = prec + 1;
        return s;
    }
    static Series constant(const R& c, long prec, Ctx ctx = {}) { return monomial(c, 0, prec, ctx); }
    static Series monomial(const R& c, long e, long prec, Ctx ctx = {}) {
        Series s = zero(prec, ctx);
        if (e <= prec) {
            s.start_ = e;
            s.a_.assign(1, c);
            s.normalize();
        }
        return s;
    }
    /// Series with coefficients a[i] at exponent start + i, known through `prec`.
    static Series from_coeffs(long start, std::vector<R> a, long prec, Ctx ctx = {}) {
        Series s;
        s.ctx_ = ctx;
        s.prec_ = prec;
        s.start_ = start;
        s.a_ = std::move(a);
        long keep = std::max(0L, prec - start + 1);
        if (static_cast<long>(s.a_.size()) > keep) s.a_.resize(keep);
        while (static_cast<long>(s.a_.size()) < keep) s.a_.push_back(Traits::zero(ctx));
        s.normalize();
        return s;
    }
    /// Series from a generator n -> a_n for start <= n <= prec.
    static Series generate(long start, long prec, const std::function<R(long)>& f, Ctx ctx = {}) {
        std::vector<R> a;
        a.reserve(std::max(0L, prec - start + 1));
        for (long n = start; n <= prec; ++n) a.push_back(f(n));
        return from_coeffs(start, std::move(a), prec, ctx);
    }

    const Ctx& ctx() const { return ctx_; }
    long precision() const { return prec_; }
    /// Exponent of the first nonzero coefficient; precision() + 1 when the series is zero to precision.
    long valuation() const { return start_; }
    bool is_zero() const { return a_.empty(); }
    std::string ring_tag() const { return Traits::tag(ctx_); }

    /// Exact coefficient of q^n; throws OutOfPrecision when n exceeds the precision.
    R coeff(long n) const {
        if (n > prec_) throw Error("OutOfPrecision", "coefficient " + std::to_string(n) + " beyond precision " +
                                                         std::to_string(prec_));
        if (n < start_ || n - start_ >= static_cast<long>(a_.size())) return Traits::zero(ctx_);
        return a_[n - start_];
    }
    R operator[](long n) const { return coeff(n); }
    /// Coefficient with a_m := 0 for m outside Z handled by callers; here m must be an integer.
    const std::vector<R>& raw() const { return a_; }

    Series truncate(long prec) const {
        Series s = *this;
        if (prec < s.prec_) {
            s.prec_ = prec;
            long keep = std::max(0L, prec - s.start_ + 1);
            if (static_cast<long>(s.a_.size()) > keep) s.a_.resize(keep);
            s.normalize();
        }
        return s;
    }

    /// Multiply by q^e.
    Series shift(long e) const {
        Series s = *this;
        s.start_ += e;
        s.prec_ += e;
        return s;
    }

    Series operator-() const {
        Series s = *this;
        for (auto& x : s.a_) x = -x;
        return s;
    }

    Series operator+(const Series& o) const { return combine(o, false); }
    Series operator-(const Series& o) const { return combine(o, true); }

    Series operator*(const Series& o) const {
        check_ctx(o);
        long prec = std::min(start_ + o.prec_, o.start_ + prec_);
        if (is_zero() || o.is_zero()) return zero(prec, ctx_);
        long start = start_ + o.start_;
        long n = prec - start + 1;
        if (n <= 0) return zero(prec, ctx_);
        if (n > kMaxTerms) throw Error("StorageCap", "series product exceeds the term cap");
        auto c = Traits::mul(a_, o.a_, static_cast<size_t>(n), ctx_);
        return from_coeffs(start, std::move(c), prec, ctx_);
    }

    Series scale(const R& c) const {
        Series s = *this;
        for (auto& x : s.a_) x = x * c;
        s.normalize();
        return s;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series pow(unsigned long e) const {
        if (e == 0) {
            long relprec = prec_ - start_;
            return constant(one(), relprec, ctx_);
        }
        Series r, b = *this;
        bool have = false;
        while (e) {
            if (e & 1) {
                r = have ? r * b : b;
                have = true;
            }
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// Multiplicative inverse. Throws NonUnitLeading if the leading coefficient is not a unit.
    Series invert() const {
        if (is_zero()) throw Error("NonUnitLeading", "inverse of a series that is zero to precision");
        const R& lead = a_[0];
        if (!Traits::is_unit(lead)) Traits::inverse(lead);
        long relprec = prec_ - start_;  // number of known terms minus one
        long n = relprec + 1;
        std::vector<R> g;
        if constexpr (Traits::kNewton) {
            g = newton_inverse(a_, n);
        } else {
            R inv0 = Traits::inverse(lead);
            g.assign(n, Traits::zero(ctx_));
            g[0] = inv0;
            for (long k = 1; k < n; ++k) {
                R s = Traits::zero(ctx_);
                for (long i = 1; i <= k && i < static_cast<long>(a_.size()); ++i) s = s + a_[i] * g[k - i];
                g[k] = -(s * inv0);
            }
        }
        return from_coeffs(-start_, std::move(g), -start_ + relprec, ctx_);
    }

    Series divide(const Series& o) const { return *this * o.invert(); }

    /// f|U_p : a_{np} at index n.
    Series u_p(long p) const {
        long lo = ceil_div(start_, p), hi = floor_div(prec_, p);
        std::vector<R> a;
        for (long n = lo; n <= hi; ++n) a.push_back(coeff(n * p));
        return from_coeffs(lo, std::move(a), hi, ctx_);
    }

    /// f|V_p : a_n at index np.
    Series v_p(long p, long cap = kMaxTerms) const {
        long hi = prec_ * p + (p - 1);
        if (hi - start_ * p + 1 > cap) hi = start_ * p + cap - 1;
        if (is_zero()) return zero(hi, ctx_);
        std::vector<R> a(static_cast<size_t>(std::max(0L, hi - start_ * p + 1)), Traits::zero(ctx_));
        for (size_t i = 0; i < a_.size(); ++i) {
            long idx = static_cast<long>(i) * p;
            if (idx < static_cast<long>(a.size())) a[idx] = a_[i];
        }
        return from_coeffs(start_ * p, std::move(a), hi, ctx_);
    }

    /// Coefficientwise map into another ring.
    template <class S>
    Series<S> map(const std::function<S(const R&)>& f, typename RingTraits<S>::Ctx cs = {}) const {
        std::vector<S> a;
        a.reserve(a_.size());
        for (const auto& x : a_) a.push_back(f(x));
        return Series<S>::from_coeffs(start_, std::move(a), prec_, cs);
    }

    bool operator==(const Series& o) const {
        if (!(ctx_ == o.ctx_) || prec_ != o.prec_ || start_ != o.start_) return false;
        // storage may omit trailing zeros
        size_t n = std::max(a_.size(), o.a_.size());
        for (size_t i = 0; i < n; ++i) {
            bool za = i >= a_.size() || Traits::is_zero(a_[i]), zb = i >= o.a_.size() || Traits::is_zero(o.a_[i]);
            if (za != zb || (!za && !(a_[i] == o.a_[i]))) return false;
        }
        return true;
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    /// Equality of the coefficients common to both precisions.
    bool agrees_with(const Series& o) const {
        long hi = std::min(prec_, o.prec_);
        long lo = std::min(start_, o.start_);
        for (long n = lo; n <= hi; ++n)
            if (coeff(n) != o.coeff(n)) return false;
        return true;
    }

    static long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
    static long ceil_div(long a, long b) { return -floor_div(-a, b); }

private:
    Ctx ctx_{};
    long prec_;
    long start_;
    std::vector<R> a_;

    R one() const { return Traits::from_integer(1, ctx_); }

    void check_ctx(const Series& o) const {
        if (!(ctx_ == o.ctx_)) throw Error("RingMismatch", Traits::tag(ctx_) + " vs " + Traits::tag(o.ctx_));
    }

    void normalize() {
        size_t lead = 0;
        while (lead < a_.size() && Traits::is_zero(a_[lead])) ++lead;
        if (lead == a_.size()) {
            a_.clear();
            start_ = prec_ + 1;
            return;
        }
        if (lead) {
            a_.erase(a_.begin(), a_.begin() + static_cast<long>(lead));
            start_ += static_cast<long>(lead);
        }
    }

    Series combine(const Series& o, bool subtract) const {
        check_ctx(o);
        long prec = std::min(prec_, o.prec_);
        long start = std::min(start_, o.start_);
        if (start > prec) return zero(prec, ctx_);
        std::vector<R> a(static_cast<size_t>(prec - start + 1), Traits::zero(ctx_));
        for (size_t i = 0; i < a_.size(); ++i) {
            long e = start_ + static_cast<long>(i);
            if (e > prec) break;
            a[e - start] = a_[i];
        }
        for (size_t i = 0; i < o.a_.size(); ++i) {
            long e = o.start_ + static_cast<long>(i);
            if (e > prec) break;
            if (subtract)
                a[e - start] = a[e - start] - o.a_[i];
            else
                a[e - start] = a[e - start] + o.a_[i];
        }
        return from_coeffs(start, std::move(a), prec, ctx_);
    }

    std::vector<R> newton_inverse(const std::vector<R>& f, long n) const {
        std::vector<R> g{Traits::inverse(f[0])};
        long k = 1;
        while (k < n) {
            long k2 = std::min(2 * k, n);
            std::vector<R> fk(f.begin(), f.begin() + std::min(static_cast<long>(f.size()), k2));
            auto e = Traits::mul(fk, g, static_cast<size_t>(k2), ctx_);  // f g = 1 + O(q^k)
            // g <- g - g (f g - 1)
            std::vector<R> err(e.begin() + k, e.end());
            auto corr = Traits::mul(g, err, static_cast<size_t>(k2 - k), ctx_);
            g.resize(k2, Traits::zero(ctx_));
            for (long i = k; i < k2; ++i) g[i] = -corr[i - k];
            k = k2;
        }
        return g;
    }
};

using ZSeries = Series<Integer>;
using QSeries = Series<Rational>;
using PSeries = Series<PadicApprox>;
using PolySeries = Series<RatPoly>;

// ---- conversions ------------------------------------------------------------

QSeries to_rational(const ZSeries& f);
/// Throws NotIntegral if some coefficient is not an integer.
ZSeries to_integer(const QSeries& f);
bool is_integral(const QSeries& f);
PSeries to_padic(const ZSeries& f, long p, long N);
PSeries to_padic(const QSeries& f, long p, long N);

/// (unit * content, normalized) with gcd 1 and positive leading coefficient. Throws ZeroSeries.
std::pair<Rational, ZSeries> content_normalize(const ZSeries& f);
std::pair<Rational, ZSeries> content_normalize(const QSeries& f);

// ---- cache text format ----------------------------------------------------------

template <class R>
void write_series(std::ostream& os, const Series<R>& f) {
    os << "ring=" << f.ring_tag() << "\n";
    os << "valuation=" << f.valuation() << "\n";
    os << "precision=" << f.precision() << "\n";
    for (long n = f.valuation(); n <= f.precision(); ++n) os << RingTraits<R>::write(f.coeff(n)) << "\n";
}

template <class R>
std::string series_to_text(const Series<R>& f) {
    std::ostringstream os;
    write_series(os, f);
    return os.str();
}

struct SeriesHeader {
    std::string ring;
    long valuation = 0;
    long precision = 0;
};

SeriesHeader read_series_header(std::istream& is);
QuadCtx parse_quad_tag(const std::string& tag);
PadicCtx parse_padic_tag(const std::string& tag);

template <class R>
Series<R> read_series(std::istream& is, typename RingTraits<R>::Ctx ctx = {}) {
    SeriesHeader h = read_series_header(is);
    if constexpr (std::is_same_v<R, QuadraticInteger>) ctx = parse_quad_tag(h.ring);
    if constexpr (std::is_same_v<R, PadicApprox>) ctx = parse_padic_tag(h.ring);
    if (h.ring != RingTraits<R>::tag(ctx)) throw Error("RingMismatch", "cache ring " + h.ring);
    std::vector<R> a;
    std::string line;
    for (long n = h.valuation; n <= h.precision; ++n) {
        if (!std::getline(is, line)) throw Error("ParseError", "truncated series body");
        a.push_back(RingTraits<R>::read(line, ctx));
    }
    return Series<R>::from_coeffs(h.valuation, std::move(a), h.precision, ctx);
}

template <class R>
Series<R> series_from_text(const std::string& s, typename RingTraits<R>::Ctx ctx = {}) {
    std::istringstream is(s);
    return read_series<R>(is, ctx);
}

}  // namespace asd
