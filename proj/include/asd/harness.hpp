#pragma once

#include "asd/qseries.hpp"
#include "asd/report.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace asd::harness {

enum class Tag { Theorem, Conjecture };
const char* tag_name(Tag t);

/// e = per_l * l + offset + per_vn * v_p(n).
struct ExponentLaw {
    Rational per_l = 0;
    Rational offset = 0;
    Rational per_vn = 0;
    std::string text;

    /// Throws NonIntegralExponent when the value is not an integer.
    long eval(long l, long vn = 0) const;
    static ExponentLaw affine(const Rational& per_l, const Rational& offset, std::string text) {
        return ExponentLaw{per_l, offset, 0, std::move(text)};
    }
};

/// Coefficient c_i at p: exact integer, element of O_D, or a p-adic residue.
using Coeff = std::variant<Integer, QuadraticInteger, PadicApprox>;
/// `e` is the p-adic precision wanted for values that are not exact.
using CoeffProvider = std::function<Coeff(long p, long e)>;

/// Returns a rejection reason, or nothing when p is admissible.
struct PrimeFilter {
    std::string name;
    std::function<std::optional<std::string>(long p)> reject;
};

enum class Shape {
    Recurrence,  // a_{nq^l} + sum c_i a_{nq^{l-i}}, q = p^step
    Magnetic,    // n^r | a_n, one cell per prime divisor of n
    Custom,      // cells produced per prime by a function
};

struct CongruenceSpec {
    std::string id;
    std::string variant;
    Tag tag = Tag::Conjecture;
    Shape shape = Shape::Recurrence;

    std::vector<CoeffProvider> coeffs;  // c_1 .. c_s
    std::function<int(long p)> step;    // exponent f with q = p^f; 1 when empty
    ExponentLaw law;
    std::vector<PrimeFilter> filters;
    std::optional<IdealSide> side;  // valuation at a prime above p instead of p itself
    long quad_disc = 0;             // order of the quadratic coefficients

    int magnetic_r = 1;
    std::function<std::vector<Cell>(long p, long N)> custom;

    long p_lo = 5, p_hi = 13;
    long nmax = 10;
    int lmin = 1, lmax = 2;
    long slack = 3;  // extra p-adic digits beyond the required exponent

    std::vector<std::string> filter_names() const;
};

/// Where the q-expansion comes from. `modular` (optional) gives residues mod p^e.
struct SeriesSource {
    std::string descriptor;
    std::function<QSeries(long N)> exact;
    std::function<PSeries(long N, long p, long e)> modular;
};

struct Summary {
    long pass = 0, fail = 0, skipped = 0, capped = 0;
    long theorem_fail = 0;
    std::string verdict;  // PASS, PASS-vacuous, CAPPED or FAIL
};

struct VerificationReport {
    std::string id;
    std::map<std::string, std::string> params;
    std::vector<Cell> cells;
    Summary summary;
    std::map<std::string, std::string> fingerprint;
};

/// Exact evaluation against a stored expansion.
VerificationReport check(const QSeries& series, const CongruenceSpec& spec, int parallelism = 1);
/// Evaluation from a source with precision N; residue arithmetic mod p^e when the source offers it.
VerificationReport check(const SeriesSource& source, const CongruenceSpec& spec, long N, int parallelism = 1);

/// Recounts the summary from the cells; theorem-tagged failures counted separately.
void summarize(VerificationReport& r, Tag tag);
/// Concatenates reports in sorted cell order.
VerificationReport merge(const std::string& id, std::vector<VerificationReport> parts);

std::string to_json(const VerificationReport& r);
/// Throws ParseError.
VerificationReport report_from_json(const std::string& text);

/// Minimal observed - required over evaluated cells. finite is false when every cell is a lower bound.
struct Sharpness {
    bool finite = false;
    long min_slack = 0;
    Cell witness;
};
Sharpness sharpness_probe(const VerificationReport& r);
Sharpness sharpness_probe(const QSeries& series, const CongruenceSpec& spec);

/// Valuation of sum c_i a_i at p (or at the ideal side), a_i rational and p-integral.
struct Valuation {
    long value = 0;
    bool exact = true;
    bool infinite = false;
};
Valuation combination_valuation(const std::vector<Rational>& a, const std::vector<Coeff>& c, long p,
                                std::optional<IdealSide> side, long budget);

// ---- stock filters --------------------------------------------------------------

PrimeFilter min_prime(long bound);
PrimeFilter coprime_to(long m, const std::string& name);
/// v_p(j) = 0 = v_p(j - 1728).
PrimeFilter j_valuation(const Rational& j);
PrimeFilter kronecker_is(long D, int value, const std::string& name);
PrimeFilter custom_filter(std::string name, std::function<std::optional<std::string>(long)> f);

}  // namespace asd::harness
