#pragma once

#include "asd/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asd::harness {

/// Object and grid overrides; unset fields fall back to each entry's defaults.
struct Params {
    std::optional<int> k;
    std::optional<Rational> c;
    std::optional<std::string> curve;
    std::optional<long> D;
    std::optional<int> r;
    std::optional<long> p_lo, p_hi;
    std::optional<long> nmax;
    std::optional<int> lmax;
    std::optional<long> prec;
};

struct RegistryItem {
    CongruenceSpec spec;
    SeriesSource source;
    long N = 0;
};

/// Every id, in registry order.
const std::vector<std::string>& registry_ids();
bool registry_has(const std::string& id);
/// One-line description of the statement behind an id. Throws UnknownId.
std::string registry_summary(const std::string& id);
/// Specs with their series sources. Throws UnknownId, DomainError.
std::vector<RegistryItem> registry_build(const std::string& id, const Params& params = {});

/// Checks every variant of one id and merges the cells.
VerificationReport run(const std::string& id, const Params& params = {}, int parallelism = 1);
/// Deduplicated, sorted ids; serial and parallel runs give identical reports.
VerificationReport sweep(const std::vector<std::string>& ids, const Params& params = {}, int parallelism = 1);

// ---- series sources shared with the CLI -------------------------------------------

/// E_k / (j - c)^r.
SeriesSource source_f(int k, const Rational& c, int r);
/// sum_i A_i E_k / (j - jD)^i.
SeriesSource source_combination(int k, const Integer& jD, const std::vector<Integer>& A, const std::string& name);
/// G^{(r)}_{k,D} from cm::construct_g.
SeriesSource source_g(int k, long D, int r);
/// Scaled trace of the CM values of G_k (exact through the identification with G^{(k/2)} when it holds).
SeriesSource source_tilde_g(int k, long D);

/// Pole orders r allowed for G^{(r)}_{k,D}: 1..k-1, or the elliptic-point profile for D in {-3, -4}.
std::vector<int> valid_orders(int k, long D);

}  // namespace asd::harness
