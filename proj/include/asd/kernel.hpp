#pragma once

#include "asd/exactnum.hpp"

#include <cstddef>
#include <vector>

namespace asd::kernel {

/// First `nout` coefficients of the product of two integer polynomials.
/// Uses Kronecker substitution into a single GMP multiplication above a small size threshold.
std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout);

/// Same, for residues in [0, m); the result is reduced into [0, m).
std::vector<Integer> mul_mod(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout,
                             const Integer& m);

/// Schoolbook product, used below the substitution threshold and by tests as an oracle.
std::vector<Integer> mul_schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b, size_t nout);

}  // namespace asd::kernel
