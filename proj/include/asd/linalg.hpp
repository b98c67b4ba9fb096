#pragma once

#include "asd/exactnum.hpp"

#include <vector>

namespace asd::linalg {

using Matrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<size_t> rref(Matrix& m);

/// Basis of the right kernel {x : m x = 0}.
std::vector<std::vector<Rational>> kernel(Matrix m);

/// Solves m x = b; throws NoSolution when inconsistent, NotUnique when the solution is not unique.
std::vector<Rational> solve(Matrix m, const std::vector<Rational>& b);

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
std::vector<Integer> primitive_integer(const std::vector<Rational>& v);

}  // namespace asd::linalg
