#pragma once
// Complete enumeration of integer points in a rational ellipsoid:
//   { x in Z^n : (x - h)^T A (x - h) <= B }, optionally with x >= 0.
// A must be symmetric positive definite. Exact rational LDL^T decomposition;
// each coordinate is scanned outward from the real center, so no point is
// missed and no floating point is involved.

#include "rational.hpp"

#include <functional>
#include <vector>

namespace twistchar {

using RationalMatrix = std::vector<std::vector<Rational>>;

// emit receives the point and the exact form value (x-h)^T A (x-h)
void enumerate_ellipsoid(const RationalMatrix& A,
                         const std::vector<Rational>& center,
                         const Rational& bound,
                         bool nonneg,
                         const std::function<void(const std::vector<long long>&, const Rational&)>& emit);

// convenience: h = 0
void enumerate_ellipsoid(const RationalMatrix& A,
                         const Rational& bound,
                         bool nonneg,
                         const std::function<void(const std::vector<long long>&, const Rational&)>& emit);

// exact Gaussian elimination for A x = b; throws on singular systems
std::vector<Rational> solve_linear(RationalMatrix A, std::vector<Rational> b);

}  // namespace twistchar
