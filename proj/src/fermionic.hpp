#pragma once

#include "folded.hpp"
#include "latticeenum.hpp"
#include "series.hpp"

namespace twistchar {

// d[s-1][t-1] = min{s,t} - st/k for 1 <= s,t <= k-1; the inverse finite
// Cartan matrix of rank k-1
struct DMatrix {
    int k = 1;
    RationalMatrix d;
};

DMatrix d_matrix(int k);

// sum over charge-count matrices of q^{packed form} / pochhammers, weighted by
// the total charge per color
MultiSeries principal_char_formula(const FoldedData& folded, int k, const Rational& N);

// same sum over counts with charges <= k-1 and the conformal kernel
MultiSeries parafermionic_char_formula(const FoldedData& folded, int k, const Rational& N);

// test hook: arbitrary symmetric positive definite kernel of size (k-1)x(k-1)
MultiSeries parafermionic_char_formula_with(const FoldedData& folded, int k, const Rational& N,
                                            const RationalMatrix& kernel);

}  // namespace twistchar
