#include "fermionic.hpp"

#include "latticeenum.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace twistchar {

namespace {

MultiSeries fermionic_sum(const FoldedData& folded, int S,
                          const std::function<Rational(int, int)>& kernel, const Rational& N) {
    if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
    int l = folded.l;
    size_t dim = (size_t)l * (size_t)S;
    RationalMatrix A(dim, std::vector<Rational>(dim, Rational(0)));
    for (int i = 0; i < l; ++i)
        for (int s = 1; s <= S; ++s)
            for (int j = 0; j < l; ++j)
                for (int t = 1; t <= S; ++t)
                    A[(size_t)i * S + s - 1][(size_t)j * S + t - 1] =
                        kernel(s, t) * folded.gram0[i][j] / Rational(2);

    MultiSeries out(l, N);
    enumerate_ellipsoid(A, N, true, [&](const std::vector<long long>& P, const Rational& e0) {
        MultiSeries term = MultiSeries::one(l, N - e0);
        std::vector<long long> wt((size_t)l, 0);
        for (int i = 0; i < l; ++i)
            for (int s = 1; s <= S; ++s) {
                long long p = P[(size_t)i * S + s - 1];
                wt[(size_t)i] += s * p;
                if (p > 0) term = term.mul(inv_pochhammer(folded.rho[i], p, N - e0, l));
            }
        out.add_scaled(term, e0, wt, 1);
    });
    return out;
}

}  // namespace

DMatrix d_matrix(int k) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    DMatrix d;
    d.k = k;
    d.d.assign((size_t)k - 1, std::vector<Rational>((size_t)k - 1, Rational(0)));
    for (int s = 1; s < k; ++s)
        for (int t = 1; t < k; ++t)
            d.d[(size_t)s - 1][(size_t)t - 1] =
                Rational(std::min(s, t)) - Rational((long long)s * t, k);
    return d;
}

MultiSeries principal_char_formula(const FoldedData& folded, int k, const Rational& N) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    return fermionic_sum(
        folded, k, [](int s, int t) { return Rational(std::min(s, t)); }, N);
}

MultiSeries parafermionic_char_formula(const FoldedData& folded, int k, const Rational& N) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    return fermionic_sum(
        folded, k - 1,
        [k](int s, int t) { return Rational(std::min(s, t)) - Rational((long long)s * t, k); },
        N);
}

MultiSeries parafermionic_char_formula_with(const FoldedData& folded, int k, const Rational& N,
                                            const RationalMatrix& kernel) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    if (kernel.size() != (size_t)k - 1)
        throw std::invalid_argument("kernel size must be level minus one");
    for (const auto& row : kernel)
        if (row.size() != (size_t)k - 1)
            throw std::invalid_argument("kernel size must be level minus one");
    return fermionic_sum(
        folded, k - 1,
        [&kernel](int s, int t) { return kernel[(size_t)s - 1][(size_t)t - 1]; }, N);
}

}  // namespace twistchar
