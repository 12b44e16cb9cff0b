#pragma once
// Truncated multivariate series: exact rational q-exponents, integer
// y-exponents (one slot per folded color), exact int64 coefficients.
// Terms are held in a map whose key order (ascending q, then lexicographic y)
// is the canonical serialization order.

#include "rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace twistchar {

struct TermKey {
    Rational q;
    std::vector<long long> y;

    bool operator<(const TermKey& o) const {
        if (q != o.q) return q < o.q;
        return y < o.y;
    }
    bool operator==(const TermKey& o) const { return q == o.q && y == o.y; }
};

class MultiSeries {
public:
    // declared_denom D > 0 asserts q*D integral for every stored term (D = 2rk
    // in the character use cases); 0 disables the check.
    MultiSeries(int num_colors, const Rational& truncation, long long declared_denom = 0);

    int num_colors() const { return colors_; }
    const Rational& truncation() const { return trunc_; }
    const std::map<TermKey, long long>& terms() const { return terms_; }

    // adds c * q^qexp * y^yexp; silently drops terms beyond the truncation,
    // erases entries that cancel to zero
    void add(const Rational& qexp, const std::vector<long long>& yexp, long long c);
    // adds scale * q^qshift * y^yshift * src (term by term)
    void add_scaled(const MultiSeries& src, const Rational& qshift,
                    const std::vector<long long>& yshift, long long scale = 1);

    long long coeff(const Rational& qexp, const std::vector<long long>& yexp) const;

    MultiSeries mul(const MultiSeries& other) const;

    bool operator==(const MultiSeries& o) const {
        return colors_ == o.colors_ && trunc_ == o.trunc_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiSeries& o) const { return !(*this == o); }

    // true and fills the first differing term when the two series disagree
    struct Mismatch {
        Rational q;
        std::vector<long long> y;
        long long lhs = 0, rhs = 0;
    };
    static bool first_mismatch(const MultiSeries& lhs, const MultiSeries& rhs, Mismatch& out);

    bool min_q_exponent(Rational& out) const;  // false when empty

    std::string to_json() const;
    std::string to_csv() const;
    std::string to_pretty() const;
    static MultiSeries from_json(const std::string& text);

    static MultiSeries one(int num_colors, const Rational& truncation, long long declared_denom = 0);

private:
    int colors_;
    Rational trunc_;
    long long declared_denom_;
    std::map<TermKey, long long> terms_;
};

// 1 / prod_{j=1..p} (1 - q^{j*rho}) truncated at N, with num_colors zero-y slots
MultiSeries inv_pochhammer(const Rational& rho, long long p, const Rational& N, int num_colors);

// 1 / (1 - q^m)^mult truncated at N
MultiSeries inv_eta_factor(const Rational& m, long long mult, const Rational& N, int num_colors);

}  // namespace twistchar
