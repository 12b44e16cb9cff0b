#include "latticeenum.hpp"

#include <stdexcept>

namespace twistchar {

namespace {

struct Decomp {
    // Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2 with d[i] > 0
    std::vector<Rational> d;
    RationalMatrix u;
};

Decomp ldl(const RationalMatrix& A) {
    size_t n = A.size();
    RationalMatrix m = A;
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("enumerate_ellipsoid: non-square matrix");
        for (size_t j = i + 1; j < n; ++j)
            if (A[i][j] != A[j][i]) throw std::invalid_argument("enumerate_ellipsoid: non-symmetric matrix");
    }
    Decomp dec;
    dec.d.assign(n, Rational(0));
    dec.u.assign(n, std::vector<Rational>(n, Rational(0)));
    // symmetric elimination; only the upper triangle of m is maintained
    for (size_t i = 0; i < n; ++i) {
        dec.d[i] = m[i][i];
        if (!(dec.d[i] > Rational(0)))
            throw std::invalid_argument("enumerate_ellipsoid: matrix not positive definite");
        for (size_t j = i + 1; j < n; ++j) dec.u[i][j] = m[i][j] / dec.d[i];
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j; k < n; ++k)
                m[j][k] -= dec.d[i] * dec.u[i][j] * dec.u[i][k];
    }
    return dec;
}

struct Scanner {
    const Decomp& dec;
    const std::vector<Rational>& h;
    bool nonneg;
    const std::function<void(const std::vector<long long>&, const Rational&)>& emit;
    std::vector<long long> x;
    size_t n;
    Rational total_bound;

    // level index counts down; rem is the budget left for coordinates 0..i
    void descend(size_t i_plus_1, const Rational& rem) {
        if (i_plus_1 == 0) {
            emit(x, total_bound - rem);
            return;
        }
        size_t i = i_plus_1 - 1;
        // center of x_i given the already fixed x_{i+1..n-1}
        Rational c = h[i];
        for (size_t j = i + 1; j < n; ++j)
            c -= dec.u[i][j] * (Rational(x[j]) - h[j]);
        long long base = c.floor();
        // form value grows monotonically with |t - c| in each direction
        long long up_start = base + 1;
        if (nonneg && up_start < 0) up_start = 0;
        for (long long t = up_start;; ++t) {
            Rational dv = Rational(t) - c;
            Rational val = dec.d[i] * dv * dv;
            if (val > rem) break;
            x[i] = t;
            descend(i, rem - val);
        }
        for (long long t = base; !(nonneg && t < 0) && t < up_start; --t) {
            Rational dv = Rational(t) - c;
            Rational val = dec.d[i] * dv * dv;
            if (val > rem) break;
            x[i] = t;
            descend(i, rem - val);
        }
    }
};

}  // namespace

void enumerate_ellipsoid(const RationalMatrix& A,
                         const std::vector<Rational>& center,
                         const Rational& bound,
                         bool nonneg,
                         const std::function<void(const std::vector<long long>&, const Rational&)>& emit) {
    size_t n = A.size();
    if (center.size() != n) throw std::invalid_argument("enumerate_ellipsoid: center arity mismatch");
    if (bound < Rational(0)) return;
    if (n == 0) {
        emit({}, Rational(0));
        return;
    }
    Decomp dec = ldl(A);
    Scanner s{dec, center, nonneg, emit, std::vector<long long>(n, 0), n, bound};
    s.descend(n, bound);
}

void enumerate_ellipsoid(const RationalMatrix& A,
                         const Rational& bound,
                         bool nonneg,
                         const std::function<void(const std::vector<long long>&, const Rational&)>& emit) {
    enumerate_ellipsoid(A, std::vector<Rational>(A.size(), Rational(0)), bound, nonneg, emit);
}

std::vector<Rational> solve_linear(RationalMatrix A, std::vector<Rational> b) {
    size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("solve_linear: arity mismatch");
    for (size_t col = 0; col < n; ++col) {
        if (A[col].size() != n) throw std::invalid_argument("solve_linear: non-square matrix");
        size_t piv = col;
        while (piv < n && A[piv][col] == Rational(0)) ++piv;
        if (piv == n) throw std::invalid_argument("solve_linear: singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col] == Rational(0)) continue;
            Rational f = A[row][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[row][j] = A[row][j] - f * A[col][j];
            b[row] = b[row] - f * b[col];
        }
    }
    std::vector<Rational> x(n, Rational(0));
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

}  // namespace twistchar
