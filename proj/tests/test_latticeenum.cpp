#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latticeenum.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace twistchar;

namespace {

Rational form_value(const RationalMatrix& A, const std::vector<Rational>& h,
                    const std::vector<long long>& x) {
    Rational v(0);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            v = v + A[i][j] * (Rational(x[i]) - h[i]) * (Rational(x[j]) - h[j]);
    return v;
}

// oracle: scan an explicit box; the box must provably contain the ellipsoid.
// For A PD with min diagonal-after-LDL d, every solution has |x_i - h_i| bounded,
// here we just take a generous fixed box and check the engine found exactly the
// in-ball subset.
std::set<std::vector<long long>> brute_force(const RationalMatrix& A,
                                             const std::vector<Rational>& h, Rational bound,
                                             bool nonneg, long long box) {
    std::set<std::vector<long long>> out;
    size_t n = A.size();
    std::vector<long long> x(n, -box);
    if (nonneg)
        for (auto& e : x) e = 0;
    while (true) {
        if (form_value(A, h, x) <= bound) out.insert(x);
        size_t i = 0;
        for (; i < n; ++i) {
            if (x[i] < box) {
                ++x[i];
                break;
            }
            x[i] = nonneg ? 0 : -box;
        }
        if (i == n) break;
    }
    if (n == 0 && Rational(0) <= bound) out.insert({});
    return out;
}

RationalMatrix random_pd(std::mt19937& rng, int n) {
    // A = M^T M + I with small random integer M is positive definite
    std::uniform_int_distribution<int> d(-2, 2);
    std::vector<std::vector<long long>> M(n, std::vector<long long>(n));
    for (auto& row : M)
        for (auto& e : row) e = d(rng);
    RationalMatrix A(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int t = 0; t < n; ++t) s += M[t][i] * M[t][j];
            A[i][j] = Rational(s + (i == j ? 1 : 0));
        }
    return A;
}

}  // namespace

TEST_CASE("rejects bad forms") {
    RationalMatrix nonsym = {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(enumerate_ellipsoid(nonsym, Rational(1), false, [](auto&&, auto&&) {}),
                    std::invalid_argument);
    RationalMatrix indef = {{Rational(1), Rational(2)}, {Rational(2), Rational(1)}};
    CHECK_THROWS_AS(enumerate_ellipsoid(indef, Rational(1), false, [](auto&&, auto&&) {}),
                    std::invalid_argument);
    RationalMatrix singular = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(enumerate_ellipsoid(singular, Rational(1), false, [](auto&&, auto&&) {}),
                    std::invalid_argument);
}

TEST_CASE("zero-dimensional form emits the empty point") {
    int count = 0;
    enumerate_ellipsoid(RationalMatrix{}, Rational(0), false, [&](auto&& x, auto&& v) {
        CHECK(x.empty());
        CHECK(v == Rational(0));
        ++count;
    });
    CHECK(count == 1);
    enumerate_ellipsoid(RationalMatrix{}, Rational(-1), false, [&](auto&&, auto&&) { ++count; });
    CHECK(count == 1);  // negative bound: nothing
}

TEST_CASE("unit form enumerates the interval") {
    RationalMatrix A = {{Rational(1)}};
    std::set<std::vector<long long>> seen;
    enumerate_ellipsoid(A, Rational(4), false,
                        [&](auto&& x, auto&& v) {
                            CHECK(v == Rational(x[0] * x[0]));
                            seen.insert(x);
                        });
    CHECK(seen == std::set<std::vector<long long>>{{-2}, {-1}, {0}, {1}, {2}});
    seen.clear();
    enumerate_ellipsoid(A, Rational(4), true, [&](auto&& x, auto&&) { seen.insert(x); });
    CHECK(seen == std::set<std::vector<long long>>{{0}, {1}, {2}});
}

TEST_CASE("matches brute force on random forms") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> dim(1, 4), bnum(0, 30), hnum(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        int n = dim(rng);
        RationalMatrix A = random_pd(rng, n);
        Rational bound(bnum(rng), 2);
        std::vector<Rational> h(n, Rational(0));
        for (auto& e : h) e = Rational(hnum(rng), 2);
        bool nonneg = trial % 2 == 0;
        std::set<std::vector<long long>> got;
        enumerate_ellipsoid(A, h, bound, nonneg, [&](auto&& x, auto&& v) {
            CHECK(v == form_value(A, h, x));
            CHECK(v <= bound);
            if (nonneg)
                for (auto e : x) CHECK(e >= 0);
            CHECK(got.insert(x).second);  // no duplicates
        });
        CHECK(got == brute_force(A, h, bound, nonneg, 12));
    }
}

TEST_CASE("nonneg mode with far-negative center finds the origin side") {
    RationalMatrix A = {{Rational(1)}};
    std::vector<Rational> h = {Rational(-5, 2)};
    std::set<std::vector<long long>> seen;
    enumerate_ellipsoid(A, h, Rational(13, 2), true,
                        [&](auto&& x, auto&&) { seen.insert(x); });
    // (x + 5/2)^2 <= 13/2: x = 0 gives 25/4 <= 26/4, x = -1,... excluded by nonneg
    CHECK(seen == std::set<std::vector<long long>>{{0}});
}
