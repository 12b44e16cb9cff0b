#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folded.hpp"
#include "latticeenum.hpp"

#include <set>

using namespace twistchar;

namespace {

FoldedData make(const std::string& token) {
    auto [amb, aut] = build_ambient(token);
    return fold(amb, aut);
}

Rational ip_brute(const FoldedData& f, const std::vector<long long>& a,
                  const std::vector<long long>& b) {
    Rational v(0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) v = v + f.gram0[i][j] * Rational(a[i] * b[j]);
    return v;
}

}  // namespace

TEST_CASE("token parsing rejects malformed input") {
    for (const char* bad :
         {"", "A3", "A3^3", "A4^2", "B3^2", "E7^2", "E6^3", "D3^3", "D4^4", "A^2", "Ax^2",
          "untwisted:A3^2", "untwisted:B2", "untwisted:D2", "untwisted:E7", "D2^2", "A1^2"}) {
        CHECK_THROWS_AS(build_ambient(bad), std::invalid_argument);
    }
}

TEST_CASE("smallest rank-2 folding of the odd chain") {
    FoldedData f = make("A3^2");
    CHECK(f.l == 2);
    CHECK(f.r == 2);
    CHECK(f.gram0 ==
          RationalMatrix{{Rational(1), Rational(-1)}, {Rational(-1), Rational(2)}});
    CHECK(f.rho == std::vector<Rational>{Rational(1, 2), Rational(1)});
    CHECK(f.h_dims == std::vector<long long>{2, 1});
    CHECK(f.theta_fold == std::vector<long long>{1, 1});
    CHECK(f.is_chain());
    // null root norm: <b0,b0> with b0 = -theta_fold
    CHECK(ip_brute(f, f.theta_fold, f.theta_fold) == Rational(1));
}

TEST_CASE("general odd chain folding") {
    FoldedData f = make("A7^2");  // l = 4
    CHECK(f.l == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(f.gram0[i][i] == (i == 3 ? Rational(2) : Rational(1)));
    CHECK(f.gram0[0][1] == Rational(-1, 2));
    CHECK(f.gram0[1][2] == Rational(-1, 2));
    CHECK(f.gram0[2][3] == Rational(-1));
    CHECK(f.gram0[0][2] == Rational(0));
    CHECK(f.rho == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                         Rational(1)});
    CHECK(f.h_dims == std::vector<long long>{4, 3});
}

TEST_CASE("two-pronged tail foldings") {
    FoldedData f = make("D5^2");  // ambient D5, l = 4
    CHECK(f.l == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(f.gram0[i][i] == (i == 3 ? Rational(1) : Rational(2)));
    CHECK(f.gram0[2][3] == Rational(-1));
    CHECK(f.rho ==
          std::vector<Rational>{Rational(1), Rational(1), Rational(1), Rational(1, 2)});
    CHECK(f.h_dims == std::vector<long long>{4, 1});
    CHECK(f.theta_fold == std::vector<long long>{1, 1, 1, 1});
    CHECK(ip_brute(f, f.theta_fold, f.theta_fold) == Rational(1));

    FoldedData g = make("D3^2");
    CHECK(g.gram0 ==
          RationalMatrix{{Rational(2), Rational(-1)}, {Rational(-1), Rational(1)}});
    CHECK(g.theta_fold == std::vector<long long>{1, 1});
    CHECK(ip_brute(g, g.theta_fold, g.theta_fold) == Rational(1));
}

TEST_CASE("exceptional order-2 folding") {
    FoldedData f = make("E6^2");
    CHECK(f.l == 4);
    CHECK(f.gram0 == RationalMatrix{{Rational(1), Rational(-1, 2), Rational(0), Rational(0)},
                                    {Rational(-1, 2), Rational(1), Rational(-1), Rational(0)},
                                    {Rational(0), Rational(-1), Rational(2), Rational(-1)},
                                    {Rational(0), Rational(0), Rational(-1), Rational(2)}});
    CHECK(f.rho ==
          std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1), Rational(1)});
    CHECK(f.h_dims == std::vector<long long>{4, 2});
    CHECK(f.theta_fold == std::vector<long long>{2, 3, 2, 1});
    CHECK(ip_brute(f, f.theta_fold, f.theta_fold) == Rational(1));
}

TEST_CASE("order-3 folding") {
    FoldedData f = make("D4^3");
    CHECK(f.l == 2);
    CHECK(f.r == 3);
    CHECK(f.gram0 ==
          RationalMatrix{{Rational(2, 3), Rational(-1)}, {Rational(-1), Rational(2)}});
    CHECK(f.rho == std::vector<Rational>{Rational(1, 3), Rational(1)});
    CHECK(f.h_dims == std::vector<long long>{2, 1, 1});
    CHECK(f.theta_fold == std::vector<long long>{2, 1});
    CHECK(ip_brute(f, f.theta_fold, f.theta_fold) == Rational(2, 3));
}

TEST_CASE("identity folding keeps the ambient form") {
    FoldedData f = make("untwisted:A2");
    CHECK(f.l == 2);
    CHECK(f.r == 1);
    CHECK(f.gram0 ==
          RationalMatrix{{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}});
    CHECK(f.rho == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(f.h_dims == std::vector<long long>{2});
    CHECK(f.theta_fold == std::vector<long long>{1, 1});

    FoldedData d = make("untwisted:D4");
    CHECK(d.theta_fold == std::vector<long long>{1, 2, 1, 1});
    CHECK(ip_brute(d, d.theta_fold, d.theta_fold) == Rational(2));

    FoldedData e = make("untwisted:E6");
    CHECK(e.theta_fold == std::vector<long long>{1, 2, 3, 2, 2, 1});
    CHECK(ip_brute(e, e.theta_fold, e.theta_fold) == Rational(2));
}

TEST_CASE("folded form is the orbit average of the ambient form") {
    for (const char* tok : {"A3^2", "A5^2", "D3^2", "D5^2", "E6^2", "D4^3", "untwisted:A3"}) {
        auto [amb, aut] = build_ambient(tok);
        FoldedData f = fold(amb, aut);
        // push each color vector up to the ambient orbit sum and check
        // <x,y>_0 = (1/r) <orbit(x), rep(y)>_ambient, computed directly
        for (int i = 0; i < f.l; ++i)
            for (int j = 0; j < f.l; ++j) {
                Rational acc(0);
                int a = f.orbit_reps[i];
                for (int p = 0; p < aut.order; ++p) {
                    acc = acc + amb.gram[a][f.orbit_reps[j]];
                    a = aut.perm[a];
                }
                CHECK(f.gram0[i][j] == acc / Rational(aut.order));
            }
    }
}

TEST_CASE("theta series at small truncation") {
    FoldedData f = make("A3^2");
    MultiSeries th = theta_series(f, Rational(1, 2));
    CHECK(th.coeff(Rational(0), {0, 0}) == 1);
    CHECK(th.coeff(Rational(1, 2), {1, 0}) == 1);
    CHECK(th.coeff(Rational(1, 2), {-1, 0}) == 1);
    CHECK(th.coeff(Rational(1, 2), {1, 1}) == 1);
    CHECK(th.coeff(Rational(1, 2), {-1, -1}) == 1);
    CHECK(th.terms().size() == 5);

    FoldedData g = make("D4^3");
    MultiSeries tg = theta_series(g, Rational(1, 3));
    CHECK(tg.coeff(Rational(0), {0, 0}) == 1);
    // the six norm-2/3 vectors: +-(1,0), +-(1,1), +-(2,1)
    CHECK(tg.coeff(Rational(1, 3), {1, 0}) == 1);
    CHECK(tg.coeff(Rational(1, 3), {-1, 0}) == 1);
    CHECK(tg.coeff(Rational(1, 3), {1, 1}) == 1);
    CHECK(tg.coeff(Rational(1, 3), {-1, -1}) == 1);
    CHECK(tg.coeff(Rational(1, 3), {2, 1}) == 1);
    CHECK(tg.coeff(Rational(1, 3), {-2, -1}) == 1);
    CHECK(tg.terms().size() == 7);

    MultiSeries t0 = theta_series(g, Rational(0));
    CHECK(t0.terms().size() == 1);
}

TEST_CASE("theta series is symmetric under negation and matches brute force") {
    for (const char* tok : {"A3^2", "D3^2", "D4^3", "untwisted:A2"}) {
        FoldedData f = make(tok);
        Rational N(2);
        MultiSeries th = theta_series(f, N);
        std::set<std::vector<long long>> pts;
        for (const auto& [key, c] : th.terms()) {
            CHECK(c == 1);
            std::vector<long long> neg(key.y);
            for (auto& e : neg) e = -e;
            CHECK(th.coeff(key.q, neg) == 1);
            CHECK(key.q * Rational(2) == ip_brute(f, key.y, key.y));
            pts.insert(key.y);
        }
        // brute force over a box
        long long box = 6;
        std::vector<long long> x(f.l, -box);
        while (true) {
            if (ip_brute(f, x, x) <= N * Rational(2)) CHECK(pts.count(x) == 1);
            size_t i = 0;
            for (; i < (size_t)f.l; ++i) {
                if (x[i] < box) {
                    ++x[i];
                    break;
                }
                x[i] = -box;
            }
            if (i == (size_t)f.l) break;
        }
    }
}
