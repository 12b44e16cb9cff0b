#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "assembly.hpp"
#include "qp.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <set>

using namespace twistchar;

namespace {

FoldedData make(const std::string& token) {
    auto [amb, aut] = build_ambient(token);
    return fold(amb, aut);
}

long long q_slice_total(const MultiSeries& s, const Rational& q) {
    long long total = 0;
    for (const auto& [key, c] : s.terms())
        if (key.q == q) total += c;
    return total;
}

}  // namespace

TEST_CASE("oscillator character counts colored mode multisets") {
    FoldedData f = make("A3^2");
    MultiSeries fock = fock_char(f, Rational(1));
    CHECK(fock.coeff(Rational(0), {0, 0}) == 1);
    CHECK(fock.coeff(Rational(1, 2), {0, 0}) == 1);
    CHECK(fock.coeff(Rational(1), {0, 0}) == 3);

    FoldedData g = make("D4^3");
    MultiSeries fg = fock_char(g, Rational(2, 3));
    CHECK(fg.coeff(Rational(0), {0, 0}) == 1);
    CHECK(fg.coeff(Rational(1, 3), {0, 0}) == 1);
    CHECK(fg.coeff(Rational(2, 3), {0, 0}) == 2);

    CHECK(fock_char(make("E6^2"), Rational(0)) == MultiSeries::one(4, Rational(0)));
}

TEST_CASE("oscillator character equals the eigenspace mode product") {
    for (const char* tok : {"A3^2", "D3^2", "E6^2", "D4^3"}) {
        FoldedData f = make(tok);
        Rational N(12);
        MultiSeries expect = MultiSeries::one(f.l, N);
        for (long long j = 1; Rational(j) / Rational(f.r) <= N; ++j)
            expect = expect.mul(inv_eta_factor(Rational(j) / Rational(f.r),
                                               f.h_dims[(size_t)(j % f.r)], N, f.l));
        CAPTURE(tok);
        CHECK(fock_char(f, N) == expect);
    }
}

TEST_CASE("translation shifts weight and energy") {
    FoldedData f = make("A3^2");
    std::vector<long long> zero{0, 0}, b1{1, 0};

    TranslateShift t = translate_shift(zero, b1, 3, f);
    CHECK(t.weight == b1);
    CHECK(t.energy_delta == Rational(0));

    t = translate_shift(b1, zero, 1, f);
    CHECK(t.weight == b1);
    CHECK(t.energy_delta == Rational(1, 2));

    t = translate_shift(b1, b1, 2, f);
    CHECK(t.weight == std::vector<long long>{3, 0});
    CHECK(t.energy_delta == Rational(2));

    t = translate_shift(b1, b1, 2, f, -1);
    CHECK(t.energy_delta == Rational(-2));

    CHECK_THROWS_AS(translate_shift({1}, zero, 1, f), std::invalid_argument);
    CHECK_THROWS_AS(translate_shift(b1, zero, 1, f, 2), std::invalid_argument);
}

TEST_CASE("the energy shift sign is fixed by the level one modules") {
    CHECK(calibrate_translate_sign() == 1);
}

TEST_CASE("assembled module characters") {
    BasisCharParams p;
    p.type_token = "A3^2";
    p.level = 1;
    p.truncation = Rational(1);
    MultiSeries module = module_char_basis(p);
    CHECK(module.coeff(Rational(0), {0, 0}) == 1);
    CHECK(q_slice_total(module, Rational(1, 2)) == 5);

    for (const char* tok : {"A3^2", "D3^2", "D4^3"}) {
        BasisCharParams q;
        q.type_token = tok;
        q.level = 1;
        q.truncation = Rational(2);
        CAPTURE(tok);
        CHECK(module_char_basis(q) == level1_char(make(tok), Rational(2)));
    }
}

TEST_CASE("enlarging the translation ball does not change the character") {
    BasisCharParams p;
    p.type_token = "A3^2";
    p.level = 2;
    p.truncation = Rational(2);
    MultiSeries tight = module_char_basis(p);
    p.ball_slack = 1;
    CHECK(module_char_basis(p) == tight);
}

TEST_CASE("verify runs every applicable comparison and passes") {
    BasisCharParams p;
    p.type_token = "A3^2";
    p.level = 1;
    p.truncation = Rational(3);
    CacheOptions cache;
    cache.disabled = true;
    VerifyReport rep = verify(p, cache);
    CHECK(rep.all_pass());
    CHECK(rep.translate_sign == 1);

    std::set<std::string> names;
    for (const auto& c : rep.comparisons) names.insert(c.comparison);
    CHECK(names == std::set<std::string>{"principal-enum-vs-formula",
                                         "parafermionic-enum-vs-formula",
                                         "module-vs-freudenthal", "module-vs-level1",
                                         "freudenthal-vs-level1",
                                         "translation-ball-certified"});

    nlohmann::json doc = nlohmann::json::parse(rep.to_json());
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["type"] == "A3^2");
    CHECK(doc["level"] == 1);
    CHECK(doc["truncation"] == "3");
    CHECK(doc["all_pass"] == true);
    CHECK(doc["comparisons"].size() == rep.comparisons.size());
    for (const auto& c : doc["comparisons"]) {
        CHECK(c["status"] == "PASS");
        CHECK(c.contains("type"));
        CHECK(c.contains("level"));
        CHECK(c.contains("truncation"));
        CHECK_FALSE(c.contains("first_mismatch"));
    }
    for (const auto& c : rep.comparisons) {
        std::string line = "PASS " + c.comparison;
        CHECK(rep.to_text().find(line) != std::string::npos);
    }
}

TEST_CASE("verify skips the enumeration comparisons on branched diagrams") {
    BasisCharParams p;
    p.type_token = "untwisted:D4";
    p.level = 1;
    p.truncation = Rational(1);
    CacheOptions cache;
    cache.disabled = true;
    VerifyReport rep = verify(p, cache);
    CHECK(rep.all_pass());
    std::set<std::string> names;
    for (const auto& c : rep.comparisons) names.insert(c.comparison);
    CHECK(names.count("principal-enum-vs-formula") == 0);
    CHECK(names.count("parafermionic-enum-vs-formula") == 0);
    CHECK(names.count("module-vs-freudenthal") == 1);
    CHECK(names.count("module-vs-level1") == 1);
}

TEST_CASE("verify at level two uses the recursion oracle alone") {
    BasisCharParams p;
    p.type_token = "D4^3";
    p.level = 2;
    p.truncation = Rational(2);
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "twc_assembly_cache_test";
    fs::remove_all(dir);
    CacheOptions cache;
    cache.dir = dir.string();
    VerifyReport rep = verify(p, cache);
    CHECK(rep.all_pass());
    std::set<std::string> names;
    for (const auto& c : rep.comparisons) names.insert(c.comparison);
    CHECK(names.count("module-vs-level1") == 0);
    CHECK(names.count("module-vs-freudenthal") == 1);
    // the oracle table landed in the cache directory
    CHECK(cache_stat(cache.dir).files == 1);
    // a second run reuses it and reaches the same verdict
    CHECK(verify(p, cache).all_pass());
    CHECK(cache_stat(cache.dir).files == 1);
    fs::remove_all(dir);
}

TEST_CASE("mismatch reporting names the first differing coefficient") {
    FoldedData f = make("A3^2");
    MultiSeries a = principal_char_enum(f, 1, Rational(1));
    MultiSeries b = a;
    b.add(Rational(1, 2), {1, 0}, 1);  // corrupt one coefficient
    MultiSeries::Mismatch mm;
    REQUIRE(MultiSeries::first_mismatch(a, b, mm));
    CHECK(mm.q == Rational(1, 2));
    CHECK(mm.y == std::vector<long long>{1, 0});
    CHECK(mm.lhs == 1);
    CHECK(mm.rhs == 2);
}
