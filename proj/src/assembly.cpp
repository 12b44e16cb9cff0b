#include "assembly.hpp"

#include "fermionic.hpp"
#include "latticeenum.hpp"
#include "qp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistchar {

MultiSeries fock_char(const FoldedData& folded, const Rational& N) {
    if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
    MultiSeries out = MultiSeries::one(folded.l, N);
    for (int i = 0; i < folded.l; ++i) {
        long long tmax = (N / folded.rho[(size_t)i]).floor();
        for (long long t = 1; t <= tmax; ++t)
            out = out.mul(inv_eta_factor(Rational(t) * folded.rho[(size_t)i], 1, N, folded.l));
    }
    return out;
}

TranslateShift translate_shift(const std::vector<long long>& mu,
                               const std::vector<long long>& lam, int k,
                               const FoldedData& folded, int sign) {
    if ((int)mu.size() != folded.l || (int)lam.size() != folded.l)
        throw std::invalid_argument("weight arity mismatch");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    TranslateShift out;
    out.weight.resize((size_t)folded.l);
    for (int i = 0; i < folded.l; ++i)
        out.weight[(size_t)i] = lam[(size_t)i] + (long long)k * mu[(size_t)i];
    out.energy_delta =
        Rational(sign) * (folded.ip(mu, lam) + Rational(k) * folded.ip(mu, mu) / Rational(2));
    return out;
}

namespace {

// The assembled character before the oscillator factor: for each lattice
// translate mu, the admissible charge counts (charges <= k-1) contribute
// q^{min-form + sign*(<mu,w> + (k/2)<mu,mu>)} y^{w + k*mu} / pochhammers.
// With sign +1 every exponent is >= <mu,mu>/2, which makes the ball
// <mu,mu> <= 2*(N + slack) complete; strict mode enforces that floor.
MultiSeries translated_sum(const FoldedData& folded, int k, const Rational& N, long long slack,
                           int sign, bool strict) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
    if (slack < 0) throw std::invalid_argument("ball slack must be >= 0");
    int l = folded.l;
    int S = k - 1;
    size_t dim = (size_t)l * (size_t)S;

    RationalMatrix gram((size_t)l, std::vector<Rational>((size_t)l, Rational(0)));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) gram[(size_t)i][(size_t)j] = folded.gram0[(size_t)i][(size_t)j];

    auto idx = [&](int i, int s) { return (size_t)i * (size_t)S + (size_t)(s - 1); };
    RationalMatrix A(dim, std::vector<Rational>(dim, Rational(0)));
    for (int i = 0; i < l; ++i)
        for (int s = 1; s <= S; ++s)
            for (int j = 0; j < l; ++j)
                for (int t = 1; t <= S; ++t)
                    A[idx(i, s)][idx(j, t)] =
                        Rational(std::min(s, t)) * folded.gram0[(size_t)i][(size_t)j] / Rational(2);

    MultiSeries total(l, N);
    std::vector<std::vector<long long>> mus;
    enumerate_ellipsoid(gram, Rational(2) * (N + Rational(slack)), false,
                        [&](const std::vector<long long>& mu, const Rational&) {
                            mus.push_back(mu);
                        });

    for (const auto& mu : mus) {
        Rational mu2 = folded.ip(mu, mu);
        Rational c0 = Rational(k) * mu2 / Rational(2);
        std::vector<Rational> gmu((size_t)l, Rational(0));
        for (int j = 0; j < l; ++j)
            for (int i = 0; i < l; ++i)
                gmu[(size_t)j] = gmu[(size_t)j] +
                                 folded.gram0[(size_t)j][(size_t)i] * Rational(mu[(size_t)i]);

        auto emit_point = [&](const std::vector<long long>& x) {
            Rational form(0);
            for (size_t u = 0; u < dim; ++u)
                for (size_t v = 0; v < dim; ++v)
                    form = form + A[u][v] * Rational(x[u] * x[v]);
            std::vector<long long> w((size_t)l, 0);
            for (int j = 0; j < l; ++j)
                for (int t = 1; t <= S; ++t) w[(size_t)j] += (long long)t * x[idx(j, t)];
            Rational cross(0);
            for (int j = 0; j < l; ++j) cross = cross + gmu[(size_t)j] * Rational(w[(size_t)j]);
            Rational e = form + Rational(sign) * (cross + c0);
            if (e > N) throw std::logic_error("internal: translated term beyond the budget");
            if (strict && Rational(2) * e < mu2)
                throw std::logic_error("internal: assembled energy below the translation floor");
            MultiSeries term = MultiSeries::one(l, N - e);
            for (int i = 0; i < l; ++i)
                for (int s = 1; s <= S; ++s) {
                    long long p = x[idx(i, s)];
                    if (p > 0)
                        term = term.mul(inv_pochhammer(folded.rho[(size_t)i], p, N - e, l));
                }
            std::vector<long long> y((size_t)l, 0);
            for (int j = 0; j < l; ++j)
                y[(size_t)j] = w[(size_t)j] + (long long)k * mu[(size_t)j];
            total.add_scaled(term, e, y, 1);
        };

        if (dim == 0) {
            Rational e = Rational(sign) * c0;
            if (!(e > N)) emit_point({});
            continue;
        }
        // complete the square: the linear mu-coupling shifts the center
        std::vector<Rational> rhs(dim, Rational(0));
        for (int j = 0; j < l; ++j)
            for (int t = 1; t <= S; ++t)
                rhs[idx(j, t)] = Rational(-sign) * Rational(t) * gmu[(size_t)j] / Rational(2);
        std::vector<Rational> h = solve_linear(A, rhs);
        Rational hAh(0);
        for (size_t u = 0; u < dim; ++u) hAh = hAh + h[u] * rhs[u];
        Rational budget = N - Rational(sign) * c0 + hAh;
        enumerate_ellipsoid(A, h, budget, true,
                            [&](const std::vector<long long>& x, const Rational&) {
                                emit_point(x);
                            });
    }
    return total;
}

MultiSeries module_char_with_sign(const FoldedData& folded, int k, const Rational& N,
                                  long long slack, int sign, bool strict) {
    return translated_sum(folded, k, N, slack, sign, strict).mul(fock_char(folded, N));
}

FoldedData folded_of(const std::string& token) {
    auto [ambient, autom] = build_ambient(token);
    return fold(ambient, autom);
}

std::string describe_mismatch(const MultiSeries::Mismatch& mm) {
    std::ostringstream os;
    os << "q=" << mm.q.str() << " y=(";
    for (size_t i = 0; i < mm.y.size(); ++i) {
        if (i) os << ',';
        os << mm.y[i];
    }
    os << ") lhs=" << mm.lhs << " rhs=" << mm.rhs;
    return os.str();
}

}  // namespace

int calibrate_translate_sign() {
    static const int sign = [] {
        const char* tokens[] = {"A3^2", "D3^2", "E6^2", "D4^3"};
        Rational N(2);
        for (int s : {1, -1}) {
            bool ok = true;
            for (const char* token : tokens) {
                FoldedData folded = folded_of(token);
                if (module_char_with_sign(folded, 1, N, 0, s, false) !=
                    level1_char(folded, N)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return s;
        }
        throw std::runtime_error("translation energy sign calibration failed for both signs");
    }();
    return sign;
}

MultiSeries module_char_basis(const BasisCharParams& params) {
    FoldedData folded = folded_of(params.type_token);
    int sign = calibrate_translate_sign();
    MultiSeries out = module_char_with_sign(folded, params.level, params.truncation,
                                            params.ball_slack, sign, true);
    for (const auto& [key, c] : out.terms())
        if (c < 0 || key.q < Rational(0))
            throw std::logic_error("internal: module character with negative content");
    return out;
}

bool VerifyReport::all_pass() const {
    for (const auto& c : comparisons)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::to_json() const {
    std::ostringstream os;
    os << "{\"schema_version\":1,\"type\":\"" << type_token << "\",\"level\":" << level
       << ",\"truncation\":\"" << truncation.str() << "\",\"translate_sign\":" << translate_sign
       << ",\"all_pass\":" << (all_pass() ? "true" : "false") << ",\"comparisons\":[";
    for (size_t i = 0; i < comparisons.size(); ++i) {
        const auto& c = comparisons[i];
        if (i) os << ',';
        os << "{\"comparison\":\"" << c.comparison << "\",\"type\":\"" << type_token
           << "\",\"level\":" << level << ",\"truncation\":\"" << truncation.str()
           << "\",\"status\":\"" << (c.pass ? "PASS" : "FAIL") << '"';
        if (c.has_mismatch) {
            os << ",\"first_mismatch\":{\"q\":\"" << c.mismatch.q.str() << "\",\"y\":[";
            for (size_t j = 0; j < c.mismatch.y.size(); ++j) {
                if (j) os << ',';
                os << c.mismatch.y[j];
            }
            os << "],\"lhs\":" << c.mismatch.lhs << ",\"rhs\":" << c.mismatch.rhs << '}';
        }
        os << '}';
    }
    os << "]}";
    return os.str();
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : comparisons) {
        os << (c.pass ? "PASS" : "FAIL") << ' ' << c.comparison;
        if (!c.pass) os << "  " << c.detail;
        os << '\n';
    }
    return os.str();
}

VerifyReport verify(const BasisCharParams& params, const CacheOptions& cache) {
    FoldedData folded = folded_of(params.type_token);
    int k = params.level;
    const Rational& N = params.truncation;

    VerifyReport rep;
    rep.type_token = params.type_token;
    rep.level = k;
    rep.truncation = N;
    rep.translate_sign = calibrate_translate_sign();

    auto compare = [&](const std::string& name, const MultiSeries& lhs, const MultiSeries& rhs) {
        VerifyComparison c;
        c.comparison = name;
        MultiSeries::Mismatch mm;
        if (MultiSeries::first_mismatch(lhs, rhs, mm)) {
            c.pass = false;
            c.has_mismatch = true;
            c.mismatch = mm;
            c.detail = describe_mismatch(mm);
        }
        rep.comparisons.push_back(std::move(c));
    };

    if (folded.is_chain()) {
        compare("principal-enum-vs-formula", principal_char_enum(folded, k, N),
                principal_char_formula(folded, k, N));
        compare("parafermionic-enum-vs-formula", parafermionic_char_enum(folded, k, N),
                parafermionic_char_formula(folded, k, N));
    }

    MultiSeries module =
        module_char_with_sign(folded, k, N, params.ball_slack, rep.translate_sign, true);
    AffineGCM gcm = build_gcm(folded);
    long long depth = std::max<long long>(1, (N * Rational(folded.r)).ceil());
    WeightMultTable table = freudenthal_char_cached(gcm, k, depth, cache);
    MultiSeries oracle = weight_table_to_series(table, N);
    compare("module-vs-freudenthal", module, oracle);

    if (k == 1) {
        MultiSeries lvl1 = level1_char(folded, N);
        compare("module-vs-level1", module, lvl1);
        compare("freudenthal-vs-level1", oracle, lvl1);
    }

    MultiSeries bigger =
        module_char_with_sign(folded, k, N, params.ball_slack + 1, rep.translate_sign, true);
    compare("translation-ball-certified", module, bigger);
    return rep;
}

}  // namespace twistchar
