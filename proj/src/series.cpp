#include "series.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace twistchar {

MultiSeries::MultiSeries(int num_colors, const Rational& truncation, long long declared_denom)
    : colors_(num_colors), trunc_(truncation), declared_denom_(declared_denom) {
    if (num_colors < 0) throw std::invalid_argument("MultiSeries: negative color count");
    if (truncation < Rational(0)) throw std::invalid_argument("MultiSeries: negative truncation");
    if (declared_denom < 0) throw std::invalid_argument("MultiSeries: negative exponent denominator bound");
}

MultiSeries MultiSeries::one(int num_colors, const Rational& truncation, long long declared_denom) {
    MultiSeries s(num_colors, truncation, declared_denom);
    s.add(Rational(0), std::vector<long long>(num_colors, 0), 1);
    return s;
}

void MultiSeries::add(const Rational& qexp, const std::vector<long long>& yexp, long long c) {
    if (c == 0) return;
    if (qexp > trunc_) return;
    if (static_cast<int>(yexp.size()) != colors_)
        throw std::invalid_argument("MultiSeries::add: y-exponent arity mismatch");
    if (declared_denom_ > 0 && !(qexp * Rational(declared_denom_)).is_integer())
        throw std::logic_error("MultiSeries::add: q-exponent denominator exceeds declared bound");
    TermKey key{qexp, yexp};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second = checked_add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiSeries::add_scaled(const MultiSeries& src, const Rational& qshift,
                             const std::vector<long long>& yshift, long long scale) {
    if (src.colors_ != colors_)
        throw std::invalid_argument("MultiSeries::add_scaled: color count mismatch");
    if (static_cast<int>(yshift.size()) != colors_)
        throw std::invalid_argument("MultiSeries::add_scaled: y-shift arity mismatch");
    std::vector<long long> y(colors_);
    for (const auto& [key, c] : src.terms_) {
        Rational q = key.q + qshift;
        if (q > trunc_) break;  // src keys ascend in q
        for (int i = 0; i < colors_; ++i) y[i] = checked_add(key.y[i], yshift[i]);
        add(q, y, checked_mul(c, scale));
    }
}

long long MultiSeries::coeff(const Rational& qexp, const std::vector<long long>& yexp) const {
    auto it = terms_.find(TermKey{qexp, yexp});
    return it == terms_.end() ? 0 : it->second;
}

MultiSeries MultiSeries::mul(const MultiSeries& other) const {
    if (colors_ != other.colors_)
        throw std::invalid_argument("MultiSeries::mul: color count mismatch");
    Rational n = trunc_ < other.trunc_ ? trunc_ : other.trunc_;
    long long dd = declared_denom_ == other.declared_denom_ ? declared_denom_ : 0;
    MultiSeries out(colors_, n, dd);
    std::vector<long long> y(colors_);
    for (const auto& [ka, ca] : terms_) {
        if (ka.q > n) break;
        for (const auto& [kb, cb] : other.terms_) {
            Rational q = ka.q + kb.q;
            if (q > n) break;  // other's keys ascend in q
            for (int i = 0; i < colors_; ++i) y[i] = checked_add(ka.y[i], kb.y[i]);
            out.add(q, y, checked_mul(ca, cb));
        }
    }
    return out;
}

bool MultiSeries::first_mismatch(const MultiSeries& lhs, const MultiSeries& rhs, Mismatch& out) {
    auto a = lhs.terms_.begin();
    auto b = rhs.terms_.begin();
    while (a != lhs.terms_.end() || b != rhs.terms_.end()) {
        if (b == rhs.terms_.end() || (a != lhs.terms_.end() && a->first < b->first)) {
            out = Mismatch{a->first.q, a->first.y, a->second, 0};
            return true;
        }
        if (a == lhs.terms_.end() || b->first < a->first) {
            out = Mismatch{b->first.q, b->first.y, 0, b->second};
            return true;
        }
        if (a->second != b->second) {
            out = Mismatch{a->first.q, a->first.y, a->second, b->second};
            return true;
        }
        ++a;
        ++b;
    }
    return false;
}

bool MultiSeries::min_q_exponent(Rational& out) const {
    if (terms_.empty()) return false;
    out = terms_.begin()->first.q;
    return true;
}

std::string MultiSeries::to_json() const {
    std::ostringstream os;
    os << "{\"schema_version\":1,\"truncation\":\"" << trunc_.str()
       << "\",\"num_colors\":" << colors_ << ",\"terms\":[";
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << ",";
        first = false;
        os << "{\"q\":\"" << key.q.str() << "\",\"y\":[";
        for (size_t i = 0; i < key.y.size(); ++i) {
            if (i) os << ",";
            os << key.y[i];
        }
        os << "],\"c\":" << c << "}";
    }
    os << "]}";
    return os.str();
}

std::string MultiSeries::to_csv() const {
    std::ostringstream os;
    os << "q";
    for (int i = 1; i <= colors_; ++i) os << ",y_" << i;
    os << ",coeff\n";
    for (const auto& [key, c] : terms_) {
        os << key.q.str();
        for (long long e : key.y) os << "," << e;
        os << "," << c << "\n";
    }
    return os.str();
}

std::string MultiSeries::to_pretty() const {
    std::ostringstream os;
    os << "truncation q^" << trunc_.str() << ", " << terms_.size() << " terms\n";
    for (const auto& [key, c] : terms_) {
        os << "  " << c << " * q^" << key.q.str();
        for (int i = 0; i < colors_; ++i) {
            if (key.y[i] == 0) continue;
            os << " * y" << (i + 1);
            if (key.y[i] != 1) os << "^" << key.y[i];
        }
        os << "\n";
    }
    return os.str();
}

MultiSeries MultiSeries::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("truncation") || !j.contains("terms"))
        throw std::invalid_argument("MultiSeries::from_json: missing fields");
    int colors = j.value("num_colors", -1);
    if (colors < 0) {
        colors = 0;
        if (!j["terms"].empty()) colors = static_cast<int>(j["terms"][0]["y"].size());
    }
    MultiSeries s(colors, Rational::parse(j["truncation"].get<std::string>()));
    for (const auto& t : j["terms"]) {
        std::vector<long long> y = t["y"].get<std::vector<long long>>();
        s.add(Rational::parse(t["q"].get<std::string>()), y, t["c"].get<long long>());
    }
    return s;
}

MultiSeries inv_pochhammer(const Rational& rho, long long p, const Rational& N, int num_colors) {
    if (!(rho > Rational(0))) throw std::invalid_argument("inv_pochhammer: rho must be positive");
    if (p < 0) throw std::invalid_argument("inv_pochhammer: negative length");
    MultiSeries out = MultiSeries::one(num_colors, N);
    std::vector<long long> y0(num_colors, 0);
    for (long long j = 1; j <= p; ++j) {
        Rational step = rho * Rational(j);
        if (step > N) break;  // remaining factors are 1 up to the truncation
        MultiSeries factor(num_colors, N);
        for (Rational e(0); e <= N; e += step) factor.add(e, y0, 1);
        out = out.mul(factor);
    }
    return out;
}

MultiSeries inv_eta_factor(const Rational& m, long long mult, const Rational& N, int num_colors) {
    if (!(m > Rational(0))) throw std::invalid_argument("inv_eta_factor: mode must be positive");
    if (mult < 0) throw std::invalid_argument("inv_eta_factor: negative multiplicity");
    // 1/(1-q^m)^mult = sum_j binom(j+mult-1, mult-1) q^{jm}
    MultiSeries out(num_colors, N);
    std::vector<long long> y0(num_colors, 0);
    long long coeff = 1;
    long long j = 0;
    for (Rational e(0); e <= N; e += m, ++j) {
        if (mult == 0 && j > 0) break;
        out.add(e, y0, coeff);
        // binom(j+mult, mult-1-ish) update: c_{j+1} = c_j * (j+mult) / (j+1)
        coeff = checked_i64(static_cast<__int128>(coeff) * (j + mult) / (j + 1), "inv_eta_factor");
    }
    return out;
}

}  // namespace twistchar
