#include "qp.hpp"

#include "latticeenum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistchar {

namespace {

void require_chain(const FoldedData& folded) {
    if (!folded.is_chain())
        throw std::invalid_argument("quasi-particle conditions need a chain diagram; type " +
                                    folded.type_token + " is not a chain");
}

// max_charge < 0 disables the upper bound check
void check_charge_structure(const ChargeType& ct, const FoldedData& folded,
                            long long max_charge) {
    if (ct.num_colors() != folded.l) throw std::invalid_argument("color count mismatch");
    for (int i = 0; i < ct.num_colors(); ++i) {
        const auto& lst = ct.charges[i];
        for (size_t j = 0; j < lst.size(); ++j) {
            if (lst[j] < 1) throw std::invalid_argument("charges must be >= 1");
            if (max_charge >= 0 && lst[j] > max_charge)
                throw std::invalid_argument("charge exceeds the allowed maximum");
            if (j > 0 && lst[j - 1] > lst[j])
                throw std::invalid_argument("charges must be stored weakly increasing");
        }
    }
}

// cap for particle p of color i with every other particle ignored: the
// per-particle bound plus the previous-color coupling
Rational particle_cap(const ChargeType& ct, const FoldedData& folded, int i, long long p) {
    long long n = ct.charge(i, p);
    Rational cap = Rational(-(2 * p - 1) * n) * folded.rho[i];
    if (i > 0) {
        Rational coupling(0);
        for (long long q = 1; q <= ct.count(i - 1); ++q)
            coupling = coupling + Rational(std::min(n, ct.charge(i - 1, q)));
        cap = cap - folded.gram0[i][i - 1] * coupling;
    }
    return cap;
}

// caps in particle order (index p-1); checks that chaining the gap condition
// through an equal-charge run reproduces the per-particle caps, and that each
// cap is an admissible mode itself
std::vector<std::vector<Rational>> caps_p_order(const ChargeType& ct, const FoldedData& folded) {
    std::vector<std::vector<Rational>> caps((size_t)ct.num_colors());
    for (int i = 0; i < ct.num_colors(); ++i) {
        long long r = ct.count(i);
        caps[i].reserve((size_t)r);
        for (long long p = 1; p <= r; ++p) {
            Rational cap = particle_cap(ct, folded, i, p);
            if ((cap / folded.rho[i]).den != 1)
                throw std::logic_error("internal: cap is not an admissible mode");
            if (p > 1 && ct.charge(i, p) == ct.charge(i, p - 1)) {
                Rational chained =
                    caps[i][(size_t)p - 2] - Rational(2 * ct.charge(i, p)) * folded.rho[i];
                if (!(chained == cap))
                    throw std::logic_error("internal: run chaining disagrees with caps");
            }
            caps[i].push_back(cap);
        }
    }
    return caps;
}

struct Run {
    int color;
    long long charge;
    long long length;
};

// weakly increasing offsets within each run (ascending particle index), each
// step costing rho[color]; total cost <= budget
void offsets_for_runs(const FoldedData& folded, const std::vector<Run>& runs,
                      const Rational& budget,
                      const std::function<void(const std::vector<std::vector<long long>>&,
                                               const Rational&)>& cb) {
    std::vector<std::vector<long long>> x(runs.size());
    for (size_t t = 0; t < runs.size(); ++t) x[t].assign((size_t)runs[t].length, 0);
    std::function<void(size_t, long long, long long, const Rational&)> rec =
        [&](size_t t, long long pos, long long minx, const Rational& rem) {
            if (t == runs.size()) {
                cb(x, budget - rem);
                return;
            }
            if (pos == runs[t].length) {
                rec(t + 1, 0, 0, rem);
                return;
            }
            Rational rho = folded.rho[runs[t].color];
            long long remaining = runs[t].length - pos;
            for (long long v = minx;; ++v) {
                if (!(rho * Rational(v * remaining) <= rem)) break;
                x[t][(size_t)pos] = v;
                rec(t, pos + 1, v, rem - rho * Rational(v));
            }
        };
    rec(0, 0, 0, budget);
}

enum class FormKind { Plain, Conformal };

void for_each_monomial(const FoldedData& folded, int k, const Rational& N, int charge_cap,
                       FormKind kind,
                       const std::function<void(const QPMonomial&, const Rational&)>& emit) {
    require_chain(folded);
    if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    if (charge_cap < 0 || charge_cap > k)
        throw std::invalid_argument("charge cap must lie between 0 and the level");
    int l = folded.l, S = charge_cap;
    size_t dim = (size_t)l * (size_t)S;
    RationalMatrix A(dim, std::vector<Rational>(dim, Rational(0)));
    for (int i = 0; i < l; ++i)
        for (int s = 1; s <= S; ++s)
            for (int j = 0; j < l; ++j)
                for (int t = 1; t <= S; ++t) {
                    Rational kern(std::min(s, t));
                    if (kind == FormKind::Conformal)
                        kern = kern - Rational((long long)s * t, k);
                    A[(size_t)i * S + s - 1][(size_t)j * S + t - 1] =
                        kern * folded.gram0[i][j] / Rational(2);
                }

    enumerate_ellipsoid(A, N, true, [&](const std::vector<long long>& flat, const Rational& e0) {
        PMatrix P;
        P.p.assign((size_t)l, std::vector<long long>((size_t)S, 0));
        for (int i = 0; i < l; ++i)
            for (int s = 1; s <= S; ++s) P.p[i][(size_t)s - 1] = flat[(size_t)i * S + s - 1];
        ChargeType ct = charge_type_of(P);
        EnergyCaps caps = max_energies(ct, folded);
        if (kind == FormKind::Plain && !(e0 == caps.min_total))
            throw std::logic_error("internal: form value disagrees with packed caps");
        if (kind == FormKind::Conformal && !(e0 == conformal_form(P, folded, k)))
            throw std::logic_error("internal: form value disagrees with the conformal form");

        std::vector<Run> runs;
        for (int i = 0; i < l; ++i)
            for (int s = 1; s <= S; ++s)
                if (P.p[i][(size_t)s - 1] > 0) runs.push_back({i, s, P.p[i][(size_t)s - 1]});

        offsets_for_runs(
            folded, runs, N - e0,
            [&](const std::vector<std::vector<long long>>& x, const Rational& off) {
                QPMonomial m;
                m.charge_type = ct;
                m.energies.assign((size_t)l, {});
                for (int i = 0; i < l; ++i)
                    m.energies[i].assign(ct.charges[i].size(), Rational(0));
                int cur_color = -1;
                size_t base = 0;
                for (size_t t = 0; t < runs.size(); ++t) {
                    const Run& run = runs[t];
                    if (run.color != cur_color) {
                        cur_color = run.color;
                        base = 0;
                    }
                    // stored index base+j corresponds to within-run particle
                    // index length-j counted from the run's front
                    for (long long j = 0; j < run.length; ++j)
                        m.energies[run.color][base + (size_t)j] =
                            caps.caps[run.color][base + (size_t)j] -
                            folded.rho[run.color] * Rational(x[t][(size_t)(run.length - 1 - j)]);
                    base += (size_t)run.length;
                }
                ValidityReport rep = validate(m, folded, k);
                if (!rep.valid)
                    throw std::logic_error("internal: enumerated an inadmissible monomial: " +
                                           rep.message);
                Rational graded = e0 + off;
                if (kind == FormKind::Plain) {
                    if (!(graded == m.total_energy()))
                        throw std::logic_error("internal: plain energy mismatch");
                } else {
                    if (!(graded == conformal_energy(m, folded, k)))
                        throw std::logic_error("internal: conformal energy mismatch");
                }
                emit(m, graded);
            });
    });
}

}  // namespace

std::vector<long long> ChargeType::color_type() const {
    std::vector<long long> r(charges.size(), 0);
    for (size_t i = 0; i < charges.size(); ++i)
        for (long long n : charges[i]) r[i] += n;
    return r;
}

Rational QPMonomial::total_energy() const {
    Rational tot(0);
    for (const auto& color : energies)
        for (const Rational& m : color) tot = tot - m;
    return tot;
}

std::string QPMonomial::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < charge_type.num_colors(); ++i) {
        if (i) os << ';';
        os << '[';
        for (size_t j = 0; j < charge_type.charges[i].size(); ++j) {
            if (j) os << ',';
            os << '(' << charge_type.charges[i][j] << ',' << energies[i][j].str() << ')';
        }
        os << ']';
    }
    return os.str();
}

QPMonomial QPMonomial::from_text(const std::string& text) {
    QPMonomial m;
    size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("monomial text: " + why + " near position " +
                                    std::to_string(pos));
    };
    while (true) {
        if (pos >= text.size() || text[pos] != '[') fail("expected '['");
        ++pos;
        std::vector<long long> ch;
        std::vector<Rational> en;
        if (pos < text.size() && text[pos] == ']') {
            ++pos;
        } else {
            while (true) {
                if (pos >= text.size() || text[pos] != '(') fail("expected '('");
                ++pos;
                size_t comma = text.find(',', pos);
                if (comma == std::string::npos) fail("expected ','");
                Rational n = Rational::parse(text.substr(pos, comma - pos));
                if (n.den != 1 || n.num < 1) fail("charge must be a positive integer");
                pos = comma + 1;
                size_t close = text.find(')', pos);
                if (close == std::string::npos) fail("expected ')'");
                en.push_back(Rational::parse(text.substr(pos, close - pos)));
                ch.push_back(n.num);
                pos = close + 1;
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && text[pos] == ']') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ']'");
            }
        }
        m.charge_type.charges.push_back(std::move(ch));
        m.energies.push_back(std::move(en));
        if (pos == text.size()) break;
        if (text[pos] != ';') fail("expected ';'");
        ++pos;
    }
    return m;
}

DualChargeType dual_charge(const ChargeType& ct, int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    DualChargeType d;
    d.counts.assign((size_t)ct.num_colors(), {});
    for (int i = 0; i < ct.num_colors(); ++i) {
        d.counts[i].assign((size_t)k, 0);
        const auto& lst = ct.charges[i];
        for (size_t j = 0; j < lst.size(); ++j) {
            long long n = lst[j];
            if (n < 1) throw std::invalid_argument("charges must be >= 1");
            if (n > k) throw std::invalid_argument("charge exceeds the level");
            if (j > 0 && lst[j - 1] > n)
                throw std::invalid_argument("charges must be stored weakly increasing");
            for (long long s = 1; s <= n; ++s) ++d.counts[i][(size_t)s - 1];
        }
    }
    return d;
}

ChargeType transpose(const DualChargeType& dct) {
    ChargeType ct;
    for (const auto& counts : dct.counts) {
        for (size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] < 0) throw std::invalid_argument("counts must be >= 0");
            if (s > 0 && counts[s - 1] < counts[s])
                throw std::invalid_argument("counts must be weakly decreasing");
        }
        std::vector<long long> lst;
        long long r1 = counts.empty() ? 0 : counts[0];
        for (long long p = r1; p >= 1; --p) {
            long long n = 0;
            for (long long c : counts)
                if (c >= p) ++n;
            lst.push_back(n);
        }
        ct.charges.push_back(std::move(lst));
    }
    return ct;
}

PMatrix p_matrix(const ChargeType& ct, int max_charge) {
    if (max_charge < 0) throw std::invalid_argument("max charge must be >= 0");
    PMatrix P;
    P.p.assign((size_t)ct.num_colors(), std::vector<long long>((size_t)max_charge, 0));
    for (int i = 0; i < ct.num_colors(); ++i)
        for (long long n : ct.charges[i]) {
            if (n < 1 || n > max_charge)
                throw std::invalid_argument("charge out of range for the count matrix");
            ++P.p[i][(size_t)n - 1];
        }
    return P;
}

ChargeType charge_type_of(const PMatrix& P) {
    ChargeType ct;
    for (const auto& row : P.p) {
        std::vector<long long> lst;
        for (size_t s = 0; s < row.size(); ++s) {
            if (row[s] < 0) throw std::invalid_argument("counts must be >= 0");
            lst.insert(lst.end(), (size_t)row[s], (long long)s + 1);
        }
        ct.charges.push_back(std::move(lst));
    }
    return ct;
}

ValidityReport validate(const QPMonomial& m, const FoldedData& folded, int k) {
    require_chain(folded);
    check_charge_structure(m.charge_type, folded, k);
    if (m.energies.size() != (size_t)m.charge_type.num_colors())
        throw std::invalid_argument("energies not aligned with charges");
    for (int i = 0; i < m.charge_type.num_colors(); ++i)
        if (m.energies[i].size() != m.charge_type.charges[i].size())
            throw std::invalid_argument("energies not aligned with charges");

    ValidityReport rep;
    auto violated = [&](int clause, int color, long long p, const std::string& msg) {
        rep.valid = false;
        rep.clause = clause;
        rep.color = color + 1;
        rep.particle = p;
        rep.message = msg;
    };
    for (int i = 0; i < folded.l && rep.valid; ++i)
        for (long long p = 1; p <= m.charge_type.count(i) && rep.valid; ++p)
            if ((m.energy(i, p) / folded.rho[i]).den != 1)
                violated(1, i, p,
                         "mode " + m.energy(i, p).str() + " of color " + std::to_string(i + 1) +
                             " particle " + std::to_string(p) + " is not a multiple of " +
                             folded.rho[i].str());
    for (int i = 0; i < folded.l && rep.valid; ++i)
        for (long long p = 1; p <= m.charge_type.count(i) && rep.valid; ++p) {
            Rational cap = particle_cap(m.charge_type, folded, i, p);
            if (!(m.energy(i, p) <= cap))
                violated(2, i, p,
                         "mode " + m.energy(i, p).str() + " of color " + std::to_string(i + 1) +
                             " particle " + std::to_string(p) + " exceeds its cap " + cap.str());
        }
    for (int i = 0; i < folded.l && rep.valid; ++i)
        for (long long p = 1; p + 1 <= m.charge_type.count(i) && rep.valid; ++p) {
            if (m.charge_type.charge(i, p + 1) != m.charge_type.charge(i, p)) continue;
            Rational gap = m.energy(i, p) -
                           Rational(2 * m.charge_type.charge(i, p)) * folded.rho[i];
            if (!(m.energy(i, p + 1) <= gap))
                violated(3, i, p + 1,
                         "mode " + m.energy(i, p + 1).str() + " of color " +
                             std::to_string(i + 1) + " particle " + std::to_string(p + 1) +
                             " is too close to particle " + std::to_string(p));
        }
    if (rep.valid) rep.message = "valid";
    return rep;
}

EnergyCaps max_energies(const ChargeType& ct, const FoldedData& folded) {
    require_chain(folded);
    check_charge_structure(ct, folded, -1);
    EnergyCaps out;
    std::vector<std::vector<Rational>> caps = caps_p_order(ct, folded);
    out.min_total = Rational(0);
    out.caps.assign((size_t)ct.num_colors(), {});
    for (int i = 0; i < ct.num_colors(); ++i) {
        for (const Rational& c : caps[i]) out.min_total = out.min_total - c;
        out.caps[i].assign(caps[i].rbegin(), caps[i].rend());
    }
    long long max_charge = 0;
    for (const auto& lst : ct.charges)
        for (long long n : lst) max_charge = std::max(max_charge, n);
    if (!(out.min_total == min_total_energy(p_matrix(ct, (int)max_charge), folded)))
        throw std::logic_error("internal: packed caps disagree with the quadratic form");
    return out;
}

Rational min_total_energy(const PMatrix& P, const FoldedData& folded) {
    if (P.num_colors() != folded.l) throw std::invalid_argument("color count mismatch");
    Rational v(0);
    int S = P.max_charge();
    for (int i = 0; i < folded.l; ++i)
        for (int j = 0; j < folded.l; ++j)
            for (int s = 1; s <= S; ++s)
                for (int t = 1; t <= S; ++t)
                    v = v + Rational(std::min(s, t)) * folded.gram0[i][j] *
                                Rational(P.p[i][(size_t)s - 1] * P.p[j][(size_t)t - 1]);
    return v / Rational(2);
}

Rational conformal_form(const PMatrix& P, const FoldedData& folded, int k) {
    if (P.num_colors() != folded.l) throw std::invalid_argument("color count mismatch");
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    Rational v(0);
    int S = P.max_charge();
    for (int i = 0; i < folded.l; ++i)
        for (int j = 0; j < folded.l; ++j)
            for (int s = 1; s <= S; ++s)
                for (int t = 1; t <= S; ++t)
                    v = v + (Rational(std::min(s, t)) - Rational((long long)s * t, k)) *
                                folded.gram0[i][j] *
                                Rational(P.p[i][(size_t)s - 1] * P.p[j][(size_t)t - 1]);
    return v / Rational(2);
}

void enumerate_basis(const FoldedData& folded, int k, const Rational& N, int charge_cap,
                     const std::function<void(const QPMonomial&, const Rational&)>& emit) {
    for_each_monomial(folded, k, N, charge_cap, FormKind::Plain, emit);
}

std::vector<QPMonomial> enumerate_basis_sorted(const FoldedData& folded, int k,
                                               const Rational& N, int charge_cap) {
    std::vector<std::pair<Rational, QPMonomial>> items;
    enumerate_basis(folded, k, N, charge_cap,
                    [&](const QPMonomial& m, const Rational& e) { items.emplace_back(e, m); });
    std::sort(items.begin(), items.end(),
              [](const std::pair<Rational, QPMonomial>& a,
                 const std::pair<Rational, QPMonomial>& b) {
                  if (a.first != b.first) return a.first < b.first;
                  if (a.second.charge_type != b.second.charge_type)
                      return a.second.charge_type < b.second.charge_type;
                  return a.second.energies < b.second.energies;
              });
    std::vector<QPMonomial> out;
    out.reserve(items.size());
    for (auto& it : items) out.push_back(std::move(it.second));
    return out;
}

MultiSeries principal_char_enum(const FoldedData& folded, int k, const Rational& N) {
    MultiSeries out(folded.l, N);
    for_each_monomial(folded, k, N, k, FormKind::Plain,
                      [&](const QPMonomial& m, const Rational& e) {
                          out.add(e, m.charge_type.color_type(), 1);
                      });
    return out;
}

Rational conformal_energy(const QPMonomial& m, const FoldedData& folded, int k,
                          bool* charge_at_level) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    check_charge_structure(m.charge_type, folded, k);
    if (charge_at_level) {
        *charge_at_level = false;
        for (const auto& lst : m.charge_type.charges)
            for (long long n : lst)
                if (n == k) *charge_at_level = true;
    }
    PMatrix P = p_matrix(m.charge_type, k);
    Rational shift(0);
    for (int i = 0; i < folded.l; ++i)
        for (int j = 0; j < folded.l; ++j)
            for (int s = 1; s <= k; ++s)
                for (int t = 1; t <= k; ++t)
                    shift = shift + Rational((long long)s * t, 2LL * k) * folded.gram0[i][j] *
                                        Rational(P.p[i][(size_t)s - 1] * P.p[j][(size_t)t - 1]);
    return m.total_energy() - shift;
}

MultiSeries parafermionic_char_enum(const FoldedData& folded, int k, const Rational& N) {
    MultiSeries out(folded.l, N);
    for_each_monomial(folded, k, N, k - 1, FormKind::Conformal,
                      [&](const QPMonomial& m, const Rational& e) {
                          out.add(e, m.charge_type.color_type(), 1);
                      });
    return out;
}

}  // namespace twistchar
