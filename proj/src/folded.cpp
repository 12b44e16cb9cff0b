#include "folded.hpp"

#include "latticeenum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twistchar {

namespace {

struct TokenInfo {
    char letter = 0;
    int rank = 0;
    int order = 1;  // 1 means untwisted
};

TokenInfo parse_token(const std::string& tok) {
    TokenInfo info;
    std::string body = tok;
    bool untwisted = false;
    const std::string prefix = "untwisted:";
    if (body.rfind(prefix, 0) == 0) {
        untwisted = true;
        body = body.substr(prefix.size());
    }
    auto caret = body.find('^');
    std::string head = caret == std::string::npos ? body : body.substr(0, caret);
    if (untwisted && caret != std::string::npos)
        throw std::invalid_argument("unknown type token '" + tok + "': untwisted tokens carry no twist order");
    if (!untwisted && caret == std::string::npos)
        throw std::invalid_argument("unknown type token '" + tok + "': expected <letter><rank>^<r> or untwisted:<letter><rank>");
    if (head.size() < 2) throw std::invalid_argument("unknown type token '" + tok + "'");
    info.letter = head[0];
    try {
        size_t pos = 0;
        info.rank = std::stoi(head.substr(1), &pos);
        if (pos != head.size() - 1) throw std::invalid_argument("");
        if (!untwisted) {
            std::string ord = body.substr(caret + 1);
            info.order = std::stoi(ord, &pos);
            if (pos != ord.size()) throw std::invalid_argument("");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown type token '" + tok + "'");
    }
    return info;
}

std::vector<std::vector<long long>> gram_from_edges(int rank, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<long long>> g(rank, std::vector<long long>(rank, 0));
    for (int i = 0; i < rank; ++i) g[i][i] = 2;
    for (auto [a, b] : edges) {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    return g;
}

// chain 1..rank-1 with node rank attached to node rank-2
std::vector<std::pair<int, int>> d_edges(int rank) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i + 1 <= rank - 1; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(rank - 2, rank);
    return e;
}

std::vector<std::pair<int, int>> a_edges(int rank) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i + 1 <= rank; ++i) e.emplace_back(i, i + 1);
    return e;
}

// chain 1-2-3-5-6 with node 4 attached to node 3
std::vector<std::pair<int, int>> e6_edges() {
    return {{1, 2}, {2, 3}, {3, 5}, {5, 6}, {3, 4}};
}

std::vector<long long> highest_root(char letter, int rank) {
    std::vector<long long> t(rank, 0);
    if (letter == 'A') {
        std::fill(t.begin(), t.end(), 1);
    } else if (letter == 'D') {
        t[0] = 1;
        for (int i = 1; i < rank - 2; ++i) t[i] = 2;
        t[rank - 2] = 1;
        t[rank - 1] = 1;
    } else {  // E6 in the chain 1-2-3-5-6 / branch 4 labeling
        t = {1, 2, 3, 2, 2, 1};
    }
    return t;
}

}  // namespace

Rational FoldedData::ip(const std::vector<long long>& a, const std::vector<long long>& b) const {
    if (static_cast<int>(a.size()) != l || static_cast<int>(b.size()) != l)
        throw std::invalid_argument("FoldedData::ip: arity mismatch");
    Rational s(0);
    for (int i = 0; i < l; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < l; ++j) {
            if (b[j] == 0) continue;
            s += gram0[i][j] * Rational(checked_mul(a[i], b[j]));
        }
    }
    return s;
}

bool FoldedData::is_chain() const {
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (std::abs(i - j) >= 2 && !gram0[i][j].is_zero()) return false;
    return true;
}

std::pair<AmbientLattice, DiagramAutomorphism> build_ambient(const std::string& type_token) {
    TokenInfo info = parse_token(type_token);
    AmbientLattice amb;
    DiagramAutomorphism aut;
    amb.type_token = type_token;

    if (info.order == 1) {
        if (info.letter == 'A' && info.rank >= 1) {
            amb.rank = info.rank;
            amb.gram = gram_from_edges(info.rank, a_edges(info.rank));
        } else if (info.letter == 'D' && info.rank >= 3) {
            amb.rank = info.rank;
            amb.gram = gram_from_edges(info.rank, d_edges(info.rank));
        } else if (info.letter == 'E' && info.rank == 6) {
            amb.rank = 6;
            amb.gram = gram_from_edges(6, e6_edges());
        } else {
            throw std::invalid_argument("unsupported untwisted ambient type '" + type_token +
                                        "' (supported: A_n n>=1, D_n n>=3, E6)");
        }
        aut.order = 1;
        aut.perm.resize(amb.rank);
        std::iota(aut.perm.begin(), aut.perm.end(), 0);
    } else if (info.letter == 'A' && info.order == 2) {
        if (info.rank < 3 || info.rank % 2 == 0)
            throw std::invalid_argument("type '" + type_token + "': twisted A requires odd rank 2l-1 >= 3");
        amb.rank = info.rank;
        amb.gram = gram_from_edges(info.rank, a_edges(info.rank));
        aut.order = 2;
        aut.perm.resize(amb.rank);
        for (int i = 1; i <= amb.rank; ++i) aut.perm[i - 1] = (amb.rank + 1 - i) - 1;  // i <-> 2l-i
    } else if (info.letter == 'D' && info.order == 2) {
        if (info.rank < 3)
            throw std::invalid_argument("type '" + type_token + "': twisted D requires rank l+1 >= 3");
        amb.rank = info.rank;
        amb.gram = gram_from_edges(info.rank, d_edges(info.rank));
        aut.order = 2;
        aut.perm.resize(amb.rank);
        std::iota(aut.perm.begin(), aut.perm.end(), 0);
        std::swap(aut.perm[amb.rank - 2], aut.perm[amb.rank - 1]);  // the fork swap
    } else if (info.letter == 'E' && info.rank == 6 && info.order == 2) {
        amb.rank = 6;
        amb.gram = gram_from_edges(6, e6_edges());
        aut.order = 2;
        aut.perm = {5, 4, 2, 3, 1, 0};  // 1<->6, 2<->5, 3 and 4 fixed
    } else if (info.letter == 'D' && info.rank == 4 && info.order == 3) {
        amb.rank = 4;
        amb.gram = gram_from_edges(4, d_edges(4));
        aut.order = 3;
        aut.perm = {2, 1, 3, 0};  // 1 -> 3 -> 4 -> 1, node 2 fixed
    } else {
        throw std::invalid_argument("unknown type token '" + type_token + "'");
    }

    amb.labels.resize(amb.rank);
    for (int i = 0; i < amb.rank; ++i) amb.labels[i] = "alpha_" + std::to_string(i + 1);
    return {amb, aut};
}

FoldedData fold(const AmbientLattice& ambient, const DiagramAutomorphism& autom) {
    int n = ambient.rank;
    if (static_cast<int>(autom.perm.size()) != n)
        throw std::invalid_argument("fold: automorphism arity mismatch");
    // perm preserves gram and has the declared order
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (ambient.gram[autom.perm[i]][autom.perm[j]] != ambient.gram[i][j])
                throw std::invalid_argument("fold: permutation does not preserve the Gram matrix");
    {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (int s = 0; s < autom.order; ++s) {
            std::vector<int> q(n);
            for (int i = 0; i < n; ++i) q[i] = autom.perm[p[i]];
            p = q;
        }
        for (int i = 0; i < n; ++i)
            if (p[i] != i) throw std::invalid_argument("fold: permutation order mismatch");
    }

    FoldedData f;
    f.type_token = ambient.type_token;
    f.r = autom.order;

    // orbits, represented by their smallest node
    std::vector<int> orbit_of(n, -1);
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < n; ++i) {
        if (orbit_of[i] >= 0) continue;
        std::vector<int> orb;
        int j = i;
        do {
            orbit_of[j] = static_cast<int>(orbits.size());
            orb.push_back(j);
            j = autom.perm[j];
        } while (j != i);
        orbits.push_back(orb);
    }
    f.l = static_cast<int>(orbits.size());
    f.orbit_reps.resize(f.l);
    for (int c = 0; c < f.l; ++c) f.orbit_reps[c] = *std::min_element(orbits[c].begin(), orbits[c].end());
    // colors ordered by representative index, matching the per-type labels
    std::vector<int> order(f.l);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return f.orbit_reps[a] < f.orbit_reps[b]; });
    {
        std::vector<std::vector<int>> tmp(f.l);
        std::vector<int> reps(f.l);
        for (int c = 0; c < f.l; ++c) { tmp[c] = orbits[order[c]]; reps[c] = f.orbit_reps[order[c]]; }
        orbits = tmp;
        f.orbit_reps = reps;
        for (int c = 0; c < f.l; ++c)
            for (int node : orbits[c]) orbit_of[node] = c;
    }

    // gram0[i][j] = (1/r) sum_p gram[perm^p(rep_i)][rep_j]
    f.gram0.assign(f.l, std::vector<Rational>(f.l, Rational(0)));
    for (int i = 0; i < f.l; ++i) {
        for (int j = 0; j < f.l; ++j) {
            long long acc = 0;
            int node = f.orbit_reps[i];
            for (int p = 0; p < f.r; ++p) {
                acc = checked_add(acc, ambient.gram[node][f.orbit_reps[j]]);
                node = autom.perm[node];
            }
            f.gram0[i][j] = Rational(acc, f.r);
        }
    }
    for (int i = 0; i < f.l; ++i)
        for (int j = 0; j < f.l; ++j)
            if (f.gram0[i][j] != f.gram0[j][i]) throw std::logic_error("fold: projected Gram not symmetric");

    f.rho.resize(f.l);
    for (int i = 0; i < f.l; ++i) {
        f.rho[i] = f.gram0[i][i] / Rational(2);
        Rational scaled = f.rho[i] * Rational(f.r);
        if (!(f.rho[i] > Rational(0)) || !scaled.is_integer())
            throw std::logic_error("fold: rho values must lie in (1/r) Z_{>0}");
    }

    // permutation eigenspace dimensions: an orbit of size c contributes to
    // eigenvalue eta^j exactly when (j*c) % r == 0
    f.h_dims.assign(f.r, 0);
    for (const auto& orb : orbits) {
        int c = static_cast<int>(orb.size());
        for (int j = 0; j < f.r; ++j)
            if ((static_cast<long long>(j) * c) % f.r == 0) ++f.h_dims[j];
    }
    if (std::accumulate(f.h_dims.begin(), f.h_dims.end(), 0LL) != n || f.h_dims[0] != f.l)
        throw std::logic_error("fold: eigenspace dimension bookkeeping failed");

    // distinguished highest root: for twisted types the highest root of the
    // subsystem listed per type; for nu = id the ambient highest root
    TokenInfo info = parse_token(ambient.type_token);
    f.theta0.assign(n, 0);
    if (f.r == 1) {
        f.theta0 = highest_root(info.letter, n);
    } else if (info.letter == 'A') {
        for (int i = 0; i < n - 1; ++i) f.theta0[i] = 1;  // alpha_1 + ... + alpha_{2l-2}
    } else if (info.letter == 'D' && f.r == 2) {
        for (int i = 0; i < n - 1; ++i) f.theta0[i] = 1;  // alpha_1 + ... + alpha_l
    } else if (info.letter == 'E') {
        f.theta0 = {1, 2, 2, 1, 1, 1};
    } else {  // D4 order 3
        f.theta0 = {1, 1, 1, 0};
    }

    f.theta_fold.assign(f.l, 0);
    for (int node = 0; node < n; ++node)
        f.theta_fold[orbit_of[node]] = checked_add(f.theta_fold[orbit_of[node]], f.theta0[node]);

    return f;
}

MultiSeries theta_series(const FoldedData& folded, const Rational& N) {
    if (N < Rational(0)) throw std::invalid_argument("theta_series: negative truncation");
    MultiSeries out(folded.l, N);
    enumerate_ellipsoid(folded.gram0, N * Rational(2), false,
                        [&](const std::vector<long long>& x, const Rational& val) {
                            out.add(val / Rational(2), x, 1);
                        });
    return out;
}

}  // namespace twistchar
