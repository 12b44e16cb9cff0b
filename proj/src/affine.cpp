#include "affine.hpp"

#include "latticeenum.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace twistchar {

namespace {

int matrix_rank(RationalMatrix A) {
    size_t rows = A.size(), cols = A.empty() ? 0 : A[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && A[piv][col] == Rational(0)) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[row]);
        for (size_t rr = row + 1; rr < rows; ++rr) {
            if (A[rr][col] == Rational(0)) continue;
            Rational f = A[rr][col] / A[row][col];
            for (size_t j = col; j < cols; ++j) A[rr][j] = A[rr][j] - f * A[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

long long height_of(const std::vector<long long>& c) {
    long long h = 0;
    for (long long v : c) h += v;
    return h;
}

// reduces a nonnegative vector of positive norm by simple reflections; real
// roots reach a simple root, everything else leaves the positive cone
long long real_root_descent(const AffineGCM& gcm, std::vector<long long> b) {
    size_t n = b.size();
    for (long long guard = 0; guard < 1000000; ++guard) {
        long long height = 0;
        for (long long v : b) {
            if (v < 0) return 0;
            height += v;
        }
        if (height == 1) return 1;
        bool moved = false;
        for (size_t i = 0; i < n && !moved; ++i) {
            long long pairing = 0;
            for (size_t j = 0; j < n; ++j) pairing += gcm.a[i][j] * b[j];
            if (pairing > 0) {
                b[i] -= pairing;
                moved = true;
            }
        }
        if (!moved)
            throw std::logic_error("internal: no descent direction on a positive-norm vector");
    }
    throw std::logic_error("internal: reflection descent did not terminate");
}

std::string sanitize_token(const std::string& token) {
    std::string out;
    for (char ch : token) {
        if (ch == '^')
            out += 'c';
        else if (ch == ':')
            out += '_';
        else
            out += ch;
    }
    return out;
}

std::string cache_file_name(const std::string& token, int k, long long depth) {
    return "twc_cache_" + sanitize_token(token) + "_k" + std::to_string(k) + "_d" +
           std::to_string(depth) + ".json";
}

}  // namespace

AffineGCM build_gcm(const FoldedData& folded) {
    AffineGCM g;
    g.type_token = folded.type_token;
    g.l = folded.l;
    g.r = folded.r;
    size_t n = (size_t)g.l + 1;

    // node 0 carries minus the folded highest root, nodes 1..l the colors
    g.B.assign(n, std::vector<Rational>(n, Rational(0)));
    const auto& theta = folded.theta_fold;
    for (int i = 0; i < g.l; ++i)
        for (int j = 0; j < g.l; ++j) {
            Rational v = folded.gram0[i][j];
            g.B[(size_t)i + 1][(size_t)j + 1] = v;
            g.B[0][0] = g.B[0][0] + v * Rational(theta[(size_t)i] * theta[(size_t)j]);
        }
    for (int j = 0; j < g.l; ++j) {
        Rational v(0);
        for (int i = 0; i < g.l; ++i)
            v = v - folded.gram0[i][j] * Rational(theta[(size_t)i]);
        g.B[0][(size_t)j + 1] = v;
        g.B[(size_t)j + 1][0] = v;
    }

    g.eps.assign(n, Rational(0));
    g.a.assign(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        g.eps[i] = g.B[i][i] / Rational(2);
        if (!(g.eps[i] > Rational(0)))
            throw std::logic_error("internal: node with nonpositive norm");
        for (size_t j = 0; j < n; ++j) {
            Rational cartan = Rational(2) * g.B[i][j] / g.B[i][i];
            if (cartan.den != 1)
                throw std::logic_error("internal: non-integral Cartan pairing");
            g.a[i][j] = cartan.num;
        }
        if (g.a[i][i] != 2) throw std::logic_error("internal: diagonal Cartan entry is not 2");
        for (size_t j = 0; j < n; ++j)
            if (i != j && g.a[i][j] > 0)
                throw std::logic_error("internal: positive off-diagonal Cartan entry");
    }

    g.marks.assign(n, 1);
    for (int i = 0; i < g.l; ++i) g.marks[(size_t)i + 1] = theta[(size_t)i];
    for (size_t i = 0; i < n; ++i) {
        long long acc = 0;
        for (size_t j = 0; j < n; ++j) acc += g.a[i][j] * g.marks[j];
        if (acc != 0) throw std::logic_error("internal: marks are not a null vector");
    }
    RationalMatrix acopy(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) acopy[i][j] = Rational(g.a[i][j]);
    if (matrix_rank(acopy) != g.l)
        throw std::logic_error("internal: affine Cartan matrix does not have corank 1");

    g.scale = 2LL * g.r;
    g.B2.assign(n, std::vector<long long>(n, 0));
    g.eps2.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        Rational e = g.eps[i] * Rational(g.scale);
        if (e.den != 1) throw std::logic_error("internal: symmetrizer not integral at scale");
        g.eps2[i] = e.num;
        for (size_t j = 0; j < n; ++j) {
            Rational v = g.B[i][j] * Rational(g.scale);
            if (v.den != 1) throw std::logic_error("internal: pairing not integral at scale");
            g.B2[i][j] = v.num;
        }
    }
    return g;
}

long long RootMultTable::mult_of(const std::vector<long long>& coords) const {
    auto it = mult.find(coords);
    return it == mult.end() ? 0 : it->second;
}

long long RootMultTable::null_mult(const AffineGCM& gcm, long long n) const {
    std::vector<long long> coords(gcm.marks);
    for (long long& v : coords) v *= n;
    return mult_of(coords);
}

RootMultTable peterson_mults(const AffineGCM& gcm, long long max_depth) {
    if (max_depth < 1) throw std::invalid_argument("depth must be >= 1");
    size_t n = (size_t)gcm.l + 1;

    Rational M(0);
    for (size_t i = 0; i < n; ++i) M = std::max(M, gcm.B[i][i]);

    RationalMatrix gram_fin((size_t)gcm.l, std::vector<Rational>((size_t)gcm.l, Rational(0)));
    for (int i = 0; i < gcm.l; ++i)
        for (int j = 0; j < gcm.l; ++j)
            gram_fin[(size_t)i][(size_t)j] = gcm.B[(size_t)i + 1][(size_t)j + 1];

    // every root norm is bounded by the largest simple-root norm, so the
    // candidates at each depth are a fixed ellipsoid of finite projections
    std::vector<std::vector<long long>> cands;
    for (long long depth = 0; depth <= max_depth; ++depth) {
        enumerate_ellipsoid(gram_fin, M, false,
                            [&](const std::vector<long long>& gvec, const Rational&) {
                                std::vector<long long> c(n, 0);
                                c[0] = depth;
                                bool ok = false;
                                for (int i = 0; i < gcm.l; ++i) {
                                    c[(size_t)i + 1] =
                                        gvec[(size_t)i] + depth * gcm.marks[(size_t)i + 1];
                                    if (c[(size_t)i + 1] < 0) return;
                                }
                                for (size_t u = 0; u < n; ++u)
                                    if (c[u] != 0) ok = true;
                                if (ok) cands.push_back(std::move(c));
                            });
    }
    std::sort(cands.begin(), cands.end(),
              [](const std::vector<long long>& x, const std::vector<long long>& y) {
                  long long hx = height_of(x), hy = height_of(y);
                  if (hx != hy) return hx < hy;
                  return x < y;
              });

    std::vector<long long> box(n, 0);
    for (const auto& c : cands)
        for (size_t u = 0; u < n; ++u) box[u] = std::max(box[u], c[u]);

    auto ip = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
        long long s = 0;
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) s += x[u] * y[v] * gcm.B2[u][v];
        return Rational(s, gcm.scale);
    };

    RootMultTable table;
    table.max_depth = max_depth;
    std::map<std::vector<long long>, Rational> cval;

    auto add_support = [&](const std::vector<long long>& root, long long m) {
        for (long long mul = 1;; ++mul) {
            std::vector<long long> x(root);
            bool fits = true;
            for (size_t u = 0; u < n; ++u) {
                x[u] *= mul;
                if (x[u] > box[u]) fits = false;
            }
            if (!fits) break;
            auto it = cval.find(x);
            if (it == cval.end())
                cval.emplace(std::move(x), Rational(m, mul));
            else
                it->second = it->second + Rational(m, mul);
        }
    };

    for (size_t i = 0; i < n; ++i) {
        std::vector<long long> e(n, 0);
        e[i] = 1;
        table.mult[e] = 1;
        add_support(e, 1);
    }

    for (const auto& c : cands) {
        if (height_of(c) == 1) continue;  // simple roots are seeded
        Rational rhs(0);
        std::vector<long long> b2(n, 0);
        for (const auto& [b1, v1] : cval) {
            bool inside = true;
            for (size_t u = 0; u < n && inside; ++u)
                if (b1[u] > c[u]) inside = false;
            if (!inside) continue;
            bool zero = true;
            for (size_t u = 0; u < n; ++u) {
                b2[u] = c[u] - b1[u];
                if (b2[u] != 0) zero = false;
            }
            if (zero) continue;
            auto it = cval.find(b2);
            if (it == cval.end()) continue;
            rhs = rhs + ip(b1, b2) * v1 * it->second;
        }

        Rational norm2 = ip(c, c);
        Rational denom = norm2;
        for (size_t u = 0; u < n; ++u)
            denom = denom - Rational(2 * c[u]) * gcm.eps[u];

        Rational corr(0);
        long long min_nonzero = 0;
        for (size_t u = 0; u < n; ++u)
            if (c[u] > 0 && (min_nonzero == 0 || c[u] < min_nonzero)) min_nonzero = c[u];
        for (long long mul = 2; mul <= min_nonzero; ++mul) {
            bool divides = true;
            std::vector<long long> part(n, 0);
            for (size_t u = 0; u < n; ++u) {
                if (c[u] % mul != 0) {
                    divides = false;
                    break;
                }
                part[u] = c[u] / mul;
            }
            if (divides) corr = corr + Rational(table.mult_of(part), mul);
        }

        long long m;
        if (norm2 > Rational(0)) {
            m = real_root_descent(gcm, c);
            if (!(denom == Rational(0))) {
                Rational formula = rhs / denom - corr;
                if (!(formula == Rational(m)))
                    throw std::logic_error(
                        "internal: recursion disagrees with reflection descent");
            }
        } else {
            if (!(denom < Rational(0)))
                throw std::logic_error(
                    "internal: nonnegative recursion denominator off the real cone");
            Rational mr = rhs / denom - corr;
            if (mr.den != 1 || mr.num < 0)
                throw std::logic_error("internal: root multiplicity not a nonnegative integer");
            m = mr.num;
        }
        if (m > 0) {
            table.mult[c] = m;
            add_support(c, m);
        }
    }
    return table;
}

namespace {

uint64_t pack_coords(const std::vector<long long>& c) {
    uint64_t key = 0;
    for (size_t u = 0; u < c.size(); ++u) {
        if (c[u] < 0 || c[u] > 511)
            throw std::runtime_error("weight coordinates exceed the supported range");
        key |= (uint64_t)c[u] << (9 * u);
    }
    return key;
}

}  // namespace

WeightMultTable freudenthal_char(const AffineGCM& gcm, int k, long long max_depth) {
    if (k < 1) throw std::invalid_argument("level must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("depth must be >= 1");
    size_t n = (size_t)gcm.l + 1;
    if (n > 7) throw std::invalid_argument("rank too large for the packed weight index");

    RootMultTable roots = peterson_mults(gcm, max_depth);
    struct RootEntry {
        std::vector<long long> d;
        long long mult;
        long long d0;
        std::vector<long long> G2;  // pairing row against the lattice basis
    };
    std::vector<RootEntry> rootlist;
    rootlist.reserve(roots.mult.size());
    for (const auto& [coords, m] : roots.mult) {
        RootEntry e;
        e.d = coords;
        e.mult = m;
        e.d0 = coords[0];
        e.G2.assign(n, 0);
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) e.G2[u] += gcm.B2[u][v] * coords[v];
        rootlist.push_back(std::move(e));
    }

    // all weights live inside the string-inequality ellipsoid at each depth
    RationalMatrix gram_fin((size_t)gcm.l, std::vector<Rational>((size_t)gcm.l, Rational(0)));
    std::vector<Rational> eps_fin((size_t)gcm.l, Rational(0));
    for (int i = 0; i < gcm.l; ++i) {
        eps_fin[(size_t)i] = gcm.eps[(size_t)i + 1];
        for (int j = 0; j < gcm.l; ++j)
            gram_fin[(size_t)i][(size_t)j] = gcm.B[(size_t)i + 1][(size_t)j + 1];
    }
    std::vector<Rational> center = solve_linear(gram_fin, eps_fin);
    Rational center_norm(0);
    for (int i = 0; i < gcm.l; ++i)
        center_norm = center_norm + center[(size_t)i] * eps_fin[(size_t)i];

    std::vector<std::vector<long long>> cands;
    for (long long depth = 0; depth <= max_depth; ++depth) {
        Rational cn = Rational(2 * (k + 1) * depth) * gcm.eps[0];
        for (int i = 0; i < gcm.l; ++i)
            cn = cn + Rational(2 * depth * gcm.marks[(size_t)i + 1]) * eps_fin[(size_t)i];
        enumerate_ellipsoid(gram_fin, center, cn + center_norm, false,
                            [&](const std::vector<long long>& gvec, const Rational&) {
                                std::vector<long long> c(n, 0);
                                c[0] = depth;
                                for (int i = 0; i < gcm.l; ++i) {
                                    c[(size_t)i + 1] =
                                        gvec[(size_t)i] + depth * gcm.marks[(size_t)i + 1];
                                    if (c[(size_t)i + 1] < 0) return;
                                }
                                cands.push_back(std::move(c));
                            });
    }
    std::sort(cands.begin(), cands.end(),
              [](const std::vector<long long>& x, const std::vector<long long>& y) {
                  long long hx = height_of(x), hy = height_of(y);
                  if (hx != hy) return hx < hy;
                  return x < y;
              });

    WeightMultTable table;
    table.type_token = gcm.type_token;
    table.level = k;
    table.max_depth = max_depth;
    table.r = gcm.r;
    table.l = gcm.l;

    std::unordered_map<uint64_t, long long> multmap;
    multmap.reserve(cands.size() * 2);
    auto store = [&](const std::vector<long long>& c, long long m) {
        multmap.emplace(pack_coords(c), m);
        std::vector<long long> w((size_t)gcm.l, 0);
        for (int i = 0; i < gcm.l; ++i)
            w[(size_t)i] = c[0] * gcm.marks[(size_t)i + 1] - c[(size_t)i + 1];
        table.mult[{std::move(w), c[0]}] = m;
    };

    std::vector<long long> xi(n, 0);
    for (const auto& c : cands) {
        if (height_of(c) == 0) {
            store(c, 1);  // the highest weight itself
            continue;
        }
        __int128 rhs = 0;
        for (const RootEntry& root : rootlist) {
            xi = c;
            for (;;) {
                bool inside = true;
                for (size_t u = 0; u < n; ++u) {
                    xi[u] -= root.d[u];
                    if (xi[u] < 0) inside = false;
                }
                if (!inside) break;
                auto it = multmap.find(pack_coords(xi));
                if (it == multmap.end()) continue;
                long long pairing = k * root.d0 * gcm.eps2[0];
                for (size_t u = 0; u < n; ++u) pairing -= xi[u] * root.G2[u];
                rhs += (__int128)root.mult * pairing * it->second;
            }
        }
        rhs *= 2;
        if (rhs == 0) continue;

        __int128 f2 = (__int128)2 * k * c[0] * gcm.eps2[0];
        for (size_t u = 0; u < n; ++u) f2 += (__int128)2 * c[u] * gcm.eps2[u];
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) f2 -= (__int128)c[u] * c[v] * gcm.B2[u][v];
        if (f2 <= 0)
            throw std::runtime_error("multiplicity recursion denominator vanished");
        if (rhs % f2 != 0)
            throw std::logic_error("internal: non-integral weight multiplicity");
        __int128 m = rhs / f2;
        if (m < 0) throw std::logic_error("internal: negative weight multiplicity");
        if (m > (__int128)LLONG_MAX) throw std::overflow_error("weight multiplicity overflow");
        store(c, (long long)m);
    }
    return table;
}

MultiSeries weight_table_to_series(const WeightMultTable& table, const Rational& N) {
    if (N > Rational(table.max_depth, table.r))
        throw std::invalid_argument("table too shallow for the requested truncation");
    MultiSeries out(table.l, N);
    for (const auto& [key, m] : table.mult) {
        Rational q(key.second, table.r);
        if (q <= N) out.add(q, key.first, m);
    }
    return out;
}

MultiSeries level1_char(const FoldedData& folded, const Rational& N) {
    if (N < Rational(0)) throw std::invalid_argument("truncation must be >= 0");
    MultiSeries out = MultiSeries::one(folded.l, N);
    long long jmax = (N * Rational(folded.r)).floor();
    for (long long j = 1; j <= jmax; ++j) {
        int dims = folded.h_dims[(size_t)(j % folded.r)];
        if (dims > 0) out = out.mul(inv_eta_factor(Rational(j, folded.r), dims, N, folded.l));
    }
    return out.mul(theta_series(folded, N));
}

std::string WeightMultTable::to_json() const {
    std::ostringstream os;
    os << "{\"format_version\":1,\"kind\":\"weight-table\",\"type\":\"" << type_token
       << "\",\"level\":" << level << ",\"depth\":" << max_depth << ",\"r\":" << r
       << ",\"l\":" << l << ",\"entries\":[";
    bool first = true;
    for (const auto& [key, m] : mult) {
        if (!first) os << ',';
        first = false;
        os << "{\"w\":[";
        for (size_t i = 0; i < key.first.size(); ++i) {
            if (i) os << ',';
            os << key.first[i];
        }
        os << "],\"n\":" << key.second << ",\"m\":" << m << '}';
    }
    os << "]}";
    return os.str();
}

WeightMultTable WeightMultTable::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || j.value("format_version", 0) != 1 ||
        j.value("kind", std::string()) != "weight-table")
        throw std::invalid_argument("not a weight table document");
    WeightMultTable t;
    t.type_token = j.at("type").get<std::string>();
    t.level = j.at("level").get<int>();
    t.max_depth = j.at("depth").get<long long>();
    t.r = j.at("r").get<int>();
    t.l = j.at("l").get<int>();
    for (const auto& e : j.at("entries")) {
        std::vector<long long> w = e.at("w").get<std::vector<long long>>();
        if ((int)w.size() != t.l) throw std::invalid_argument("weight arity mismatch");
        t.mult[{std::move(w), e.at("n").get<long long>()}] = e.at("m").get<long long>();
    }
    return t;
}

std::string resolve_cache_dir(const std::string& requested) {
    std::string dir = requested;
    if (dir.empty()) {
        const char* env = std::getenv("TWISTCHAR_CACHE");
        if (env && *env) dir = env;
    }
    if (dir.empty()) {
        const char* home = std::getenv("HOME");
        if (home && *home) dir = std::string(home) + "/.cache/twistchar";
    }
    if (dir.empty()) dir = ".twistchar-cache";
    std::filesystem::create_directories(dir);
    return dir;
}

WeightMultTable freudenthal_char_cached(const AffineGCM& gcm, int k, long long max_depth,
                                        const CacheOptions& opts) {
    if (opts.disabled) return freudenthal_char(gcm, k, max_depth);
    std::string dir = resolve_cache_dir(opts.dir);
    std::filesystem::path path =
        std::filesystem::path(dir) / cache_file_name(gcm.type_token, k, max_depth);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            WeightMultTable t = WeightMultTable::from_json(buf.str());
            if (t.type_token == gcm.type_token && t.level == k && t.max_depth == max_depth &&
                t.r == gcm.r && t.l == gcm.l)
                return t;
        } catch (const std::exception&) {
            // unreadable cache entries are recomputed and overwritten
        }
    }
    WeightMultTable t = freudenthal_char(gcm, k, max_depth);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << t.to_json();
    }
    std::filesystem::rename(tmp, path);
    return t;
}

CacheStat cache_stat(const std::string& dir) {
    CacheStat stat;
    std::string resolved = resolve_cache_dir(dir);
    if (!std::filesystem::exists(resolved)) return stat;
    for (const auto& entry : std::filesystem::directory_iterator(resolved)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name.rfind("twc_cache_", 0) != 0 || name.size() < 5 ||
            name.substr(name.size() - 5) != ".json")
            continue;
        ++stat.files;
        stat.bytes += (long long)entry.file_size();
        stat.names.push_back(name);
    }
    std::sort(stat.names.begin(), stat.names.end());
    return stat;
}

long long cache_clear(const std::string& dir) {
    CacheStat stat = cache_stat(dir);
    std::string resolved = resolve_cache_dir(dir);
    for (const std::string& name : stat.names)
        std::filesystem::remove(std::filesystem::path(resolved) / name);
    return stat.files;
}

}  // namespace twistchar
