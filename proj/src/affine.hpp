#pragma once

#include "folded.hpp"
#include "latticeenum.hpp"
#include "series.hpp"

#include <map>
#include <string>
#include <vector>

namespace twistchar {

// Affine Cartan data realized from the folded geometry: node 0 carries the
// negative of the folded highest root, nodes 1..l the folded simple roots.
struct AffineGCM {
    std::string type_token;
    int l = 0;  // finite rank, nodes 0..l
    int r = 1;  // twist order
    std::vector<std::vector<long long>> a;   // Cartan integers
    std::vector<Rational> eps;               // symmetrizer: eps[i]*a[i][j] is symmetric
    std::vector<long long> marks;            // primitive null vector, marks[0] = 1
    RationalMatrix B;                        // realized pairings of the node vectors
    long long scale = 2;                     // scale*B and scale*eps are integral
    std::vector<std::vector<long long>> B2;  // scale * B
    std::vector<long long> eps2;             // scale * eps
};

AffineGCM build_gcm(const FoldedData& folded);

struct RootMultTable {
    long long max_depth = 0;
    // positive-root coordinates over nodes 0..l -> multiplicity (> 0 only)
    std::map<std::vector<long long>, long long> mult;

    long long mult_of(const std::vector<long long>& coords) const;
    // multiplicity of n times the null root
    long long null_mult(const AffineGCM& gcm, long long n) const;
};

RootMultTable peterson_mults(const AffineGCM& gcm, long long max_depth);

struct WeightMultTable {
    std::string type_token;
    int level = 0;
    long long max_depth = 0;
    int r = 1;
    int l = 0;
    // (finite weight in the color basis, depth) -> multiplicity (> 0 only)
    std::map<std::pair<std::vector<long long>, long long>, long long> mult;

    std::string to_json() const;
    static WeightMultTable from_json(const std::string& text);
    bool operator==(const WeightMultTable&) const = default;
};

WeightMultTable freudenthal_char(const AffineGCM& gcm, int k, long long max_depth);

// q^{depth / twist order} y^{finite weight}, truncated at N
MultiSeries weight_table_to_series(const WeightMultTable& table, const Rational& N);

// mode product over the eigenspace dimensions times the lattice theta series
MultiSeries level1_char(const FoldedData& folded, const Rational& N);

struct CacheOptions {
    std::string dir;  // empty: resolved from the environment
    bool disabled = false;
};
std::string resolve_cache_dir(const std::string& requested);
WeightMultTable freudenthal_char_cached(const AffineGCM& gcm, int k, long long max_depth,
                                        const CacheOptions& opts);

struct CacheStat {
    long long files = 0;
    long long bytes = 0;
    std::vector<std::string> names;
};
CacheStat cache_stat(const std::string& dir);
long long cache_clear(const std::string& dir);

}  // namespace twistchar
