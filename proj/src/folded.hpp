#pragma once
// Simply-laced root lattice, diagram automorphism, and the data obtained by
// projecting onto the fixed subspace: Gram matrix of the projected simple
// roots, energy steps rho_i, eigenspace dimensions, and the distinguished
// subsystem highest root used to realize the affine node.

#include "rational.hpp"
#include "series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twistchar {

struct AmbientLattice {
    int rank = 0;
    std::vector<std::vector<long long>> gram;  // symmetric, diag 2, off-diag 0/-1
    std::vector<std::string> labels;           // node names alpha_1..alpha_rank
    std::string type_token;
};

struct DiagramAutomorphism {
    int order = 1;          // r
    std::vector<int> perm;  // 0-based images, perm^order == id, preserves gram
};

struct FoldedData {
    std::string type_token;
    int l = 0;  // number of node orbits (folded rank)
    int r = 1;
    std::vector<int> orbit_reps;               // smallest ambient node index per color, 0-based
    std::vector<std::vector<Rational>> gram0;  // <(alpha_i)_0, (alpha_j)_0>
    std::vector<Rational> rho;                 // gram0[i][i] / 2
    std::vector<long long> h_dims;             // eigenspace dimensions, size r
    std::vector<long long> theta0;             // subsystem highest root over ambient nodes
    std::vector<long long> theta_fold;         // its pushforward in the beta basis

    Rational ip(const std::vector<long long>& a, const std::vector<long long>& b) const;
    bool is_chain() const;  // gram0[i][j] == 0 whenever |i-j| >= 2
};

// accepts "A3^2", "A5^2", ..., "D3^2", "D4^2", ..., "E6^2", "D4^3",
// and "untwisted:<letter><rank>" for the nu = id degenerate case
std::pair<AmbientLattice, DiagramAutomorphism> build_ambient(const std::string& type_token);

FoldedData fold(const AmbientLattice& ambient, const DiagramAutomorphism& autom);

// sum over lattice points la = sum c_i beta_i with <la,la>/2 <= N of
// q^{<la,la>/2} y^c
MultiSeries theta_series(const FoldedData& folded, const Rational& N);

}  // namespace twistchar
