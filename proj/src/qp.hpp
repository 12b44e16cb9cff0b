#pragma once

#include "folded.hpp"
#include "series.hpp"

#include <functional>
#include <string>
#include <vector>

namespace twistchar {

// Charges of one monomial. charges[i] is weakly increasing (display order);
// the particle index p = 1..r_i^(1) counts from the back, so charge(i,1) is
// the largest charge of color i.
struct ChargeType {
    std::vector<std::vector<long long>> charges;

    int num_colors() const { return (int)charges.size(); }
    long long count(int i) const { return (long long)charges[i].size(); }
    long long charge(int i, long long p) const { return charges[i][count(i) - p]; }
    std::vector<long long> color_type() const;  // total charge per color
    bool operator==(const ChargeType&) const = default;
    bool operator<(const ChargeType& o) const { return charges < o.charges; }
};

// counts[i][s-1] = number of color-i particles with charge >= s, s = 1..k.
struct DualChargeType {
    std::vector<std::vector<long long>> counts;
    bool operator==(const DualChargeType&) const = default;
};

// p[i][s-1] = number of color-i particles with charge exactly s, s = 1..S.
struct PMatrix {
    std::vector<std::vector<long long>> p;
    int num_colors() const { return (int)p.size(); }
    int max_charge() const { return p.empty() ? 0 : (int)p[0].size(); }
    bool operator==(const PMatrix&) const = default;
};

struct QPMonomial {
    ChargeType charge_type;
    // energies[i][j] is the mode of the particle stored at charges[i][j]
    std::vector<std::vector<Rational>> energies;

    Rational energy(int i, long long p) const { return energies[i][charge_type.count(i) - p]; }
    Rational total_energy() const;  // minus the sum of all modes
    std::string to_text() const;
    static QPMonomial from_text(const std::string& text);
    bool operator==(const QPMonomial&) const = default;
};

struct ValidityReport {
    bool valid = true;
    int clause = 0;          // 1, 2 or 3 for the first violated condition
    int color = 0;           // 1-based color of the violation
    long long particle = 0;  // 1-based particle index p
    std::string message;
};

DualChargeType dual_charge(const ChargeType& ct, int k);
ChargeType transpose(const DualChargeType& dct);
PMatrix p_matrix(const ChargeType& ct, int max_charge);
ChargeType charge_type_of(const PMatrix& P);

// Checks the admissibility conditions in order: modes in rho_i Z, per-particle
// caps against the previous color, gaps within equal-charge runs. Structural
// problems (shape mismatch, non-monotone or out-of-range charges, non-chain
// diagram) throw instead of reporting.
ValidityReport validate(const QPMonomial& m, const FoldedData& folded, int k);

struct EnergyCaps {
    // caps[i][j] is the largest admissible mode for the particle stored at
    // charges[i][j], with all other particles at their own caps
    std::vector<std::vector<Rational>> caps;
    Rational min_total;  // sum of -caps == quadratic form of the charge counts
};
EnergyCaps max_energies(const ChargeType& ct, const FoldedData& folded);

// (1/2) sum_{i,j} sum_{s,t} min{s,t} gram0[i][j] p_i^(s) p_j^(t)
Rational min_total_energy(const PMatrix& P, const FoldedData& folded);
// same with min{s,t} replaced by min{s,t} - st/k
Rational conformal_form(const PMatrix& P, const FoldedData& folded, int k);

// Emits every admissible monomial with all charges <= charge_cap and plain
// total energy <= N, each re-checked through validate. Deterministic order.
void enumerate_basis(const FoldedData& folded, int k, const Rational& N, int charge_cap,
                     const std::function<void(const QPMonomial&, const Rational&)>& emit);
// Same set, sorted by (total energy, charge type, energies).
std::vector<QPMonomial> enumerate_basis_sorted(const FoldedData& folded, int k,
                                               const Rational& N, int charge_cap);

// sum over charges <= k of q^{total energy} y^{color type}
MultiSeries principal_char_enum(const FoldedData& folded, int k, const Rational& N);

// plain energy minus the st/k quadratic shift; sets *charge_at_level when some
// charge equals k (the grading is defined there but lies outside the quotient)
Rational conformal_energy(const QPMonomial& m, const FoldedData& folded, int k,
                          bool* charge_at_level = nullptr);

// sum over charges <= k-1 of q^{conformal energy} y^{color type}; the energy
// budget drives the conformal grading, which is smaller than the plain one
MultiSeries parafermionic_char_enum(const FoldedData& folded, int k, const Rational& N);

}  // namespace twistchar
