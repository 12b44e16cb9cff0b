#pragma once

#include "affine.hpp"
#include "folded.hpp"
#include "series.hpp"

#include <string>
#include <vector>

namespace twistchar {

// colorless product of the per-color oscillator mode sets rho_i * Z_{>0}
MultiSeries fock_char(const FoldedData& folded, const Rational& N);

struct TranslateShift {
    std::vector<long long> weight;
    Rational energy_delta;
};
// weight lam + k*mu and energy shift sign*(<mu,lam> + (k/2)<mu,mu>), all in
// the color basis with the folded pairing
TranslateShift translate_shift(const std::vector<long long>& mu,
                               const std::vector<long long>& lam, int k,
                               const FoldedData& folded, int sign = 1);

// the energy-shift sign used by the assembled character, fixed once by
// matching the level-1 modules of the four twisted types; hard error when
// neither sign matches
int calibrate_translate_sign();

struct BasisCharParams {
    std::string type_token;
    int level = 1;
    Rational truncation;
    long long ball_slack = 0;  // added to the squared radius of the translation ball
};

// fock_char times the translated sum over admissible charge counts; every
// exponent and coefficient is checked nonnegative
MultiSeries module_char_basis(const BasisCharParams& params);

struct VerifyComparison {
    std::string comparison;
    bool pass = true;
    bool has_mismatch = false;
    MultiSeries::Mismatch mismatch;
    std::string detail;
};

struct VerifyReport {
    std::string type_token;
    int level = 1;
    Rational truncation;
    int translate_sign = 1;
    std::vector<VerifyComparison> comparisons;

    bool all_pass() const;
    std::string to_json() const;
    std::string to_text() const;  // one PASS/FAIL line per comparison
};

// runs every comparison applicable to the type: enumeration vs packed formula
// (chain diagrams), assembled module vs the recursion oracle, the level-1
// cross checks, and the translation-ball certification
VerifyReport verify(const BasisCharParams& params, const CacheOptions& cache);

}  // namespace twistchar
