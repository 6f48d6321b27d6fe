#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "polynomial.hpp"

namespace boxpoly {

// Why a variable was classified as hidden-binary. The witness carries enough
// to re-run the qualifying sign scan independently.
struct BinaryCertificate {
    enum class Rule { quadratic_diag, concave_coeffs, chord_dominance };

    int variable = -1;
    Rule rule = Rule::quadratic_diag;
    // quadratic_diag: the diagonal coefficient q_ii (<= 0).
    // concave_coeffs: the coefficient polynomials a_m for m >= 2 (all
    //                 coefficients nonpositive).
    // chord_dominance: the cofactor H_i (all coefficients nonnegative).
    std::variant<Rat, std::vector<Polynomial>, Polynomial> witness;
};

const char* rule_name(BinaryCertificate::Rule r);

struct BinaryPartition {
    std::set<int> vminus;
    std::set<int> vplus;
    std::vector<BinaryCertificate> certificates;  // one per vminus variable
};

// d = 2 classification: i is hidden-binary iff the x_i^2 coefficient is <= 0
// (variables with no square term included).
BinaryPartition detect_quadratic(const Polynomial& p);

// General-degree classification per variable: first the nonpositive upper
// coefficient test on a_m (m >= 2), then nonnegativity of the chord cofactor
// H_i. A variable passing either lands in vminus with the rule recorded.
BinaryPartition detect_general(const Polynomial& p);

// Re-runs the sign scan of a certificate against p.
bool recheck_certificate(const Polynomial& p, const BinaryCertificate& cert);

}  // namespace boxpoly
