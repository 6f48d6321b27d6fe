#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace boxpoly {

// Sparse exponent vector: sorted (variable, exponent) pairs, exponents > 0.
class Monomial {
public:
    Monomial() = default;

    // Merges duplicate variables, drops zero exponents. Negative exponents are
    // a caller error.
    static Monomial from_pairs(std::vector<std::pair<int, int>> pairs);

    static Monomial one() { return Monomial(); }
    static Monomial var(int v, int exp = 1);

    const std::vector<std::pair<int, int>>& exps() const { return exps_; }
    bool is_one() const { return exps_.empty(); }
    int total_degree() const;
    int exponent_of(int v) const;
    int max_var() const { return exps_.empty() ? -1 : exps_.back().first; }
    std::vector<int> support() const;

    Monomial without_var(int v) const;
    Monomial times(const Monomial& other) const;

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

private:
    std::vector<std::pair<int, int>> exps_;
};

// Graded lexicographic order: lower total degree first; within a degree, the
// monomial with the larger exponent at the smallest differing variable comes
// first (x0^2 < x0*x1 < x1^2). Serialization iterates the term map directly,
// which makes output byte-stable.
struct MonomialGradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients over
// variables 0..nvars-1. Canonical: no zero coefficients, no zero exponents.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rat, MonomialGradedLex>;

    explicit Polynomial(int nvars = 0);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Max total degree over terms; 0 for the zero polynomial.
    int degree() const;
    int degree_in(int v) const;
    Rat coefficient(const Monomial& m) const;
    Rat constant_term() const { return coefficient(Monomial::one()); }
    std::vector<int> variables_used() const;

    // Adds c * m, merging with an existing term and erasing it if the sum is
    // zero. Variable indices must be < nvars.
    void add_term(const Monomial& m, const Rat& c);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Rat& c) const;
    bool operator==(const Polynomial& other) const;

    static Polynomial constant(int nvars, const Rat& c);

private:
    int nvars_;
    TermMap terms_;
};

// --- instance document I/O -------------------------------------------------

// Parses the JSON instance format {"n": int, "terms": [{"coef": "...",
// "exps": [[var, exp], ...]}, ...]}. Duplicate monomials are summed, zero
// coefficients dropped, indices validated. Errors carry the term position.
Polynomial parse_instance(const std::string& text);

// Inverse of parse_instance; terms in graded-lex order, coefficients as
// canonical rational strings. Compact JSON, byte-stable.
std::string serialize_instance(const Polynomial& p);

// --- evaluation and substitution --------------------------------------------

Rat evaluate(const Polynomial& p, const std::vector<Rat>& x);
double evaluate(const Polynomial& p, const std::vector<double>& x);

// Fixes a subset of variables to rational values in [0,1]; the result mentions
// none of the fixed variables (nvars is unchanged).
Polynomial substitute(const Polynomial& p, const std::map<int, Rat>& fixings);

// Coefficient polynomials of p viewed as a polynomial in variable i:
// p = sum_m out[m] * x_i^m, with out[m] free of x_i. out.size() = deg_i(p)+1.
std::vector<Polynomial> collect_in_variable(const Polynomial& p, int i);

// Chord deficit of p in variable i and its x_i(1-x_i) cofactor.
struct ChordDeficit {
    Polynomial delta;  // p - (1-x_i) p|x_i=0 - x_i p|x_i=1
    Polynomial h;      // delta = x_i (1-x_i) h, exact
    bool divisible;    // always true; delta vanishes identically at x_i in {0,1}
};
ChordDeficit chord_deficit(const Polynomial& p, int i);

// Unique multilinear interpolant of a table on {0,1}^m. table[mask] is the
// value at the vertex whose bit j is (mask >> j) & 1. Coefficients via the
// iterative Moebius transform, O(m 2^m).
Polynomial multilinear_from_table(int m, const std::vector<Rat>& table);
std::vector<double> moebius_transform(int m, std::vector<double> table);

inline constexpr int kMultilinearArityCap = 24;

// --- quadratic view ----------------------------------------------------------

// p = x^T Q x + c^T x + c0 with Q symmetric: q_ii = coefficient of x_i^2,
// q_ij = q_ji = (coefficient of x_i x_j)/2. Stored sparsely on i <= j.
struct QuadraticForm {
    int n = 0;
    std::map<std::pair<int, int>, Rat> q;  // keys i <= j
    std::vector<Rat> linear;
    Rat constant;

    Rat entry(int i, int j) const;
    Polynomial reconstruct() const;
};
QuadraticForm quadratic_parts(const Polynomial& p);

// Restricts p to the listed variables, relabeling vars[k] -> k. Every monomial
// of p must be supported on vars.
Polynomial relabel_to_compact(const Polynomial& p, const std::vector<int>& vars);

// Total bits needed to encode all coefficients and exponents; reported in
// solve diagnostics.
std::size_t encoding_bits(const Polynomial& p);

}  // namespace boxpoly
