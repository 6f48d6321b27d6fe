#pragma once

#include <gmpxx.h>

#include <string>

namespace boxpoly {

// Exact rational coefficients. mpq_class keeps values in lowest terms with a
// positive denominator once canonicalized; every constructor path below
// canonicalizes, so Rat values can be compared structurally.
using Rat = mpq_class;

// Canonical fraction from a numerator/denominator pair.
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p" or "p/q" with optional leading '-' on p. Throws Error(parse) on
// anything else (including q == 0).
Rat rat_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& r);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double v);

double rat_to_double(const Rat& r);

Rat rat_pow(const Rat& base, unsigned exp);

}  // namespace boxpoly
