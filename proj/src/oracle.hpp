#pragma once

#include <string>

#include "block_solver.hpp"
#include "polynomial.hpp"

namespace boxpoly {

inline constexpr int kOracleExactCapVars = 12;  // 3^n faces on the whole instance
inline constexpr int kOracleGridCapVars = 9;

// Whole-instance reference minimum, independent of the decomposition
// pipeline: exact face enumeration for quadratics, refined grid plus polish
// otherwise. grid_per_dim = 0 picks the largest grid within the point cap.
struct OracleResult {
    bool exact = true;
    Rat value_rat;
    std::vector<Rat> point_rat;
    double value_num = 0.0;
    std::vector<double> point_num;
    double gap_bound = 0.0;  // 0 in exact mode

    double value_as_double() const { return exact ? rat_to_double(value_rat) : value_num; }
};

OracleResult oracle_solve(const Polynomial& p, int grid_per_dim = 0, bool polish = true);

std::string oracle_to_json(const OracleResult& r);

}  // namespace boxpoly
