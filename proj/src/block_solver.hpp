#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace boxpoly {

inline constexpr int kFaceEnumCapVars = 20;    // 3^k faces are enumerated
inline constexpr int kNumericCapVars = 6;      // solve_poly_box_numeric cap
inline constexpr int kGridEngineCapVars = 10;  // raw grid engine (oracle use)
inline constexpr long kGridPointCap = 1L << 22;
inline constexpr long kPsiEntriesCap = 1L << 20;

// Exact global minimum of a quadratic over [0,1]^k by enumerating all 3^k
// faces. On each face the stationarity system is solved exactly over the
// rationals; interior solutions and all vertices are candidates. Ties go to
// the lexicographically smallest face code (digit order: 0 < 1 < free).
struct BoxMinimum {
    Rat value;
    std::vector<Rat> point;
};
BoxMinimum solve_quadratic_box(const Polynomial& q);

// Numeric minimum of a low-dimensional polynomial over [0,1]^k: dyadic grid
// refinement plus projected-gradient polish from grid incumbents and all
// vertices. value <= true minimum + gap_bound with
// gap_bound = L_f * h * sqrt(k) / 2, L_f = sum |c_a| * |a|, and h fine enough
// that gap_bound <= tol. If that grid would exceed kGridPointCap the call
// fails with cap_exceeded; see feasible_tol.
struct NumericBoxMinimum {
    double value = 0.0;
    std::vector<double> point;
    double gap_bound = 0.0;
};
NumericBoxMinimum solve_poly_box_numeric(const Polynomial& q, double tol);

// Smallest tolerance >= tol whose grid fits the given point cap for q.
double feasible_tol(const Polynomial& q, double tol, long point_cap = kGridPointCap);

// Per-entry grid budget for psi tabulation: tables multiply the solve count
// by 2^|N(C)|, so entries run on coarser certified grids and lean on the
// polish step for practical accuracy. The realized gap bound is reported in
// the table and in solve diagnostics.
inline constexpr long kPsiGridPointCap = 1L << 14;

// Raw grid + polish engine with an explicit per-dimension point count;
// used by the reference oracle. gap_bound reported from the actual spacing.
NumericBoxMinimum grid_polish_min(const Polynomial& q, int points_per_dim, bool polish);

// Gradient-magnitude bound sum |c_a| * |a| on [0,1]^k.
double lipschitz_bound(const Polynomial& q);

// --- per-component tabulation ---------------------------------------------------

// Objective restricted to one continuous component C and its binary
// neighborhood N(C); every monomial is supported on C u N(C).
struct BlockProblem {
    Polynomial objective;        // over the original variable ids
    std::vector<int> cont_vars;  // C, ascending
    std::vector<int> bin_vars;   // N(C), ascending
};

enum class SolveMode { exact, numeric };

// psi_C: for each assignment z of N(C) (index bit j = value of bin_vars[j]),
// the minimum of the block objective over [0,1]^C and a witnessing x_C.
struct PsiTable {
    int arity = 0;
    SolveMode mode = SolveMode::exact;
    std::vector<Rat> rvalues;
    std::vector<std::vector<Rat>> rwitnesses;
    std::vector<double> fvalues;
    std::vector<std::vector<double>> fwitnesses;
    double gap_bound = 0.0;  // max certified gap over entries (numeric mode)

    std::size_t size() const { return std::size_t{1} << arity; }
};

// Tabulates psi by substituting each z and dispatching to the exact or
// numeric box solver. Entries are computed in parallel; assembly is
// deterministic. In numeric mode entries whose substituted objective is
// quadratic are still solved exactly.
PsiTable build_psi_table(const BlockProblem& bp, SolveMode mode, double tol);

// Entries sorted by z as a little-endian bitstring.
std::string psi_to_json(const PsiTable& t);

}  // namespace boxpoly
