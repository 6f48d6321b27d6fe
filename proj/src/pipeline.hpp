#pragma once

#include <set>
#include <string>
#include <vector>

#include "block_solver.hpp"
#include "bpo.hpp"
#include "hidden_binary.hpp"
#include "structure.hpp"
#include "treewidth.hpp"

namespace boxpoly {

// Numeric stand-ins for the asymptotic structural conditions. -1 means auto:
// tw/itw/nbr default to ceil(log2 n) + 4, block to 20 (quadratic) or 4
// (higher degree).
struct Bounds {
    int tw_max = -1;
    int itw_max = -1;
    int block_max = -1;
    int nbr_max = -1;

    Bounds resolved(int n, int degree) const;
};

// f = f_minus + sum of block objectives, every monomial in exactly one part.
struct Decomposition {
    Polynomial f_minus;
    std::vector<BlockProblem> blocks;  // aligned with report.components
    ComponentReport report;
};

// Splits p along the hidden-binary partition. Verifies the reconstruction
// identity internally and throws Error(internal) on any mismatch.
Decomposition decompose(const Polynomial& p, const std::set<int>& vminus,
                        const std::set<int>& vplus);

struct AssumptionCheck {
    int n = 0;
    int degree = 0;
    Bounds bounds;          // resolved values actually used
    int width_bound = 0;    // tw_max (d<=2) or itw_max (d>=3)
    bool incidence = false;  // width target is the incidence graph
    WidthCheck width;
    int block_size_max = 0;
    int nbr_size_max = 0;
    bool pass = false;
    BinaryPartition partition;
    ComponentReport report;
};

AssumptionCheck check_assumptions(const Polynomial& p, const Bounds& bounds);

struct SolveOptions {
    Bounds bounds;
    double tol = 1e-6;
    bool force = false;
};

struct Diagnostics {
    int n = 0;
    int degree = 0;
    std::size_t input_bits = 0;
    int interaction_width = -1;   // certified or heuristic width of the checked graph
    int reduced_width = -1;       // heuristic width used by the DP
    int block_count = 0;
    int block_size_max = 0;
    int nbr_size_max = 0;
    std::size_t psi_entries_total = 0;
    std::size_t psi_entries_max = 0;
    double psi_gap_bound = 0.0;  // max certified gap over numeric tables
    double ms_analyze = 0.0;
    double ms_psi = 0.0;
    double ms_dp = 0.0;
    double ms_total = 0.0;
};

struct Solution {
    bool exact = true;
    Rat value_rat;
    double value_num = 0.0;
    std::vector<Rat> point_rat;
    std::vector<double> point_num;
    AssumptionCheck assumption;
    Diagnostics diag;

    double value_as_double() const { return exact ? rat_to_double(value_rat) : value_num; }
};

// End-to-end solve: partition, decompose, tabulate psi per block, assemble
// and solve the reduced binary problem, reconstruct a full optimizer from the
// stored witnesses. Quadratic instances are solved exactly over the
// rationals; higher degree runs the numeric block solver.
Solution solve(const Polynomial& p, const SolveOptions& opts);

struct CertifyReport {
    bool value_consistent = false;
    bool in_box = false;
    bool vminus_binary = false;
    double residual = 0.0;  // |f(point) - value| (0 when exact)
    bool ok() const { return value_consistent && in_box && vminus_binary; }
};
CertifyReport certify(const Solution& sol, const Polynomial& p);

// include_structure adds the interaction graph/hypergraph and the width
// certificate decomposition (bag list), which the CLI's analyze report wants
// but embedded solution reports omit.
std::string report_to_json(const AssumptionCheck& chk, const Polynomial* p = nullptr);
std::string solution_to_json(const Solution& sol, bool include_timings = true,
                             bool include_point = true);
std::string certify_to_json(const CertifyReport& rep);

}  // namespace boxpoly
