#pragma once

#include <optional>
#include <string>
#include <vector>

#include "structure.hpp"

namespace boxpoly {

// Tree decomposition: bags of graph nodes plus tree edges over bag indices.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;          // each sorted
    std::vector<std::pair<int, int>> tree_edges;  // indices into bags

    // Largest bag size minus one; -1 for a single empty bag.
    int width() const;
};

// Checks the three decomposition conditions plus tree-ness. Returns nullopt
// when valid, otherwise a description of the first violation found.
std::optional<std::string> validate(const TreeDecomposition& td, const Graph& g);

// Min-fill elimination ordering (ties: min degree, then lowest label).
TreeDecomposition heuristic_decomposition(const Graph& g);

// Decomposition induced by an elimination order (fill-in simulation).
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order);

inline constexpr int kExactTwBudget = 14;

struct ExactTreewidth {
    int width = -1;
    TreeDecomposition decomposition;
};

// Exact treewidth by memoized branch and bound over elimination orderings,
// solved per connected component. Node count is capped by budget.
ExactTreewidth exact_treewidth(const Graph& g, int budget = kExactTwBudget);

// Minor-min-width lower bound on treewidth.
int treewidth_lower_bound(const Graph& g);

struct WidthCheck {
    enum class Verdict { yes, no, unknown };
    Verdict verdict = Verdict::unknown;
    std::optional<TreeDecomposition> certificate;  // present when verdict == yes
    int heuristic_width = -1;
    int lower_bound = 0;
};

// Sound decision of tw(g) <= k: exact below exact_budget nodes; above it,
// "yes" needs the heuristic to certify, "no" needs the lower bound to exceed
// k, anything else is unknown.
WidthCheck check_width_at_most(const Graph& g, int k, int exact_budget = kExactTwBudget);

std::string decomposition_to_json(const TreeDecomposition& td);

}  // namespace boxpoly
