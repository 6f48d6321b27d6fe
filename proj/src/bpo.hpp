#pragma once

#include <algorithm>
#include <cmath>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "structure.hpp"
#include "treewidth.hpp"

namespace boxpoly {

// Binary polynomial optimization instance: multilinear objective
// sum_e c_e prod_{i in e} z_i + sum_i c_i z_i over z in {0,1}^V. Nodes may be
// isolated (zero-cost allowance for stray linear terms).
template <class V>
struct BpoInstance {
    Hypergraph graph;
    std::map<std::vector<int>, V> edge_cost;  // keyed by sorted edge
    std::map<int, V> node_cost;
};

template <class V>
struct BpoSolution {
    V value{};
    std::map<int, int> assignment;
};

inline constexpr int kBruteForceCapVars = 22;

// Exact-comparison policy; doubles treat relative differences below 1e-12 as
// ties so numeric psi tables do not produce arbitrary argmins.
template <class V>
struct ValueTies {
    static bool tie(const V& a, const V& b) { return a == b; }
};
template <>
struct ValueTies<double> {
    static bool tie(double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    }
};

template <class V>
bool strictly_better(const V& a, const V& b) {
    return a < b && !ValueTies<V>::tie(a, b);
}

template <class V>
void validate_bpo(const BpoInstance<V>& inst) {
    for (const auto& [e, c] : inst.edge_cost)
        if (!inst.graph.edges().count(e)) fail(Errc::invalid_argument, "cost references missing edge");
    for (const auto& e : inst.graph.edges())
        if (!inst.edge_cost.count(e)) fail(Errc::invalid_argument, "edge without cost");
    for (const auto& [v, c] : inst.node_cost)
        if (!inst.graph.nodes().count(v)) fail(Errc::invalid_argument, "cost references missing node");
}

template <class V>
V evaluate_bpo(const BpoInstance<V>& inst, const std::map<int, int>& assignment) {
    V total{};
    for (const auto& [e, c] : inst.edge_cost) {
        bool all = true;
        for (int v : e)
            if (!assignment.at(v)) {
                all = false;
                break;
            }
        if (all) total += c;
    }
    for (const auto& [v, c] : inst.node_cost)
        if (assignment.at(v)) total += c;
    return total;
}

namespace bpo_detail {

// z tuples ordered by ascending node id; smaller means 0 at the first
// differing node.
inline bool lex_less(std::uint32_t a, std::uint32_t b) {
    std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    return ((a >> std::countr_zero(diff)) & 1) == 0;
}

}  // namespace bpo_detail

// Exhaustive reference solver; lexicographically smallest argmin among ties.
template <class V>
BpoSolution<V> solve_brute(const BpoInstance<V>& inst) {
    validate_bpo(inst);
    const std::vector<int> nodes(inst.graph.nodes().begin(), inst.graph.nodes().end());
    const int n = static_cast<int>(nodes.size());
    if (n > kBruteForceCapVars)
        fail(Errc::cap_exceeded, "brute force cap " + std::to_string(kBruteForceCapVars) +
                                     " exceeded (n=" + std::to_string(n) + ")");
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[nodes[i]] = i;
    std::vector<std::pair<std::uint32_t, V>> terms;
    for (const auto& [e, c] : inst.edge_cost) {
        std::uint32_t m = 0;
        for (int v : e) m |= std::uint32_t{1} << pos[v];
        terms.emplace_back(m, c);
    }
    for (const auto& [v, c] : inst.node_cost) terms.emplace_back(std::uint32_t{1} << pos[v], c);

    const std::uint64_t total = std::uint64_t{1} << n;
    V best{};
    std::uint32_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        V val{};
        for (const auto& [sup, c] : terms)
            if ((mask & sup) == sup) val += c;
        if (mask == 0) {
            best = val;
            continue;
        }
        const auto m32 = static_cast<std::uint32_t>(mask);
        if (strictly_better(val, best)) {
            best = val;
            best_mask = m32;
        } else if (ValueTies<V>::tie(val, best) && bpo_detail::lex_less(m32, best_mask)) {
            best_mask = m32;
        }
    }
    BpoSolution<V> out;
    out.value = best;
    for (int i = 0; i < n; ++i) out.assignment[nodes[i]] = (best_mask >> i) & 1;
    return out;
}

// Dynamic programming over a tree decomposition of the intersection graph of
// the instance hypergraph. Every term is charged once, at the smallest bag
// index containing its support; forget-minimization keeps the first optimum
// in ascending assignment order, so ties resolve toward 0 bits.
template <class V>
BpoSolution<V> solve_treedp(const BpoInstance<V>& inst, const TreeDecomposition& td) {
    validate_bpo(inst);
    if (auto bad = validate(td, intersection_graph(inst.graph)))
        fail(Errc::invalid_argument, "invalid decomposition: " + *bad);
    const int m = static_cast<int>(td.bags.size());

    // Charge each term at its assigned bag.
    struct Term {
        std::vector<int> support;
        V cost;
    };
    std::vector<std::vector<Term>> charged(m);
    auto assign_term = [&](const std::vector<int>& sup, const V& cost) {
        for (int i = 0; i < m; ++i) {
            if (std::includes(td.bags[i].begin(), td.bags[i].end(), sup.begin(), sup.end())) {
                charged[i].push_back({sup, cost});
                return;
            }
        }
        fail(Errc::invalid_argument, "monomial support not contained in any bag");
    };
    for (const auto& [e, c] : inst.edge_cost) assign_term(e, c);
    for (const auto& [v, c] : inst.node_cost) assign_term({v}, c);

    // Root at bag 0, children via BFS.
    std::vector<std::vector<int>> tadj(m);
    for (const auto& [a, b] : td.tree_edges) {
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    std::vector<int> parent(m, -1), order;
    order.reserve(m);
    {
        std::vector<bool> seen(m, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            order.push_back(i);
            for (int j : tadj[i])
                if (!seen[j]) {
                    seen[j] = true;
                    parent[j] = i;
                    stack.push_back(j);
                }
        }
    }

    std::vector<std::vector<V>> table(m);
    // For each bag, the separator-indexed best child assignment (traceback).
    std::vector<std::vector<std::uint32_t>> best_child_assign(m);
    std::vector<std::vector<V>> message(m);
    std::vector<std::vector<int>> sep_positions(m);  // child-local bit -> separator bit or -1

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int i = *it;
        const auto& bag = td.bags[i];
        const int w = static_cast<int>(bag.size());
        const std::uint32_t states = std::uint32_t{1} << w;
        table[i].assign(states, V{});
        // Charged costs.
        for (std::uint32_t a = 0; a < states; ++a) {
            V val{};
            for (const auto& t : charged[i]) {
                bool all = true;
                for (int v : t.support) {
                    const int p = static_cast<int>(
                        std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
                    if (!((a >> p) & 1)) {
                        all = false;
                        break;
                    }
                }
                if (all) val += t.cost;
            }
            table[i][a] = val;
        }
        // Fold children messages.
        for (int c : tadj[i]) {
            if (c == parent[i] || parent[c] != i) continue;
            const auto& cbag = td.bags[c];
            std::vector<int> sep;
            std::set_intersection(bag.begin(), bag.end(), cbag.begin(), cbag.end(),
                                  std::back_inserter(sep));
            const int sw = static_cast<int>(sep.size());
            // child-local bit -> separator bit
            sep_positions[c].assign(cbag.size(), -1);
            for (std::size_t p = 0; p < cbag.size(); ++p) {
                auto sit = std::lower_bound(sep.begin(), sep.end(), cbag[p]);
                if (sit != sep.end() && *sit == cbag[p])
                    sep_positions[c][p] = static_cast<int>(sit - sep.begin());
            }
            const std::uint32_t sep_states = std::uint32_t{1} << sw;
            message[c].assign(sep_states, V{});
            best_child_assign[c].assign(sep_states, 0);
            std::vector<bool> filled(sep_states, false);
            const std::uint32_t cstates = std::uint32_t{1} << cbag.size();
            for (std::uint32_t ca = 0; ca < cstates; ++ca) {
                std::uint32_t b = 0;
                for (std::size_t p = 0; p < cbag.size(); ++p)
                    if (sep_positions[c][p] >= 0 && ((ca >> p) & 1))
                        b |= std::uint32_t{1} << sep_positions[c][p];
                if (!filled[b] || strictly_better(table[c][ca], message[c][b])) {
                    filled[b] = true;
                    message[c][b] = table[c][ca];
                    best_child_assign[c][b] = ca;
                }
            }
            // parent-local bit -> separator bit, then add message.
            std::vector<int> psep(bag.size(), -1);
            for (std::size_t p = 0; p < bag.size(); ++p) {
                auto sit = std::lower_bound(sep.begin(), sep.end(), bag[p]);
                if (sit != sep.end() && *sit == bag[p])
                    psep[p] = static_cast<int>(sit - sep.begin());
            }
            for (std::uint32_t a = 0; a < states; ++a) {
                std::uint32_t b = 0;
                for (std::size_t p = 0; p < bag.size(); ++p)
                    if (psep[p] >= 0 && ((a >> p) & 1)) b |= std::uint32_t{1} << psep[p];
                table[i][a] += message[c][b];
            }
        }
    }

    // Root optimum, then walk down reusing the recorded child argmins.
    const auto& rbag = td.bags[0];
    std::uint32_t root_best = 0;
    for (std::uint32_t a = 1; a < (std::uint32_t{1} << rbag.size()); ++a)
        if (strictly_better(table[0][a], table[0][root_best])) root_best = a;

    BpoSolution<V> out;
    out.value = table[0][root_best];
    std::vector<std::pair<int, std::uint32_t>> stack{{0, root_best}};
    while (!stack.empty()) {
        auto [i, a] = stack.back();
        stack.pop_back();
        const auto& bag = td.bags[i];
        for (std::size_t p = 0; p < bag.size(); ++p) out.assignment[bag[p]] = (a >> p) & 1;
        for (int c : tadj[i]) {
            if (parent[c] != i) continue;
            std::uint32_t b = 0;
            const auto& cbag = td.bags[c];
            // parent assignment restricted to the separator
            for (std::size_t p = 0; p < bag.size(); ++p) {
                auto sit = std::find(cbag.begin(), cbag.end(), bag[p]);
                if (sit == cbag.end()) continue;
                const int cpos = static_cast<int>(sit - cbag.begin());
                if (sep_positions[c][cpos] >= 0 && ((a >> p) & 1))
                    b |= std::uint32_t{1} << sep_positions[c][cpos];
            }
            stack.emplace_back(c, best_child_assign[c][b]);
        }
    }
    // Nodes never mentioned by any bag cannot occur (bags cover V).
    return out;
}

// --- JSON (exact instances) ---------------------------------------------------

BpoInstance<Rat> bpo_from_json(const std::string& text);
std::string bpo_to_json(const BpoInstance<Rat>& inst);

}  // namespace boxpoly
