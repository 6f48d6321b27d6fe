#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace boxpoly {

// Simple undirected graph over an explicit (possibly non-contiguous) node set.
// Labels stay stable across removals, which elimination sequences rely on.
class Graph {
public:
    Graph() = default;
    explicit Graph(const std::set<int>& nodes) : nodes_(nodes) {}
    static Graph with_nodes(int n);

    void add_node(int v) { nodes_.insert(v); }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    const std::set<int>& nodes() const { return nodes_; }
    const std::set<int>& neighbors(int v) const;
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // sorted pairs u < v

    std::set<int> neighborhood_of_set(const std::set<int>& c) const;
    bool induces_connected(const std::set<int>& c) const;
    std::vector<std::set<int>> connected_components() const;
    Graph induced(const std::set<int>& c) const;

    bool operator==(const Graph& other) const;

private:
    std::set<int> nodes_;
    std::map<int, std::set<int>> adj_;
    static const std::set<int> kEmpty;
};

// Hypergraph: node set plus deduplicated edges of cardinality >= 2, each
// stored as a sorted vector.
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(const std::set<int>& nodes) : nodes_(nodes) {}
    static Hypergraph with_nodes(int n);

    void add_node(int v) { nodes_.insert(v); }
    void add_edge(std::vector<int> edge);  // sorts, dedups nodes; |e| >= 2 after

    const std::set<int>& nodes() const { return nodes_; }
    const std::set<std::vector<int>>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool operator==(const Hypergraph& other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

private:
    std::set<int> nodes_;
    std::set<std::vector<int>> edges_;
};

// V-/V+ partition with the connected components of the continuous part and
// their neighborhoods in the full structure.
struct ComponentReport {
    std::set<int> vminus;
    std::set<int> vplus;
    std::vector<std::set<int>> components;     // partition of vplus
    std::vector<std::set<int>> neighborhoods;  // aligned with components
    int dmax = 0;                              // max |N(C)|
};

// --- construction from polynomials ------------------------------------------

// Node per variable; edge {i,j} iff the x_i x_j coefficient is nonzero.
// Requires degree <= 2.
Graph interaction_graph(const Polynomial& p);

// One edge per distinct monomial support of cardinality >= 2.
Hypergraph interaction_hypergraph(const Polynomial& p);

// --- derived graphs -----------------------------------------------------------

// Nodes of h; i ~ j iff both lie in a common edge (primal graph).
Graph intersection_graph(const Hypergraph& h);

// Bipartite node-edge graph. Variable nodes keep their labels; the node for
// an edge gets id (1 + max node label) + rank of the edge in sorted-edge
// lexicographic order.
Graph incidence_graph(const Hypergraph& h);

// --- subsets, components, neighborhoods ---------------------------------------

// Induced subhypergraph: E_C = {e cap C : e in E, |e cap C| >= 2}.
Hypergraph induced_subhypergraph(const Hypergraph& h, const std::set<int>& c);

// Maximal node sets inducing connected subhypergraphs; nodes in no edge form
// singleton components.
std::vector<std::set<int>> connected_components(const Hypergraph& h);

// N(C) = {u not in C : some edge contains u and meets C}.
std::set<int> neighborhood(const Hypergraph& h, const std::set<int>& c);

// --- component elimination ------------------------------------------------------

// Removes the connected set c and makes N(C) a clique.
Graph eliminate_component_graph(const Graph& g, const std::set<int>& c);

// Hypergraph removal G-C := (V\C, {e\C : |e\C| >= 2}) followed by adding the
// complete hypergraph on N(C). 2^|N(C)| edges are materialized, so |N(C)| is
// capped.
inline constexpr int kCompleteNeighborhoodCap = 24;
Hypergraph eliminate_component_hypergraph(const Hypergraph& h, const std::set<int>& c);

// --- serialization ---------------------------------------------------------------

std::string graph_to_json(const Graph& g);
std::string hypergraph_to_json(const Hypergraph& h);

}  // namespace boxpoly
