#include "structure.hpp"

#include <algorithm>
#include <queue>

#include <json.hpp>

#include "errors.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

const std::set<int> Graph::kEmpty;

Graph Graph::with_nodes(int n) {
    Graph g;
    for (int v = 0; v < n; ++v) g.nodes_.insert(v);
    return g;
}

void Graph::add_edge(int u, int v) {
    if (u == v) fail(Errc::invalid_argument, "self-loop");
    if (!nodes_.count(u) || !nodes_.count(v)) fail(Errc::invalid_argument, "edge references missing node");
    adj_[u].insert(v);
    adj_[v].insert(u);
}

bool Graph::has_edge(int u, int v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) > 0;
}

const std::set<int>& Graph::neighbors(int v) const {
    auto it = adj_.find(v);
    return it == adj_.end() ? kEmpty : it->second;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [v, nb] : adj_) twice += nb.size();
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [v, nb] : adj_)
        for (int u : nb)
            if (v < u) out.emplace_back(v, u);
    return out;
}

std::set<int> Graph::neighborhood_of_set(const std::set<int>& c) const {
    std::set<int> out;
    for (int v : c)
        for (int u : neighbors(v))
            if (!c.count(u)) out.insert(u);
    return out;
}

bool Graph::induces_connected(const std::set<int>& c) const {
    if (c.empty()) return true;
    std::set<int> seen;
    std::queue<int> q;
    q.push(*c.begin());
    seen.insert(*c.begin());
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : neighbors(v))
            if (c.count(u) && seen.insert(u).second) q.push(u);
    }
    return seen.size() == c.size();
}

std::vector<std::set<int>> Graph::connected_components() const {
    std::vector<std::set<int>> out;
    std::set<int> seen;
    for (int start : nodes_) {
        if (seen.count(start)) continue;
        std::set<int> comp;
        std::queue<int> q;
        q.push(start);
        comp.insert(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : neighbors(v))
                if (comp.insert(u).second) q.push(u);
        }
        seen.insert(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Graph Graph::induced(const std::set<int>& c) const {
    Graph g(c);
    for (int v : c)
        for (int u : neighbors(v))
            if (v < u && c.count(u)) g.add_edge(v, u);
    return g;
}

bool Graph::operator==(const Graph& other) const {
    if (nodes_ != other.nodes_) return false;
    return edges() == other.edges();
}

Hypergraph Hypergraph::with_nodes(int n) {
    Hypergraph h;
    for (int v = 0; v < n; ++v) h.nodes_.insert(v);
    return h;
}

void Hypergraph::add_edge(std::vector<int> edge) {
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    if (edge.size() < 2) fail(Errc::invalid_argument, "hyperedge needs at least two nodes");
    for (int v : edge)
        if (!nodes_.count(v)) fail(Errc::invalid_argument, "hyperedge references missing node");
    edges_.insert(std::move(edge));
}

// --- construction from polynomials ---------------------------------------------

Graph interaction_graph(const Polynomial& p) {
    if (p.degree() > 2) fail(Errc::degree, "interaction graph requires degree <= 2");
    Graph g = Graph::with_nodes(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        const auto& e = m.exps();
        if (e.size() == 2) g.add_edge(e[0].first, e[1].first);
    }
    return g;
}

Hypergraph interaction_hypergraph(const Polynomial& p) {
    Hypergraph h = Hypergraph::with_nodes(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        auto sup = m.support();
        if (sup.size() >= 2) h.add_edge(std::move(sup));
    }
    return h;
}

// --- derived graphs --------------------------------------------------------------

Graph intersection_graph(const Hypergraph& h) {
    Graph g(h.nodes());
    for (const auto& e : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) g.add_edge(e[i], e[j]);
    return g;
}

Graph incidence_graph(const Hypergraph& h) {
    Graph g(h.nodes());
    int offset = h.nodes().empty() ? 0 : *h.nodes().rbegin() + 1;
    int rank = 0;
    for (const auto& e : h.edges()) {  // std::set iterates in sorted-edge lex order
        int enode = offset + rank++;
        g.add_node(enode);
        for (int v : e) g.add_edge(v, enode);
    }
    return g;
}

// --- subsets, components, neighborhoods --------------------------------------------

Hypergraph induced_subhypergraph(const Hypergraph& h, const std::set<int>& c) {
    for (int v : c)
        if (!h.nodes().count(v)) fail(Errc::invalid_argument, "induced set not within nodes");
    Hypergraph out(c);
    for (const auto& e : h.edges()) {
        std::vector<int> cut;
        for (int v : e)
            if (c.count(v)) cut.push_back(v);
        if (cut.size() >= 2) out.add_edge(std::move(cut));
    }
    return out;
}

std::vector<std::set<int>> connected_components(const Hypergraph& h) {
    // Union via the primal view: nodes sharing an edge are linked.
    return intersection_graph(h).connected_components();
}

std::set<int> neighborhood(const Hypergraph& h, const std::set<int>& c) {
    for (int v : c)
        if (!h.nodes().count(v)) fail(Errc::invalid_argument, "neighborhood set not within nodes");
    std::set<int> out;
    for (const auto& e : h.edges()) {
        bool meets = false;
        for (int v : e)
            if (c.count(v)) {
                meets = true;
                break;
            }
        if (!meets) continue;
        for (int v : e)
            if (!c.count(v)) out.insert(v);
    }
    return out;
}

// --- component elimination -----------------------------------------------------------

Graph eliminate_component_graph(const Graph& g, const std::set<int>& c) {
    for (int v : c)
        if (!g.nodes().count(v)) fail(Errc::invalid_argument, "component not within nodes");
    if (!g.induced(c).induces_connected(c))
        fail(Errc::invalid_argument, "component does not induce a connected subgraph");
    std::set<int> nc = g.neighborhood_of_set(c);
    std::set<int> rest;
    for (int v : g.nodes())
        if (!c.count(v)) rest.insert(v);
    Graph out = g.induced(rest);
    for (auto i = nc.begin(); i != nc.end(); ++i)
        for (auto j = std::next(i); j != nc.end(); ++j) out.add_edge(*i, *j);
    return out;
}

Hypergraph eliminate_component_hypergraph(const Hypergraph& h, const std::set<int>& c) {
    for (int v : c)
        if (!h.nodes().count(v)) fail(Errc::invalid_argument, "component not within nodes");
    if (connected_components(induced_subhypergraph(h, c)).size() > 1)
        fail(Errc::invalid_argument, "component does not induce a connected subhypergraph");
    std::set<int> nc = neighborhood(h, c);
    if (static_cast<int>(nc.size()) > kCompleteNeighborhoodCap)
        fail(Errc::cap_exceeded, "complete hypergraph on |N(C)|=" + std::to_string(nc.size()) +
                                     " exceeds cap " + std::to_string(kCompleteNeighborhoodCap));
    std::set<int> keep;
    for (int v : h.nodes())
        if (!c.count(v)) keep.insert(v);
    Hypergraph out(keep);
    for (const auto& e : h.edges()) {
        std::vector<int> residual;
        for (int v : e)
            if (!c.count(v)) residual.push_back(v);
        if (residual.size() >= 2) out.add_edge(std::move(residual));
    }
    // Complete hypergraph on N(C): every subset of size >= 2.
    std::vector<int> nb(nc.begin(), nc.end());
    const std::size_t total = std::size_t{1} << nb.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<int> f;
        for (std::size_t j = 0; j < nb.size(); ++j)
            if (mask & (std::size_t{1} << j)) f.push_back(nb[j]);
        out.add_edge(std::move(f));
    }
    return out;
}

// --- serialization ---------------------------------------------------------------------

std::string graph_to_json(const Graph& g) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (int v : g.nodes()) doc["nodes"].push_back(v);
    doc["edges"] = ordered_json::array();
    for (const auto& [u, v] : g.edges()) doc["edges"].push_back(ordered_json::array({u, v}));
    return doc.dump();
}

std::string hypergraph_to_json(const Hypergraph& h) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (int v : h.nodes()) doc["nodes"].push_back(v);
    doc["edges"] = ordered_json::array();
    for (const auto& e : h.edges()) doc["edges"].push_back(e);
    return doc.dump();
}

}  // namespace boxpoly
