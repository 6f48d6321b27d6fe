#include "treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_set>

#include <json.hpp>

#include "errors.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

// --- validation -----------------------------------------------------------------

std::optional<std::string> validate(const TreeDecomposition& td, const Graph& g) {
    const int m = static_cast<int>(td.bags.size());
    if (m == 0) return "decomposition has no bags";
    // Tree-ness.
    if (td.tree_edges.size() != static_cast<std::size_t>(m - 1))
        return "tree must have exactly bags-1 edges";
    std::vector<std::vector<int>> tadj(m);
    for (const auto& [a, b] : td.tree_edges) {
        if (a < 0 || a >= m || b < 0 || b >= m || a == b) return "tree edge out of range";
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    {
        std::vector<bool> seen(m, false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : tadj[v])
                if (!seen[u]) {
                    seen[u] = true;
                    ++cnt;
                    q.push(u);
                }
        }
        if (cnt != m) return "tree is not connected";
    }
    // Condition 1: bags cover the node set.
    std::set<int> covered;
    for (const auto& bag : td.bags) covered.insert(bag.begin(), bag.end());
    if (covered != g.nodes()) return "union of bags differs from node set";
    // Condition 2: every edge inside some bag.
    std::vector<std::set<int>> bagsets;
    bagsets.reserve(td.bags.size());
    for (const auto& bag : td.bags) bagsets.emplace_back(bag.begin(), bag.end());
    for (const auto& [u, v] : g.edges()) {
        bool found = false;
        for (const auto& bag : bagsets)
            if (bag.count(u) && bag.count(v)) {
                found = true;
                break;
            }
        if (!found)
            return "edge {" + std::to_string(u) + "," + std::to_string(v) + "} not covered by any bag";
    }
    // Condition 3: occurrence bags of each node induce a connected subtree.
    for (int v : g.nodes()) {
        std::vector<int> occ;
        for (int i = 0; i < m; ++i)
            if (bagsets[i].count(v)) occ.push_back(i);
        std::set<int> occset(occ.begin(), occ.end());
        std::set<int> seen;
        std::queue<int> q;
        q.push(occ[0]);
        seen.insert(occ[0]);
        while (!q.empty()) {
            int b = q.front();
            q.pop();
            for (int u : tadj[b])
                if (occset.count(u) && seen.insert(u).second) q.push(u);
        }
        if (seen.size() != occ.size())
            return "occurrence bags of node " + std::to_string(v) + " are not connected";
    }
    return std::nullopt;
}

// --- elimination-order machinery ---------------------------------------------------

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    std::map<int, std::set<int>> adj;
    for (int v : g.nodes()) adj[v] = g.neighbors(v);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

    TreeDecomposition td;
    std::vector<std::set<int>> elim_nbrs(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        const std::set<int> nb = adj[v];
        elim_nbrs[i] = nb;
        std::vector<int> bag(nb.begin(), nb.end());
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        for (int u : nb) {
            adj[u].erase(v);
            for (int w : nb)
                if (u != w) adj[u].insert(w);
        }
        adj.erase(v);
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        int parent = -1;
        for (int u : elim_nbrs[i]) {
            int pu = pos[u];
            if (parent == -1 || pu < parent) parent = pu;
        }
        if (parent == -1) parent = static_cast<int>(i) + 1;  // link lone bags forward
        td.tree_edges.emplace_back(static_cast<int>(i), parent);
    }
    if (order.empty()) td.bags.push_back({});
    return td;
}

namespace {

// Min-fill elimination order; returns (order, width observed).
std::pair<std::vector<int>, int> min_fill_order(const Graph& g) {
    std::map<int, std::set<int>> adj;
    for (int v : g.nodes()) adj[v] = g.neighbors(v);
    std::vector<int> order;
    order.reserve(g.node_count());
    int width = -1;
    while (!adj.empty()) {
        int best = -1;
        long best_fill = -1;
        std::size_t best_deg = 0;
        for (const auto& [v, nb] : adj) {
            long fill = 0;
            for (auto i = nb.begin(); i != nb.end(); ++i) {
                auto j = i;
                for (++j; j != nb.end(); ++j)
                    if (!adj[*i].count(*j)) ++fill;
            }
            if (best == -1 || fill < best_fill ||
                (fill == best_fill && nb.size() < best_deg) ||
                (fill == best_fill && nb.size() == best_deg && v < best)) {
                best = v;
                best_fill = fill;
                best_deg = nb.size();
            }
        }
        const std::set<int> nb = adj[best];
        width = std::max(width, static_cast<int>(nb.size()));
        for (int u : nb) {
            adj[u].erase(best);
            for (int w : nb)
                if (u != w) adj[u].insert(w);
        }
        adj.erase(best);
        order.push_back(best);
    }
    return {order, width};
}

}  // namespace

TreeDecomposition heuristic_decomposition(const Graph& g) {
    auto [order, width] = min_fill_order(g);
    return decomposition_from_order(g, order);
}

// --- exact search ------------------------------------------------------------------

namespace {

struct DenseGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;
    std::vector<int> labels;  // dense index -> original node label
};

DenseGraph densify(const Graph& g, const std::set<int>& comp) {
    DenseGraph d;
    d.labels.assign(comp.begin(), comp.end());
    d.n = static_cast<int>(d.labels.size());
    std::map<int, int> idx;
    for (int i = 0; i < d.n; ++i) idx[d.labels[i]] = i;
    d.adj.assign(d.n, 0);
    for (int v : comp)
        for (int u : g.neighbors(v))
            if (comp.count(u)) d.adj[idx[v]] |= std::uint64_t{1} << idx[u];
    return d;
}

inline std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Neighbors of the eliminated-set component of v: all u outside S (and != v)
// reachable from v through vertices of S.
std::uint64_t fill_neighbors(const DenseGraph& g, std::uint64_t s, int v) {
    std::uint64_t inside = bit(v);
    std::uint64_t nbrs = g.adj[v];
    std::uint64_t frontier = nbrs & s & ~inside;
    while (frontier) {
        inside |= frontier;
        std::uint64_t acc = 0;
        std::uint64_t f = frontier;
        while (f) {
            int u = std::countr_zero(f);
            f &= f - 1;
            acc |= g.adj[u];
        }
        nbrs |= acc;
        frontier = nbrs & s & ~inside;
    }
    return nbrs & ~s & ~bit(v);
}

struct DecideContext {
    const DenseGraph* g;
    int k;
    std::unordered_set<std::uint64_t> failed;
    std::vector<int> order;  // dense indices, filled on success
};

bool decide_rec(DecideContext& ctx, std::uint64_t s) {
    const DenseGraph& g = *ctx.g;
    const std::uint64_t all = (g.n == 64) ? ~std::uint64_t{0} : (bit(g.n) - 1);
    std::uint64_t remaining = all & ~s;
    const int rem = std::popcount(remaining);
    if (rem <= ctx.k + 1) {  // eliminate the rest in any order
        while (remaining) {
            int v = std::countr_zero(remaining);
            remaining &= remaining - 1;
            ctx.order.push_back(v);
        }
        return true;
    }
    if (ctx.failed.count(s)) return false;

    std::vector<std::uint64_t> q(static_cast<std::size_t>(g.n), 0);
    std::uint64_t rest = remaining;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        q[v] = fill_neighbors(g, s, v);
    }
    // Simplicial rule: if the fill-neighborhood of v is a clique, v can be
    // eliminated first; if that clique is too big, no order below k exists.
    rest = remaining;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        bool clique = true;
        std::uint64_t qs = q[v];
        while (qs && clique) {
            int u = std::countr_zero(qs);
            qs &= qs - 1;
            if ((q[v] & ~bit(u) & ~q[u]) != 0) clique = false;
        }
        if (!clique) continue;
        if (std::popcount(q[v]) > ctx.k) {
            ctx.failed.insert(s);
            return false;
        }
        ctx.order.push_back(v);
        if (decide_rec(ctx, s | bit(v))) return true;
        ctx.order.pop_back();
        ctx.failed.insert(s);
        return false;
    }

    std::vector<std::pair<int, int>> cands;  // (|Q|, v)
    rest = remaining;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        int sz = std::popcount(q[v]);
        if (sz <= ctx.k) cands.emplace_back(sz, v);
    }
    std::sort(cands.begin(), cands.end());
    for (const auto& [sz, v] : cands) {
        ctx.order.push_back(v);
        if (decide_rec(ctx, s | bit(v))) return true;
        ctx.order.pop_back();
    }
    ctx.failed.insert(s);
    return false;
}

// Decides tw(component) <= k; on success, appends an elimination order in
// original labels.
bool decide_component(const DenseGraph& g, int k, std::vector<int>* order_out) {
    DecideContext ctx;
    ctx.g = &g;
    ctx.k = k;
    if (!decide_rec(ctx, 0)) return false;
    if (order_out)
        for (int v : ctx.order) order_out->push_back(g.labels[v]);
    return true;
}

int mmd_lower_bound_component(const Graph& g, const std::set<int>& comp) {
    std::map<int, std::set<int>> adj;
    for (int v : comp) {
        std::set<int> nb;
        for (int u : g.neighbors(v))
            if (comp.count(u)) nb.insert(u);
        adj[v] = std::move(nb);
    }
    int lb = 0;
    while (adj.size() >= 2) {
        int v = -1;
        std::size_t vdeg = 0;
        for (const auto& [w, nb] : adj)
            if (v == -1 || nb.size() < vdeg) {
                v = w;
                vdeg = nb.size();
            }
        lb = std::max(lb, static_cast<int>(vdeg));
        if (vdeg == 0) {
            adj.erase(v);
            continue;
        }
        int u = -1;
        std::size_t udeg = 0;
        for (int w : adj[v])
            if (u == -1 || adj[w].size() < udeg) {
                u = w;
                udeg = adj[w].size();
            }
        // Contract v into u.
        for (int w : adj[v]) {
            adj[w].erase(v);
            if (w != u) {
                adj[w].insert(u);
                adj[u].insert(w);
            }
        }
        adj.erase(v);
    }
    return lb;
}

}  // namespace

int treewidth_lower_bound(const Graph& g) {
    int lb = 0;
    for (const auto& comp : g.connected_components())
        lb = std::max(lb, mmd_lower_bound_component(g, comp));
    return lb;
}

ExactTreewidth exact_treewidth(const Graph& g, int budget) {
    if (static_cast<int>(g.node_count()) > budget)
        fail(Errc::cap_exceeded, "exact treewidth budget " + std::to_string(budget) +
                                     " exceeded (n=" + std::to_string(g.node_count()) + ")");
    if (g.nodes().empty()) {
        TreeDecomposition td;
        td.bags.push_back({});
        return {-1, td};
    }
    std::vector<int> order;
    int width = 0;
    for (const auto& comp : g.connected_components()) {
        if (comp.size() > 64) fail(Errc::cap_exceeded, "component too large for exact search");
        DenseGraph d = densify(g, comp);
        Graph sub = g.induced(comp);
        auto [mf_order, mf_width] = min_fill_order(sub);
        int lb = mmd_lower_bound_component(g, comp);
        int k = lb;
        std::vector<int> comp_order;
        while (k < mf_width) {
            comp_order.clear();
            if (decide_component(d, k, &comp_order)) break;
            ++k;
        }
        if (k >= mf_width) {
            k = mf_width;
            comp_order = mf_order;
        }
        width = std::max(width, k);
        order.insert(order.end(), comp_order.begin(), comp_order.end());
    }
    TreeDecomposition td = decomposition_from_order(g, order);
    return {width, td};
}

WidthCheck check_width_at_most(const Graph& g, int k, int exact_budget) {
    WidthCheck out;
    out.lower_bound = treewidth_lower_bound(g);
    if (g.nodes().empty()) {
        out.verdict = WidthCheck::Verdict::yes;
        TreeDecomposition td;
        td.bags.push_back({});
        out.certificate = td;
        out.heuristic_width = -1;
        return out;
    }
    if (static_cast<int>(g.node_count()) <= exact_budget) {
        std::vector<int> order;
        bool ok = true;
        for (const auto& comp : g.connected_components()) {
            DenseGraph d = densify(g, comp);
            if (!decide_component(d, k, &order)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            TreeDecomposition td = decomposition_from_order(g, order);
            out.heuristic_width = td.width();
            out.verdict = WidthCheck::Verdict::yes;
            out.certificate = std::move(td);
        } else {
            out.verdict = WidthCheck::Verdict::no;
        }
        return out;
    }
    TreeDecomposition td = heuristic_decomposition(g);
    out.heuristic_width = td.width();
    if (td.width() <= k) {
        out.verdict = WidthCheck::Verdict::yes;
        out.certificate = std::move(td);
    } else if (out.lower_bound > k) {
        out.verdict = WidthCheck::Verdict::no;
    } else {
        out.verdict = WidthCheck::Verdict::unknown;
    }
    return out;
}

std::string decomposition_to_json(const TreeDecomposition& td) {
    ordered_json doc;
    doc["width"] = td.width();
    doc["bags"] = td.bags;
    doc["tree_edges"] = ordered_json::array();
    for (const auto& [a, b] : td.tree_edges) doc["tree_edges"].push_back(ordered_json::array({a, b}));
    return doc.dump();
}

}  // namespace boxpoly
