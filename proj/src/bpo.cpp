#include "bpo.hpp"

#include <json.hpp>

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

BpoInstance<Rat> bpo_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edge_costs") ||
        !doc.contains("node_costs"))
        fail(Errc::parse, "expected {\"nodes\", \"edge_costs\", \"node_costs\"}");
    BpoInstance<Rat> inst;
    for (const auto& v : doc["nodes"]) inst.graph.add_node(v.get<int>());
    for (const auto& ec : doc["edge_costs"]) {
        if (!ec.is_object() || !ec.contains("edge") || !ec.contains("cost"))
            fail(Errc::parse, "edge cost entries need {\"edge\", \"cost\"}");
        std::vector<int> e = ec["edge"].get<std::vector<int>>();
        std::sort(e.begin(), e.end());
        inst.graph.add_edge(e);
        inst.edge_cost[e] = rat_from_string(ec["cost"].get<std::string>());
    }
    for (const auto& nc : doc["node_costs"]) {
        if (!nc.is_array() || nc.size() != 2)
            fail(Errc::parse, "node cost entries are [node, cost] pairs");
        inst.node_cost[nc[0].get<int>()] = rat_from_string(nc[1].get<std::string>());
    }
    validate_bpo(inst);
    return inst;
}

std::string bpo_to_json(const BpoInstance<Rat>& inst) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (int v : inst.graph.nodes()) doc["nodes"].push_back(v);
    doc["edge_costs"] = ordered_json::array();
    for (const auto& [e, c] : inst.edge_cost) {
        ordered_json entry;
        entry["edge"] = e;
        entry["cost"] = rat_to_string(c);
        doc["edge_costs"].push_back(std::move(entry));
    }
    doc["node_costs"] = ordered_json::array();
    for (const auto& [v, c] : inst.node_cost)
        doc["node_costs"].push_back(ordered_json::array({v, rat_to_string(c)}));
    return doc.dump();
}

}  // namespace boxpoly
