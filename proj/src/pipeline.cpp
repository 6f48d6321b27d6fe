#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int auto_log_bound(int n) {
    int b = 0;
    while ((1 << b) < std::max(n, 1)) ++b;  // ceil(log2 n)
    return b + 4;
}

}  // namespace

Bounds Bounds::resolved(int n, int degree) const {
    Bounds r = *this;
    if (r.tw_max < 0) r.tw_max = auto_log_bound(n);
    if (r.itw_max < 0) r.itw_max = auto_log_bound(n);
    if (r.nbr_max < 0) r.nbr_max = auto_log_bound(n);
    if (r.block_max < 0) r.block_max = degree <= 2 ? 20 : 4;
    return r;
}

Decomposition decompose(const Polynomial& p, const std::set<int>& vminus,
                        const std::set<int>& vplus) {
    if (static_cast<int>(vminus.size() + vplus.size()) != p.nvars())
        fail(Errc::invalid_argument, "partition must cover all variables");
    for (int v : vminus) {
        if (v < 0 || v >= p.nvars()) fail(Errc::invalid_argument, "partition index out of range");
        if (vplus.count(v)) fail(Errc::invalid_argument, "partition sets overlap");
    }
    for (int v : vplus)
        if (v < 0 || v >= p.nvars()) fail(Errc::invalid_argument, "partition index out of range");

    const Hypergraph h = interaction_hypergraph(p);
    Decomposition dec;
    dec.report.vminus = vminus;
    dec.report.vplus = vplus;
    dec.report.components = connected_components(induced_subhypergraph(h, vplus));
    dec.report.dmax = 0;
    std::map<int, int> component_of;
    for (std::size_t i = 0; i < dec.report.components.size(); ++i) {
        const auto& comp = dec.report.components[i];
        dec.report.neighborhoods.push_back(neighborhood(h, comp));
        dec.report.dmax =
            std::max(dec.report.dmax, static_cast<int>(dec.report.neighborhoods.back().size()));
        for (int v : comp) component_of[v] = static_cast<int>(i);
    }

    dec.f_minus = Polynomial(p.nvars());
    std::vector<Polynomial> block_objectives(dec.report.components.size(), Polynomial(p.nvars()));
    for (const auto& [m, c] : p.terms()) {
        int target = -1;
        for (const auto& [v, e] : m.exps()) {
            if (!vplus.count(v)) continue;
            const int comp = component_of.at(v);
            if (target == -1) {
                target = comp;
            } else if (target != comp) {
                fail(Errc::internal, "monomial support meets two components");
            }
        }
        if (target == -1)
            dec.f_minus.add_term(m, c);
        else
            block_objectives[target].add_term(m, c);
    }

    Polynomial sum = dec.f_minus;
    for (std::size_t i = 0; i < block_objectives.size(); ++i) {
        BlockProblem bp;
        bp.objective = block_objectives[i];
        bp.cont_vars.assign(dec.report.components[i].begin(), dec.report.components[i].end());
        bp.bin_vars.assign(dec.report.neighborhoods[i].begin(), dec.report.neighborhoods[i].end());
        sum = sum + bp.objective;
        dec.blocks.push_back(std::move(bp));
    }
    if (!(sum == p)) fail(Errc::internal, "decomposition does not reconstruct the objective");
    return dec;
}

AssumptionCheck check_assumptions(const Polynomial& p, const Bounds& bounds) {
    AssumptionCheck chk;
    chk.n = p.nvars();
    chk.degree = p.degree();
    chk.bounds = bounds.resolved(chk.n, chk.degree);
    chk.partition = chk.degree <= 2 ? detect_quadratic(p) : detect_general(p);
    Decomposition dec = decompose(p, chk.partition.vminus, chk.partition.vplus);
    chk.report = std::move(dec.report);
    chk.block_size_max = 0;
    for (const auto& comp : chk.report.components)
        chk.block_size_max = std::max(chk.block_size_max, static_cast<int>(comp.size()));
    chk.nbr_size_max = chk.report.dmax;

    if (chk.degree <= 2) {
        chk.incidence = false;
        chk.width_bound = chk.bounds.tw_max;
        chk.width = check_width_at_most(interaction_graph(p), chk.width_bound);
    } else {
        chk.incidence = true;
        chk.width_bound = chk.bounds.itw_max;
        chk.width = check_width_at_most(incidence_graph(interaction_hypergraph(p)), chk.width_bound);
    }
    chk.pass = chk.width.verdict == WidthCheck::Verdict::yes &&
               chk.block_size_max <= chk.bounds.block_max && chk.nbr_size_max <= chk.bounds.nbr_max;
    return chk;
}

Solution solve(const Polynomial& p, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Solution sol;
    sol.assumption = check_assumptions(p, opts.bounds);
    sol.diag.ms_analyze = ms_since(t0);
    if (!sol.assumption.pass && !opts.force) {
        std::string why;
        if (sol.assumption.width.verdict != WidthCheck::Verdict::yes)
            why += "width not certified within bound " + std::to_string(sol.assumption.width_bound);
        if (sol.assumption.block_size_max > sol.assumption.bounds.block_max)
            why += std::string(why.empty() ? "" : "; ") + "component of size " +
                   std::to_string(sol.assumption.block_size_max) + " exceeds block_max";
        if (sol.assumption.nbr_size_max > sol.assumption.bounds.nbr_max)
            why += std::string(why.empty() ? "" : "; ") + "neighborhood of size " +
                   std::to_string(sol.assumption.nbr_size_max) + " exceeds nbr_max";
        fail(Errc::assumption, "assumptions not satisfied: " + why);
    }

    sol.exact = p.degree() <= 2;
    sol.diag.n = p.nvars();
    sol.diag.degree = p.degree();
    sol.diag.input_bits = encoding_bits(p);
    sol.diag.interaction_width = sol.assumption.width.certificate
                                     ? sol.assumption.width.certificate->width()
                                     : sol.assumption.width.heuristic_width;
    Decomposition dec = decompose(p, sol.assumption.partition.vminus, sol.assumption.partition.vplus);
    sol.diag.block_count = static_cast<int>(dec.blocks.size());
    sol.diag.block_size_max = sol.assumption.block_size_max;
    sol.diag.nbr_size_max = sol.assumption.nbr_size_max;

    // psi tables per block.
    const auto t_psi = std::chrono::steady_clock::now();
    std::vector<PsiTable> tables;
    tables.reserve(dec.blocks.size());
    for (const auto& bp : dec.blocks) {
        tables.push_back(build_psi_table(bp, sol.exact ? SolveMode::exact : SolveMode::numeric,
                                         opts.tol));
        sol.diag.psi_entries_total += tables.back().size();
        sol.diag.psi_entries_max = std::max(sol.diag.psi_entries_max, tables.back().size());
        sol.diag.psi_gap_bound = std::max(sol.diag.psi_gap_bound, tables.back().gap_bound);
    }
    sol.diag.ms_psi = ms_since(t_psi);

    // Reduced binary problem over V-: f_minus rewritten multilinearly
    // (z^k = z on {0,1}) plus the multilinear interpolant of each psi table.
    const auto t_dp = std::chrono::steady_clock::now();
    const std::set<int>& vminus = sol.assumption.partition.vminus;
    auto support_of = [](const Monomial& m) { return m.support(); };

    BpoSolution<Rat> dp_exact;
    BpoSolution<double> dp_numeric;
    Rat offset_rat(0);
    double offset_num = 0.0;
    TreeDecomposition td;
    if (sol.exact) {
        BpoInstance<Rat> inst;
        for (int v : vminus) inst.graph.add_node(v);
        std::map<std::vector<int>, Rat> edge_acc;
        std::map<int, Rat> node_acc;
        auto add_cost = [&](const std::vector<int>& sup, const Rat& c) {
            if (sup.empty())
                offset_rat += c;
            else if (sup.size() == 1)
                node_acc[sup[0]] += c;
            else
                edge_acc[sup] += c;
        };
        for (const auto& [m, c] : dec.f_minus.terms()) add_cost(support_of(m), c);
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            const Polynomial interp = multilinear_from_table(tables[b].arity, tables[b].rvalues);
            for (const auto& [m, c] : interp.terms()) {
                std::vector<int> sup;
                for (int local : m.support()) sup.push_back(dec.blocks[b].bin_vars[local]);
                std::sort(sup.begin(), sup.end());
                add_cost(sup, c);
            }
        }
        for (const auto& [e, c] : edge_acc) {
            if (c == 0) continue;
            inst.graph.add_edge(e);
            inst.edge_cost[e] = c;
        }
        for (const auto& [v, c] : node_acc)
            if (c != 0) inst.node_cost[v] = c;
        td = heuristic_decomposition(intersection_graph(inst.graph));
        dp_exact = solve_treedp(inst, td);
    } else {
        BpoInstance<double> inst;
        for (int v : vminus) inst.graph.add_node(v);
        std::map<std::vector<int>, double> edge_acc;
        std::map<int, double> node_acc;
        auto add_cost = [&](const std::vector<int>& sup, double c) {
            if (sup.empty())
                offset_num += c;
            else if (sup.size() == 1)
                node_acc[sup[0]] += c;
            else
                edge_acc[sup] += c;
        };
        for (const auto& [m, c] : dec.f_minus.terms()) add_cost(support_of(m), rat_to_double(c));
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            const std::vector<double> coeffs =
                moebius_transform(tables[b].arity, tables[b].fvalues);
            for (std::size_t mask = 0; mask < coeffs.size(); ++mask) {
                if (coeffs[mask] == 0.0) continue;
                std::vector<int> sup;
                for (int j = 0; j < tables[b].arity; ++j)
                    if ((mask >> j) & 1) sup.push_back(dec.blocks[b].bin_vars[j]);
                std::sort(sup.begin(), sup.end());
                add_cost(sup, coeffs[mask]);
            }
        }
        for (const auto& [e, c] : edge_acc) {
            if (c == 0.0) continue;
            inst.graph.add_edge(e);
            inst.edge_cost[e] = c;
        }
        for (const auto& [v, c] : node_acc)
            if (c != 0.0) inst.node_cost[v] = c;
        td = heuristic_decomposition(intersection_graph(inst.graph));
        dp_numeric = solve_treedp(inst, td);
    }
    sol.diag.reduced_width = td.width();
    sol.diag.ms_dp = ms_since(t_dp);

    // Reconstruct the full point: binary coordinates from the DP assignment,
    // continuous coordinates from the psi witnesses.
    if (sol.exact) {
        sol.value_rat = dp_exact.value + offset_rat;
        sol.point_rat.assign(p.nvars(), Rat(0));
        for (const auto& [v, bitv] : dp_exact.assignment) sol.point_rat[v] = bitv;
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            std::size_t z = 0;
            for (int j = 0; j < tables[b].arity; ++j)
                if (dp_exact.assignment.at(dec.blocks[b].bin_vars[j])) z |= std::size_t{1} << j;
            const auto& witness = tables[b].rwitnesses[z];
            for (std::size_t i = 0; i < dec.blocks[b].cont_vars.size(); ++i)
                sol.point_rat[dec.blocks[b].cont_vars[i]] = witness[i];
        }
        if (!(evaluate(p, sol.point_rat) == sol.value_rat))
            fail(Errc::internal, "reconstructed point does not attain the computed value");
    } else {
        sol.value_num = dp_numeric.value + offset_num;
        sol.point_num.assign(p.nvars(), 0.0);
        for (const auto& [v, bitv] : dp_numeric.assignment) sol.point_num[v] = bitv;
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            std::size_t z = 0;
            for (int j = 0; j < tables[b].arity; ++j)
                if (dp_numeric.assignment.at(dec.blocks[b].bin_vars[j])) z |= std::size_t{1} << j;
            const auto& witness = tables[b].fwitnesses[z];
            for (std::size_t i = 0; i < dec.blocks[b].cont_vars.size(); ++i)
                sol.point_num[dec.blocks[b].cont_vars[i]] = witness[i];
        }
        const double check = evaluate(p, sol.point_num);
        if (std::abs(check - sol.value_num) > 1e-9 * (1.0 + std::abs(sol.value_num)))
            fail(Errc::internal, "reconstructed point is inconsistent with the computed value");
    }
    sol.diag.ms_total = ms_since(t0);
    return sol;
}

CertifyReport certify(const Solution& sol, const Polynomial& p) {
    CertifyReport rep;
    if (sol.exact) {
        rep.residual = 0.0;
        rep.value_consistent = evaluate(p, sol.point_rat) == sol.value_rat;
        rep.in_box = true;
        for (const Rat& c : sol.point_rat)
            if (c < 0 || c > 1) rep.in_box = false;
        rep.vminus_binary = true;
        for (int v : sol.assumption.partition.vminus)
            if (sol.point_rat[v] != 0 && sol.point_rat[v] != 1) rep.vminus_binary = false;
    } else {
        const double check = evaluate(p, sol.point_num);
        rep.residual = std::abs(check - sol.value_num);
        rep.value_consistent = rep.residual <= 1e-9 * (1.0 + std::abs(sol.value_num));
        rep.in_box = true;
        for (double c : sol.point_num)
            if (c < 0.0 || c > 1.0) rep.in_box = false;
        rep.vminus_binary = true;
        for (int v : sol.assumption.partition.vminus)
            if (sol.point_num[v] != 0.0 && sol.point_num[v] != 1.0) rep.vminus_binary = false;
    }
    return rep;
}

// --- JSON --------------------------------------------------------------------

namespace {

ordered_json set_to_json(const std::set<int>& s) {
    ordered_json a = ordered_json::array();
    for (int v : s) a.push_back(v);
    return a;
}

ordered_json poly_json(const Polynomial& p) { return ordered_json::parse(serialize_instance(p)); }

ordered_json certificate_json(const BinaryCertificate& cert) {
    ordered_json c;
    c["variable"] = cert.variable;
    c["rule"] = rule_name(cert.rule);
    switch (cert.rule) {
        case BinaryCertificate::Rule::quadratic_diag:
            c["witness"] = rat_to_string(std::get<Rat>(cert.witness));
            break;
        case BinaryCertificate::Rule::concave_coeffs: {
            ordered_json arr = ordered_json::array();
            for (const auto& q : std::get<std::vector<Polynomial>>(cert.witness))
                arr.push_back(poly_json(q));
            c["witness"] = std::move(arr);
            break;
        }
        case BinaryCertificate::Rule::chord_dominance:
            c["witness"] = poly_json(std::get<Polynomial>(cert.witness));
            break;
    }
    return c;
}

const char* verdict_name(WidthCheck::Verdict v) {
    switch (v) {
        case WidthCheck::Verdict::yes: return "yes";
        case WidthCheck::Verdict::no: return "no";
        case WidthCheck::Verdict::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace

std::string report_to_json(const AssumptionCheck& chk, const Polynomial* p) {
    ordered_json doc;
    doc["n"] = chk.n;
    doc["degree"] = chk.degree;
    doc["mode"] = chk.degree <= 2 ? "quadratic" : "general";
    if (p != nullptr) {
        if (chk.degree <= 2)
            doc["interaction_graph"] = ordered_json::parse(graph_to_json(interaction_graph(*p)));
        else
            doc["interaction_hypergraph"] =
                ordered_json::parse(hypergraph_to_json(interaction_hypergraph(*p)));
    }
    ordered_json part;
    part["vminus"] = set_to_json(chk.partition.vminus);
    part["vplus"] = set_to_json(chk.partition.vplus);
    ordered_json certs = ordered_json::array();
    for (const auto& c : chk.partition.certificates) certs.push_back(certificate_json(c));
    part["certificates"] = std::move(certs);
    doc["partition"] = std::move(part);
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < chk.report.components.size(); ++i) {
        ordered_json c;
        c["nodes"] = set_to_json(chk.report.components[i]);
        c["neighborhood"] = set_to_json(chk.report.neighborhoods[i]);
        comps.push_back(std::move(c));
    }
    doc["components"] = std::move(comps);
    doc["dmax"] = chk.report.dmax;
    ordered_json width;
    width["target"] = chk.incidence ? "incidence_graph" : "interaction_graph";
    width["bound"] = chk.width_bound;
    width["verdict"] = verdict_name(chk.width.verdict);
    width["heuristic_width"] = chk.width.heuristic_width;
    width["lower_bound"] = chk.width.lower_bound;
    if (chk.width.certificate) {
        width["certificate_width"] = chk.width.certificate->width();
        if (p != nullptr)
            width["certificate"] = ordered_json::parse(decomposition_to_json(*chk.width.certificate));
    }
    doc["width_check"] = std::move(width);
    ordered_json observed;
    observed["block_size_max"] = chk.block_size_max;
    observed["nbr_size_max"] = chk.nbr_size_max;
    doc["observed"] = std::move(observed);
    ordered_json bounds;
    bounds["tw_max"] = chk.bounds.tw_max;
    bounds["itw_max"] = chk.bounds.itw_max;
    bounds["block_max"] = chk.bounds.block_max;
    bounds["nbr_max"] = chk.bounds.nbr_max;
    doc["bounds"] = std::move(bounds);
    doc["pass"] = chk.pass;
    return doc.dump();
}

std::string solution_to_json(const Solution& sol, bool include_timings, bool include_point) {
    ordered_json doc;
    doc["mode"] = sol.exact ? "exact" : "numeric";
    if (sol.exact) {
        doc["value"] = rat_to_string(sol.value_rat);
        if (include_point) {
            ordered_json pt = ordered_json::array();
            for (const Rat& c : sol.point_rat) pt.push_back(rat_to_string(c));
            doc["point"] = std::move(pt);
        }
    } else {
        doc["value"] = format_double17(sol.value_num);
        if (include_point) {
            ordered_json pt = ordered_json::array();
            for (double c : sol.point_num) pt.push_back(format_double17(c));
            doc["point"] = std::move(pt);
        }
    }
    doc["assumption"] = ordered_json::parse(report_to_json(sol.assumption));
    ordered_json diag;
    diag["n"] = sol.diag.n;
    diag["degree"] = sol.diag.degree;
    diag["input_bits"] = sol.diag.input_bits;
    diag["interaction_width"] = sol.diag.interaction_width;
    diag["reduced_width"] = sol.diag.reduced_width;
    diag["block_count"] = sol.diag.block_count;
    diag["block_size_max"] = sol.diag.block_size_max;
    diag["nbr_size_max"] = sol.diag.nbr_size_max;
    diag["psi_entries_total"] = sol.diag.psi_entries_total;
    diag["psi_entries_max"] = sol.diag.psi_entries_max;
    if (!sol.exact) diag["psi_gap_bound"] = format_double17(sol.diag.psi_gap_bound);
    if (include_timings) {
        ordered_json t;
        t["analyze"] = sol.diag.ms_analyze;
        t["psi"] = sol.diag.ms_psi;
        t["dp"] = sol.diag.ms_dp;
        t["total"] = sol.diag.ms_total;
        diag["timings_ms"] = std::move(t);
    }
    doc["diagnostics"] = std::move(diag);
    return doc.dump();
}

std::string certify_to_json(const CertifyReport& rep) {
    ordered_json doc;
    doc["value_consistent"] = rep.value_consistent;
    doc["in_box"] = rep.in_box;
    doc["vminus_binary"] = rep.vminus_binary;
    doc["residual"] = format_double17(rep.residual);
    doc["ok"] = rep.ok();
    return doc.dump();
}

}  // namespace boxpoly
