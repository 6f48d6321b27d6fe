#include "oracle.hpp"

#include <cmath>

#include <json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

OracleResult oracle_solve(const Polynomial& p, int grid_per_dim, bool polish) {
    OracleResult out;
    if (p.degree() <= 2) {
        if (p.nvars() > kOracleExactCapVars)
            fail(Errc::cap_exceeded, "exact oracle limited to n <= " +
                                         std::to_string(kOracleExactCapVars));
        BoxMinimum r = solve_quadratic_box(p);
        out.exact = true;
        out.value_rat = std::move(r.value);
        out.point_rat = std::move(r.point);
        return out;
    }
    if (p.nvars() > kOracleGridCapVars)
        fail(Errc::cap_exceeded, "grid oracle limited to n <= " + std::to_string(kOracleGridCapVars));
    int per_dim = grid_per_dim;
    if (per_dim <= 0) {
        per_dim = 2;
        while (true) {
            double pts = 1.0;
            for (int i = 0; i < p.nvars(); ++i) pts *= per_dim + 1;
            if (pts > static_cast<double>(kGridPointCap)) break;
            ++per_dim;
        }
        per_dim = std::max(per_dim, 3);
    }
    NumericBoxMinimum r = grid_polish_min(p, per_dim, polish);
    out.exact = false;
    out.value_num = r.value;
    out.point_num = std::move(r.point);
    out.gap_bound = r.gap_bound;
    return out;
}

std::string oracle_to_json(const OracleResult& r) {
    ordered_json doc;
    doc["mode"] = r.exact ? "exact" : "grid";
    if (r.exact) {
        doc["value"] = rat_to_string(r.value_rat);
        ordered_json pt = ordered_json::array();
        for (const Rat& c : r.point_rat) pt.push_back(rat_to_string(c));
        doc["point"] = std::move(pt);
    } else {
        doc["value"] = format_double17(r.value_num);
        ordered_json pt = ordered_json::array();
        for (double c : r.point_num) pt.push_back(format_double17(c));
        doc["point"] = std::move(pt);
        doc["gap_bound"] = format_double17(r.gap_bound);
    }
    return doc.dump();
}

}  // namespace boxpoly
