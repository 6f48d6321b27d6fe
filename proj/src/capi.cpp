#include "boxpoly/boxpoly.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "generator.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "polynomial.hpp"

using namespace boxpoly;
using ordered_json = nlohmann::ordered_json;

struct bxp_poly {
    Polynomial p;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int status_of(const Error& e) {
    switch (e.code()) {
        case Errc::parse: return BXP_ERR_PARSE;
        case Errc::invalid_argument: return BXP_ERR_INVALID;
        case Errc::degree: return BXP_ERR_DEGREE;
        case Errc::cap_exceeded: return BXP_ERR_CAP;
        case Errc::assumption: return BXP_ERR_ASSUMPTION;
        case Errc::internal: return BXP_ERR_INTERNAL;
    }
    return BXP_ERR_INTERNAL;
}

std::string error_json(const std::string& code, const std::string& message) {
    ordered_json doc;
    doc["error"]["code"] = code;
    doc["error"]["message"] = message;
    // Messages can quote raw input bytes; replace anything that is not valid
    // UTF-8 instead of throwing out of the error path.
    return doc.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

// Runs fn, routing the result or an error object into *out.
template <class Fn>
int guarded(char** out, Fn&& fn) {
    try {
        const std::string result = fn();
        if (out) *out = dup_string(result);
        return BXP_OK;
    } catch (const Error& e) {
        if (out) *out = dup_string(error_json(errc_name(e.code()), e.what()));
        return status_of(e);
    } catch (const std::exception& e) {
        if (out) *out = dup_string(error_json("internal", e.what()));
        return BXP_ERR_INTERNAL;
    }
}

Bounds bounds_from_json(const ordered_json& doc) {
    Bounds b;
    b.tw_max = doc.value("tw_max", -1);
    b.itw_max = doc.value("itw_max", -1);
    b.block_max = doc.value("block_max", -1);
    b.nbr_max = doc.value("nbr_max", -1);
    return b;
}

ordered_json parse_options(const char* options_json) {
    if (options_json == nullptr || *options_json == '\0') return ordered_json::object();
    try {
        ordered_json doc = ordered_json::parse(options_json);
        if (!doc.is_object()) fail(Errc::parse, "options must be a JSON object");
        return doc;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("malformed options JSON: ") + e.what());
    }
}

}  // namespace

extern "C" {

const char* bxp_status_name(int status) {
    switch (status) {
        case BXP_OK: return "ok";
        case BXP_ERR_PARSE: return "parse";
        case BXP_ERR_INVALID: return "invalid_argument";
        case BXP_ERR_DEGREE: return "degree";
        case BXP_ERR_CAP: return "cap_exceeded";
        case BXP_ERR_ASSUMPTION: return "assumption";
        case BXP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

int bxp_poly_parse(const char* json_text, bxp_poly** out_poly, char** out_error) {
    if (out_poly == nullptr) return BXP_ERR_INVALID;
    *out_poly = nullptr;
    if (out_error) *out_error = nullptr;
    try {
        if (json_text == nullptr) fail(Errc::invalid_argument, "null instance text");
        *out_poly = new bxp_poly{parse_instance(json_text)};
        return BXP_OK;
    } catch (const Error& e) {
        if (out_error) *out_error = dup_string(error_json(errc_name(e.code()), e.what()));
        return status_of(e);
    } catch (const std::exception& e) {
        if (out_error) *out_error = dup_string(error_json("internal", e.what()));
        return BXP_ERR_INTERNAL;
    }
}

int bxp_poly_serialize(const bxp_poly* poly, char** out_json) {
    if (poly == nullptr || out_json == nullptr) return BXP_ERR_INVALID;
    return guarded(out_json, [&] { return serialize_instance(poly->p); });
}

void bxp_poly_free(bxp_poly* poly) { delete poly; }

int bxp_poly_nvars(const bxp_poly* poly) { return poly ? poly->p.nvars() : -1; }

int bxp_poly_degree(const bxp_poly* poly) { return poly ? poly->p.degree() : -1; }

int bxp_analyze(const bxp_poly* poly, const char* options_json, char** out_json) {
    if (poly == nullptr || out_json == nullptr) return BXP_ERR_INVALID;
    int assumption_fail = 0;
    const int rc = guarded(out_json, [&] {
        const ordered_json opts = parse_options(options_json);
        const AssumptionCheck chk = check_assumptions(poly->p, bounds_from_json(opts));
        if (!chk.pass) assumption_fail = 1;
        return report_to_json(chk, &poly->p);
    });
    if (rc != BXP_OK) return rc;
    return assumption_fail ? BXP_ERR_ASSUMPTION : BXP_OK;
}

int bxp_solve(const bxp_poly* poly, const char* options_json, char** out_json) {
    if (poly == nullptr || out_json == nullptr) return BXP_ERR_INVALID;
    return guarded(out_json, [&] {
        const ordered_json opts = parse_options(options_json);
        SolveOptions so;
        so.bounds = bounds_from_json(opts);
        so.tol = opts.value("tol", 1e-6);
        so.force = opts.value("force", false);
        const bool timings = opts.value("timings", true);
        const bool witness = opts.value("witness", true);
        return solution_to_json(solve(poly->p, so), timings, witness);
    });
}

int bxp_oracle(const bxp_poly* poly, const char* options_json, char** out_json) {
    if (poly == nullptr || out_json == nullptr) return BXP_ERR_INVALID;
    return guarded(out_json, [&] {
        const ordered_json opts = parse_options(options_json);
        return oracle_to_json(
            oracle_solve(poly->p, opts.value("grid", 0), opts.value("polish", true)));
    });
}

int bxp_generate(const char* spec_json, char** out_json) {
    if (out_json == nullptr) return BXP_ERR_INVALID;
    return guarded(out_json, [&] {
        if (spec_json == nullptr) fail(Errc::invalid_argument, "null generator spec");
        const GenSpec spec = genspec_from_json(spec_json);
        const Polynomial p = generate(spec);
        const Bounds b = suggested_bounds(spec, p);
        ordered_json doc;
        doc["instance"] = ordered_json::parse(serialize_instance(p));
        doc["bounds"]["tw_max"] = b.tw_max;
        doc["bounds"]["itw_max"] = b.itw_max;
        doc["bounds"]["block_max"] = b.block_max;
        doc["bounds"]["nbr_max"] = b.nbr_max;
        return doc.dump();
    });
}

void bxp_string_free(char* s) { std::free(s); }

}  // extern "C"
