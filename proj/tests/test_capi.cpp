#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "boxpoly/boxpoly.h"

using ordered_json = nlohmann::ordered_json;

namespace {

struct Poly {
    bxp_poly* handle = nullptr;
    ~Poly() { bxp_poly_free(handle); }
};

struct Str {
    char* s = nullptr;
    ~Str() { bxp_string_free(s); }
    std::string view() const { return s ? s : ""; }
};

const char* kInstance =
    R"({"n":2,"terms":[{"coef":"-1","exps":[[0,2]]},{"coef":"1","exps":[[0,1],[1,1]]},{"coef":"1","exps":[[1,2]]},{"coef":"-1","exps":[[1,1]]}]})";

}  // namespace

TEST_CASE("parse, inspect, serialize, free") {
    Poly p;
    Str err;
    CHECK(bxp_poly_parse(kInstance, &p.handle, &err.s) == BXP_OK);
    REQUIRE(p.handle != nullptr);
    CHECK(bxp_poly_nvars(p.handle) == 2);
    CHECK(bxp_poly_degree(p.handle) == 2);
    Str out;
    CHECK(bxp_poly_serialize(p.handle, &out.s) == BXP_OK);
    // Round trip through parse again.
    Poly q;
    Str err2;
    CHECK(bxp_poly_parse(out.s, &q.handle, &err2.s) == BXP_OK);
    Str out2;
    CHECK(bxp_poly_serialize(q.handle, &out2.s) == BXP_OK);
    CHECK(out.view() == out2.view());
}

TEST_CASE("parse errors carry a JSON error object") {
    Poly p;
    Str err;
    const int rc = bxp_poly_parse(R"({"n":1,"terms":[{"coef":"1","exps":[[4,1]]}]})", &p.handle,
                                  &err.s);
    CHECK(rc == BXP_ERR_PARSE);
    CHECK(p.handle == nullptr);
    const ordered_json doc = ordered_json::parse(err.view());
    CHECK(doc["error"]["code"] == "parse");
    CHECK(std::string(doc["error"]["message"]).find("term 0") != std::string::npos);
    CHECK(std::string(bxp_status_name(rc)) == "parse");
}

TEST_CASE("analyze and solve through the C surface") {
    Poly p;
    Str err;
    REQUIRE(bxp_poly_parse(kInstance, &p.handle, &err.s) == BXP_OK);

    Str report;
    CHECK(bxp_analyze(p.handle, R"({"tw_max":4,"block_max":4,"nbr_max":4})", &report.s) == BXP_OK);
    const ordered_json rep = ordered_json::parse(report.view());
    CHECK(rep["pass"] == true);
    CHECK(rep["partition"]["vminus"] == ordered_json::array({0}));

    Str sol;
    CHECK(bxp_solve(p.handle, R"({"tw_max":4,"block_max":4,"nbr_max":4,"timings":false})",
                    &sol.s) == BXP_OK);
    const ordered_json s = ordered_json::parse(sol.view());
    CHECK(s["value"] == "-1");
    CHECK(s["point"] == ordered_json::array({"1", "0"}));

    Str oracle;
    CHECK(bxp_oracle(p.handle, "{}", &oracle.s) == BXP_OK);
    CHECK(ordered_json::parse(oracle.view())["value"] == "-1");
}

TEST_CASE("assumption failure surfaces as a distinct status") {
    // Fully coupled positive-diagonal clique on 6 nodes.
    ordered_json inst;
    inst["n"] = 6;
    inst["terms"] = ordered_json::array();
    for (int i = 0; i < 6; ++i) {
        inst["terms"].push_back({{"coef", "1"}, {"exps", {{i, 2}}}});
        for (int j = i + 1; j < 6; ++j)
            inst["terms"].push_back({{"coef", "1"}, {"exps", {{i, 1}, {j, 1}}}});
    }
    Poly p;
    Str err;
    REQUIRE(bxp_poly_parse(inst.dump().c_str(), &p.handle, &err.s) == BXP_OK);

    Str report;
    CHECK(bxp_analyze(p.handle, R"({"block_max":2})", &report.s) == BXP_ERR_ASSUMPTION);
    CHECK(ordered_json::parse(report.view())["pass"] == false);

    Str sol;
    CHECK(bxp_solve(p.handle, R"({"block_max":2})", &sol.s) == BXP_ERR_ASSUMPTION);
    const ordered_json errdoc = ordered_json::parse(sol.view());
    CHECK(errdoc["error"]["code"] == "assumption");

    Str forced;
    CHECK(bxp_solve(p.handle, R"({"block_max":2,"force":true,"timings":false})", &forced.s) ==
          BXP_OK);
}

TEST_CASE("generate emits an instance and its bounds") {
    Str out;
    CHECK(bxp_generate(R"({"kind":"path-blocks","m":3,"seed":7})", &out.s) == BXP_OK);
    const ordered_json doc = ordered_json::parse(out.view());
    CHECK(doc["instance"]["n"] == 5);
    CHECK(doc["bounds"]["nbr_max"] == 2);

    // Identical call, identical bytes.
    Str again;
    CHECK(bxp_generate(R"({"kind":"path-blocks","m":3,"seed":7})", &again.s) == BXP_OK);
    CHECK(out.view() == again.view());

    Str bad;
    CHECK(bxp_generate(R"({"kind":"nope"})", &bad.s) == BXP_ERR_PARSE);
    CHECK(ordered_json::parse(bad.view()).contains("error"));
}

TEST_CASE("null argument handling") {
    CHECK(bxp_poly_parse(kInstance, nullptr, nullptr) == BXP_ERR_INVALID);
    CHECK(bxp_poly_nvars(nullptr) == -1);
    CHECK(bxp_poly_degree(nullptr) == -1);
    CHECK(bxp_analyze(nullptr, "{}", nullptr) == BXP_ERR_INVALID);
    Poly p;
    Str err;
    REQUIRE(bxp_poly_parse(kInstance, &p.handle, &err.s) == BXP_OK);
    CHECK(bxp_solve(p.handle, "{}", nullptr) == BXP_ERR_INVALID);
    bxp_poly_free(nullptr);  // must be a no-op
    bxp_string_free(nullptr);
}

TEST_CASE("invalid UTF-8 input stays inside the error contract") {
    const char junk[] = "\xd4\x69\x3f\xff\xfe{\"n\":";
    Poly p;
    Str err;
    const int rc = bxp_poly_parse(junk, &p.handle, &err.s);
    CHECK(rc == BXP_ERR_PARSE);
    REQUIRE(err.s != nullptr);
    const ordered_json doc = ordered_json::parse(err.view());  // must be well-formed JSON
    CHECK(doc["error"]["code"] == "parse");
}

TEST_CASE("malformed options are a parse error") {
    Poly p;
    Str err;
    REQUIRE(bxp_poly_parse(kInstance, &p.handle, &err.s) == BXP_OK);
    Str out;
    CHECK(bxp_solve(p.handle, "{not json", &out.s) == BXP_ERR_PARSE);
    CHECK(ordered_json::parse(out.view())["error"]["code"] == "parse");
}
