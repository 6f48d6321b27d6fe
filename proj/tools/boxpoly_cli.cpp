// boxpoly command line: analyze | solve | oracle | gen | bench.
// Thin shell over the C API; results are JSON on stdout, logs on stderr.
// Exit codes: 0 success, 1 input/system error, 2 assumption failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxpoly/boxpoly.h"

namespace {

using ordered_json = nlohmann::ordered_json;

int exit_code(int status) {
    if (status == BXP_OK) return 0;
    return status == BXP_ERR_ASSUMPTION ? 2 : 1;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << text << "\n";
}

struct Parsed {
    bxp_poly* poly = nullptr;
    ~Parsed() { bxp_poly_free(poly); }
};

// Parses the instance at path; on failure prints the error JSON and returns
// the CLI exit code.
int load(const std::string& path, Parsed& parsed) {
    std::string text;
    try {
        text = read_input(path);
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"]["code"] = "io";
        err["error"]["message"] = e.what();
        std::cout << err.dump() << "\n";
        return 1;
    }
    char* error = nullptr;
    const int rc = bxp_poly_parse(text.c_str(), &parsed.poly, &error);
    if (rc != BXP_OK) {
        std::cout << (error ? error : "{\"error\":{\"code\":\"parse\"}}") << "\n";
        bxp_string_free(error);
        return 1;
    }
    bxp_string_free(error);
    return 0;
}

struct BoundFlags {
    int tw_max = -1;
    int itw_max = -1;
    int block_max = -1;
    int nbr_max = -1;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--tw-max", tw_max, "treewidth bound (-1 = ceil(log2 n) + 4)");
        cmd->add_option("--itw-max", itw_max, "incidence treewidth bound (-1 = auto)");
        cmd->add_option("--block-max", block_max, "component size bound (-1 = 20 or 4 by degree)");
        cmd->add_option("--nbr-max", nbr_max, "neighborhood size bound (-1 = auto)");
    }

    void fill(ordered_json& opts) const {
        opts["tw_max"] = tw_max;
        opts["itw_max"] = itw_max;
        opts["block_max"] = block_max;
        opts["nbr_max"] = nbr_max;
    }
};

int run_simple(int (*fn)(const bxp_poly*, const char*, char**), const std::string& path,
               const std::string& options, const std::string& out_path) {
    Parsed parsed;
    if (int rc = load(path, parsed)) return rc;
    char* result = nullptr;
    const int rc = fn(parsed.poly, options.c_str(), &result);
    try {
        write_output(out_path, result ? result : "{}");
    } catch (const std::exception& e) {
        std::cerr << "boxpoly: " << e.what() << "\n";
        bxp_string_free(result);
        return 1;
    }
    bxp_string_free(result);
    return exit_code(rc);
}

int run_gen(const ordered_json& spec, const std::string& out_path) {
    char* result = nullptr;
    const int rc = bxp_generate(spec.dump().c_str(), &result);
    if (rc != BXP_OK) {
        std::cout << (result ? result : "{}") << "\n";
        bxp_string_free(result);
        return 1;
    }
    const ordered_json doc = ordered_json::parse(result);
    bxp_string_free(result);
    std::cerr << "boxpoly: generated n=" << doc["instance"]["n"] << " bounds=" << doc["bounds"].dump()
              << "\n";
    write_output(out_path, doc["instance"].dump());
    return 0;
}

int run_bench(const std::string& suite, const std::string& out_path, std::uint64_t seed) {
    struct Row {
        std::string kind;
        int m, block_size, nbr_size, degree;
    };
    std::vector<Row> rows;
    if (suite == "path-blocks" || suite == "all")
        for (int m : {10, 50, 100, 250, 500, 1001}) rows.push_back({"path-blocks", m, 1, 2, 2});
    if (suite == "tree-backbone" || suite == "all")
        for (int m : {5, 15, 30, 45}) rows.push_back({"tree-backbone", m, 1, 8, 2});
    if (rows.empty()) {
        std::cerr << "boxpoly: unknown suite \"" << suite << "\" (path-blocks|tree-backbone|all)\n";
        return 1;
    }
    std::ostringstream csv;
    csv << "kind,m,block_size,nbr_size,degree,seed,n,reduced_width,psi_entries_max,ms_total\n";
    for (const auto& row : rows) {
        ordered_json spec;
        spec["kind"] = row.kind;
        spec["m"] = row.m;
        spec["block_size"] = row.block_size;
        spec["nbr_size"] = row.nbr_size;
        spec["degree"] = row.degree;
        spec["seed"] = seed;
        spec["coef_range"] = 10;
        char* gen = nullptr;
        if (bxp_generate(spec.dump().c_str(), &gen) != BXP_OK) {
            std::cerr << "boxpoly: generation failed: " << (gen ? gen : "") << "\n";
            bxp_string_free(gen);
            return 1;
        }
        const ordered_json gdoc = ordered_json::parse(gen);
        bxp_string_free(gen);
        const std::string instance = gdoc["instance"].dump();
        bxp_poly* poly = nullptr;
        char* err = nullptr;
        if (bxp_poly_parse(instance.c_str(), &poly, &err) != BXP_OK) {
            std::cerr << "boxpoly: parse failed: " << (err ? err : "") << "\n";
            bxp_string_free(err);
            return 1;
        }
        bxp_string_free(err);
        ordered_json opts = gdoc["bounds"];
        opts["timings"] = false;
        char* sol = nullptr;
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = bxp_solve(poly, opts.dump().c_str(), &sol);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (rc != BXP_OK) {
            std::cerr << "boxpoly: solve failed: " << (sol ? sol : "") << "\n";
            bxp_string_free(sol);
            bxp_poly_free(poly);
            return exit_code(rc);
        }
        const ordered_json sdoc = ordered_json::parse(sol);
        bxp_string_free(sol);
        csv << row.kind << ',' << row.m << ',' << row.block_size << ',' << row.nbr_size << ','
            << row.degree << ',' << seed << ',' << sdoc["diagnostics"]["n"] << ','
            << sdoc["diagnostics"]["reduced_width"] << ','
            << sdoc["diagnostics"]["psi_entries_max"] << ',' << ms << "\n";
        std::cerr << "boxpoly: " << row.kind << " m=" << row.m << " solved in " << ms << " ms\n";
        bxp_poly_free(poly);
    }
    try {
        write_output(out_path, csv.str());
    } catch (const std::exception& e) {
        std::cerr << "boxpoly: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"box-constrained polynomial optimization by hidden-binary reduction"};
    app.require_subcommand(1);

    std::string path, out_path;
    BoundFlags bounds;
    double tol = 1e-6;
    bool force = false, timings = false;
    int grid = 0;
    bool no_polish = false;

    auto* analyze = app.add_subcommand("analyze", "check structural assumptions, report partition");
    analyze->add_option("instance", path, "instance JSON file (- for stdin)")->required();
    bounds.add_to(analyze);
    analyze->add_option("--out", out_path, "output file (default stdout)");

    auto* solve = app.add_subcommand("solve", "solve an instance end to end");
    solve->add_option("instance", path, "instance JSON file (- for stdin)")->required();
    bounds.add_to(solve);
    solve->add_option("--tol", tol, "numeric tolerance for degree >= 3 blocks");
    solve->add_flag("--force", force, "solve even if assumptions are not certified");
    solve->add_flag("--timings", timings, "include wall-clock timings in the JSON output");
    bool no_witness = false;
    solve->add_flag("--no-witness", no_witness, "omit the optimizer point from the output");
    solve->add_option("--out", out_path, "output file (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "whole-instance reference minimum");
    oracle->add_option("instance", path, "instance JSON file (- for stdin)")->required();
    oracle->add_option("--grid", grid, "grid points per dimension (0 = auto)");
    oracle->add_flag("--no-polish", no_polish, "skip projected-gradient polish");
    oracle->add_option("--out", out_path, "output file (default stdout)");

    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    std::string kind = "path-blocks";
    int m = 3, block_size = 1, nbr_size = 2, degree = 2, coef_range = 10;
    std::uint64_t seed = 0;
    gen->add_option("--kind", kind, "path-blocks | tree-backbone | random-sparse");
    gen->add_option("--m", m, "block count (variable count for random-sparse)");
    gen->add_option("--block-size", block_size, "continuous variables per block");
    gen->add_option("--nbr-size", nbr_size, "binary neighbors per block");
    gen->add_option("--degree", degree, "polynomial degree (2 or 3)");
    gen->add_option("--seed", seed, "PRNG seed");
    gen->add_option("--coef-range", coef_range, "coefficients drawn from [-range, range]");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "run generated families, emit CSV scaling table");
    std::string suite = "all";
    bench->add_option("--suite", suite, "path-blocks | tree-backbone | all");
    bench->add_option("--seed", seed, "PRNG seed");
    bench->add_option("--out", out_path, "output CSV file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        ordered_json opts;
        bounds.fill(opts);
        return run_simple(bxp_analyze, path, opts.dump(), out_path);
    }
    if (solve->parsed()) {
        ordered_json opts;
        bounds.fill(opts);
        opts["tol"] = tol;
        opts["force"] = force;
        opts["timings"] = timings;
        opts["witness"] = !no_witness;
        return run_simple(bxp_solve, path, opts.dump(), out_path);
    }
    if (oracle->parsed()) {
        ordered_json opts;
        opts["grid"] = grid;
        opts["polish"] = !no_polish;
        return run_simple(bxp_oracle, path, opts.dump(), out_path);
    }
    if (gen->parsed()) {
        ordered_json spec;
        spec["kind"] = kind;
        spec["m"] = m;
        spec["block_size"] = block_size;
        spec["nbr_size"] = nbr_size;
        spec["degree"] = degree;
        spec["seed"] = seed;
        spec["coef_range"] = coef_range;
        return run_gen(spec, out_path);
    }
    if (bench->parsed()) return run_bench(suite, out_path, seed);
    return 1;
}
