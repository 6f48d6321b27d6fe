// Drives the installed CLI binary end to end: exit codes, JSON-on-stdout,
// determinism. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen then analyze then solve, deterministic bytes") {
    const std::string inst = "/tmp/boxpoly_cli_test_instance.json";
    const RunResult gen1 = run("gen --kind path-blocks --m 4 --seed 9 --out " + inst);
    CHECK(gen1.exit_code == 0);
    const std::string bytes1 = read_file(inst);
    const RunResult gen2 = run("gen --kind path-blocks --m 4 --seed 9 --out " + inst + ".2");
    CHECK(gen2.exit_code == 0);
    CHECK(bytes1 == read_file(inst + ".2"));

    const RunResult analyze = run("analyze " + inst + " --tw-max 2 --block-max 1 --nbr-max 2");
    CHECK(analyze.exit_code == 0);
    CHECK(analyze.out.find("\"pass\":true") != std::string::npos);

    const RunResult solve1 = run("solve " + inst);
    CHECK(solve1.exit_code == 0);
    CHECK(solve1.out.find("\"mode\":\"exact\"") != std::string::npos);
    const RunResult solve2 = run("solve " + inst);
    CHECK(solve1.out == solve2.out);

    const RunResult oracle = run("oracle " + inst);
    CHECK(oracle.exit_code == 0);
    // Same value through both routes.
    const auto value_of = [](const std::string& text) {
        const auto pos = text.find("\"value\":");
        return text.substr(pos, text.find(',', pos) - pos);
    };
    CHECK(value_of(oracle.out) == value_of(solve1.out));
}

TEST_CASE("exit codes: parse error 1, assumption failure 2, force 0") {
    const std::string bad = "/tmp/boxpoly_cli_test_bad.json";
    write_file(bad, "{broken");
    const RunResult parse = run("analyze " + bad);
    CHECK(parse.exit_code == 1);
    CHECK(parse.out.find("\"error\"") != std::string::npos);

    // K5 with positive diagonals, all couplings: block_max 1 must fail.
    std::ostringstream k5;
    k5 << R"({"n":5,"terms":[)";
    bool first = true;
    for (int i = 0; i < 5; ++i) {
        if (!first) k5 << ",";
        first = false;
        k5 << R"({"coef":"1","exps":[[)" << i << R"(,2]]})";
        for (int j = i + 1; j < 5; ++j)
            k5 << R"(,{"coef":"1","exps":[[)" << i << R"(,1],[)" << j << R"(,1]]})";
    }
    k5 << "]}";
    const std::string k5path = "/tmp/boxpoly_cli_test_k5.json";
    write_file(k5path, k5.str());
    const RunResult fail = run("analyze " + k5path + " --block-max 1");
    CHECK(fail.exit_code == 2);
    CHECK(fail.out.find("\"pass\":false") != std::string::npos);
    CHECK(fail.out.find("\"block_size_max\":5") != std::string::npos);

    const RunResult solve_fail = run("solve " + k5path + " --block-max 1");
    CHECK(solve_fail.exit_code == 2);
    const RunResult forced = run("solve " + k5path + " --block-max 1 --force");
    CHECK(forced.exit_code == 0);

    const RunResult missing = run("solve /tmp/boxpoly_no_such_file.json");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("bench smoke run emits the CSV header and rows") {
    const std::string csv = "/tmp/boxpoly_cli_test_bench.csv";
    const RunResult bench = run("bench --suite tree-backbone --seed 3 --out " + csv);
    CHECK(bench.exit_code == 0);
    const std::string table = read_file(csv);
    CHECK(table.find("kind,m,block_size,nbr_size,degree,seed,n,reduced_width,psi_entries_max,"
                     "ms_total") == 0);
    // One line per size, sizes ascending.
    int rows = 0;
    long last_n = 0;
    std::istringstream lines(table);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        // n is the 7th column.
        std::istringstream cols(line);
        std::string col;
        for (int i = 0; i < 7; ++i) std::getline(cols, col, ',');
        const long n = std::stol(col);
        CHECK(n > last_n);
        last_n = n;
    }
    CHECK(rows == 4);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-boxpoly-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context context;
    return context.run();
}
