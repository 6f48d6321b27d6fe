#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "generator.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "util.hpp"

using namespace boxpoly;

namespace {

Polynomial random_quadratic(SplitMix64& rng, int n) {
    Polynomial p(n);
    for (int i = 0; i < n; ++i) {
        if (rng.bounded(4)) p.add_term(Monomial::var(i, 2), Rat(rng.range(-4, 4)));
        if (rng.bounded(2)) p.add_term(Monomial::var(i), Rat(rng.range(-4, 4)));
        for (int j = i + 1; j < n; ++j)
            if (rng.bounded(4) == 0)
                p.add_term(Monomial::from_pairs({{i, 1}, {j, 1}}), Rat(rng.range(-3, 3)));
    }
    return p;
}

Bounds loose_bounds(int n) {
    Bounds b;
    b.tw_max = n;
    b.itw_max = 4 * n + 8;
    b.block_max = n;
    b.nbr_max = n;
    return b;
}

}  // namespace

TEST_CASE("decompose routes monomials and reconstructs") {
    // Path p0-z0-p1-z1-p2 (blocks at even indices).
    Polynomial p(5);
    for (int i : {0, 2, 4}) p.add_term(Monomial::var(i, 2), Rat(1));
    p.add_term(Monomial::from_pairs({{0, 1}, {1, 1}}), Rat(-1));
    p.add_term(Monomial::from_pairs({{1, 1}, {2, 1}}), Rat(-1));
    p.add_term(Monomial::from_pairs({{2, 1}, {3, 1}}), Rat(-1));
    p.add_term(Monomial::from_pairs({{3, 1}, {4, 1}}), Rat(-1));
    p.add_term(Monomial::var(1), Rat(2));
    p.add_term(Monomial::var(3), Rat(-2));

    const Decomposition dec = decompose(p, {1, 3}, {0, 2, 4});
    CHECK(dec.blocks.size() == 3);
    CHECK(dec.report.dmax == 2);
    // f_minus holds exactly the linear z terms.
    CHECK(dec.f_minus.term_count() == 2);
    CHECK(dec.f_minus.coefficient(Monomial::var(1)) == Rat(2));
    // Middle block picks up both incident couplings.
    bool found_middle = false;
    for (const auto& bp : dec.blocks)
        if (bp.cont_vars == std::vector<int>{2}) {
            found_middle = true;
            CHECK(bp.bin_vars == std::vector<int>{1, 3});
            CHECK(bp.objective.term_count() == 3);
        }
    CHECK(found_middle);

    // Entirely hidden-binary polynomial: no blocks.
    Polynomial q(2);
    q.add_term(Monomial::from_pairs({{0, 1}, {1, 1}}), Rat(1));
    const Decomposition dq = decompose(q, {0, 1}, {});
    CHECK(dq.blocks.empty());
    CHECK(dq.f_minus == q);

    CHECK_THROWS_AS(decompose(p, {0}, {1}), Error);  // partition must cover
}

TEST_CASE("decompose reconstruction on random instances") {
    SplitMix64 rng(501);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(8));
        const Polynomial p = random_quadratic(rng, n);
        const BinaryPartition part = detect_quadratic(p);
        const Decomposition dec = decompose(p, part.vminus, part.vplus);
        Polynomial sum = dec.f_minus;
        for (const auto& bp : dec.blocks) sum = sum + bp.objective;
        CHECK(sum == p);
        // Block variable sets are pairwise disjoint.
        std::set<int> seen;
        for (const auto& bp : dec.blocks)
            for (int v : bp.cont_vars) CHECK(seen.insert(v).second);
    }
}

TEST_CASE("check_assumptions on the path family") {
    GenSpec spec;
    spec.kind = GenSpec::Kind::path_blocks;
    spec.m = 5;
    spec.seed = 7;
    const Polynomial p = generate(spec);
    Bounds b;
    b.tw_max = 1;
    b.nbr_max = 2;
    b.block_max = 1;
    const AssumptionCheck chk = check_assumptions(p, b);
    CHECK(chk.pass);
    CHECK(chk.width.verdict == WidthCheck::Verdict::yes);
    CHECK(chk.width.certificate->width() <= 1);
    CHECK(chk.block_size_max == 1);
    CHECK(chk.nbr_size_max == 2);
}

TEST_CASE("check_assumptions fails on the fully coupled clique") {
    // K8 quadratic with positive diagonals: one size-8 component.
    Polynomial p(8);
    for (int i = 0; i < 8; ++i) p.add_term(Monomial::var(i, 2), Rat(1));
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            p.add_term(Monomial::from_pairs({{i, 1}, {j, 1}}), Rat(1));
    Bounds b;
    b.tw_max = 7;
    b.block_max = 4;
    b.nbr_max = 4;
    const AssumptionCheck chk = check_assumptions(p, b);
    CHECK(!chk.pass);
    CHECK(chk.block_size_max == 8);
    CHECK_THROWS_AS(solve(p, {b, 1e-6, false}), Error);
    // force pushes through and still gets the right answer.
    const Solution sol = solve(p, {b, 1e-6, true});
    CHECK(sol.value_rat == oracle_solve(p).value_rat);
}

TEST_CASE("hand-checked two-variable pipeline") {
    // -x0^2 + x0 x1 + x1^2 - x1: V- = {0}, block {1} with psi(0) = -1/4,
    // psi(1) = 0; optimum -1 at (1, 0).
    Polynomial p(2);
    p.add_term(Monomial::var(0, 2), Rat(-1));
    p.add_term(Monomial::from_pairs({{0, 1}, {1, 1}}), Rat(1));
    p.add_term(Monomial::var(1, 2), Rat(1));
    p.add_term(Monomial::var(1), Rat(-1));
    const Solution sol = solve(p, {loose_bounds(2), 1e-6, false});
    CHECK(sol.exact);
    CHECK(sol.value_rat == Rat(-1));
    CHECK(sol.point_rat == std::vector<Rat>{Rat(1), Rat(0)});
    const CertifyReport rep = certify(sol, p);
    CHECK(rep.ok());
}

TEST_CASE("pure hidden-binary instances reduce to BPO") {
    SplitMix64 rng(503);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(5));
        Polynomial p(n);
        for (int i = 0; i < n; ++i) {
            p.add_term(Monomial::var(i, 2), Rat(rng.range(-4, 0)));
            if (rng.bounded(2)) p.add_term(Monomial::var(i), Rat(rng.range(-3, 3)));
            for (int j = i + 1; j < n; ++j)
                if (rng.bounded(3) == 0)
                    p.add_term(Monomial::from_pairs({{i, 1}, {j, 1}}), Rat(rng.range(-3, 3)));
        }
        const Solution sol = solve(p, {loose_bounds(n), 1e-6, false});
        REQUIRE(sol.exact);
        // Every coordinate is binary; compare against vertex brute force.
        Rat best;
        bool first = true;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Rat> x(n);
            for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
            const Rat v = evaluate(p, x);
            if (first || v < best) {
                best = v;
                first = false;
            }
        }
        CHECK(sol.value_rat == best);
    }
}

TEST_CASE("pipeline equals the face-enumeration oracle on random quadratics") {
    SplitMix64 rng(509);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(7));
        const Polynomial p = random_quadratic(rng, n);
        const Solution sol = solve(p, {loose_bounds(n), 1e-6, true});
        const OracleResult oracle = oracle_solve(p);
        CHECK(sol.value_rat == oracle.value_rat);
        CHECK(certify(sol, p).ok());
    }
}

TEST_CASE("reduced objective matches constrained continuations pointwise") {
    SplitMix64 rng(521);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng.bounded(4));
        const Polynomial p = random_quadratic(rng, n);
        const BinaryPartition part = detect_quadratic(p);
        if (part.vminus.size() > 8 || part.vminus.empty()) continue;
        const Decomposition dec = decompose(p, part.vminus, part.vplus);
        std::vector<PsiTable> tables;
        for (const auto& bp : dec.blocks) tables.push_back(build_psi_table(bp, SolveMode::exact, 0));
        const std::vector<int> vm(part.vminus.begin(), part.vminus.end());
        for (std::uint32_t mask = 0; mask < (1u << vm.size()); ++mask) {
            std::map<int, Rat> fix;
            for (std::size_t i = 0; i < vm.size(); ++i) fix[vm[i]] = Rat((mask >> i) & 1);
            // Route 1: f_minus(z) + sum psi_C(z|N(C)).
            std::vector<Rat> zfull(n, Rat(0));
            for (const auto& [v, val] : fix) zfull[v] = val;
            Rat via_psi = evaluate(substitute(dec.f_minus, fix), zfull);
            for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
                std::size_t z = 0;
                for (std::size_t j = 0; j < dec.blocks[b].bin_vars.size(); ++j)
                    if (fix.at(dec.blocks[b].bin_vars[j]) == 1) z |= std::size_t{1} << j;
                via_psi += tables[b].rvalues[z];
            }
            // Route 2: minimize the full objective with z substituted.
            const Rat direct = solve_quadratic_box(substitute(p, fix)).value;
            CHECK(via_psi == direct);
        }
    }
}

TEST_CASE("degree-3 pipeline against the grid oracle") {
    GenSpec spec;
    spec.kind = GenSpec::Kind::tree_backbone;
    spec.m = 2;
    spec.block_size = 2;
    spec.nbr_size = 2;
    spec.degree = 3;
    spec.coef_range = 3;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        spec.seed = seed;
        const Polynomial p = generate(spec);
        REQUIRE(p.nvars() <= 9);
        const Solution sol = solve(p, {loose_bounds(p.nvars()), 1e-6, true});
        CHECK(!sol.exact);
        const OracleResult oracle = oracle_solve(p);
        CHECK(std::abs(sol.value_num - oracle.value_num) <= 1e-6 + oracle.gap_bound);
        // In practice the two numeric routes land on the same optimum.
        CHECK(std::abs(sol.value_num - oracle.value_num) <= 1e-6);
        const CertifyReport rep = certify(sol, p);
        CHECK(rep.ok());
    }
}

TEST_CASE("oracle caps") {
    Polynomial big(13);
    for (int i = 0; i < 13; ++i) big.add_term(Monomial::var(i, 2), Rat(1));
    CHECK_THROWS_AS(oracle_solve(big), Error);  // exact oracle stops at n = 12

    Polynomial cubic(10);
    cubic.add_term(Monomial::var(9, 3), Rat(1));
    CHECK_THROWS_AS(oracle_solve(cubic), Error);  // grid oracle stops at n = 9
}

TEST_CASE("degenerate instances") {
    // No variables at all.
    const Polynomial none = parse_instance(R"({"n":0,"terms":[]})");
    const Solution s0 = solve(none, {Bounds{}, 1e-6, false});
    CHECK(s0.exact);
    CHECK(s0.value_rat == Rat(0));
    CHECK(s0.point_rat.empty());

    // Constant-only objective.
    const Polynomial c = parse_instance(R"({"n":2,"terms":[{"coef":"5/2","exps":[]}]})");
    const Solution sc = solve(c, {Bounds{}, 1e-6, false});
    CHECK(sc.value_rat == make_rat(5, 2));
    CHECK(certify(sc, c).ok());

    // Single linear term: hidden-binary, minimum at the right vertex.
    const Polynomial lin = parse_instance(R"({"n":1,"terms":[{"coef":"-3","exps":[[0,1]]}]})");
    const Solution sl = solve(lin, {Bounds{}, 1e-6, false});
    CHECK(sl.value_rat == Rat(-3));
    CHECK(sl.point_rat == std::vector<Rat>{Rat(1)});
}

TEST_CASE("reduced width stays within the elimination bound on generated families") {
    GenSpec path;
    path.kind = GenSpec::Kind::path_blocks;
    path.m = 6;
    path.seed = 31;
    const Polynomial p1 = generate(path);
    const Solution s1 = solve(p1, {suggested_bounds(path, p1), 1e-6, false});
    CHECK(s1.diag.reduced_width <= std::max(s1.diag.interaction_width, s1.diag.nbr_size_max - 1));

    GenSpec tb;
    tb.kind = GenSpec::Kind::tree_backbone;
    tb.m = 4;
    tb.nbr_size = 4;
    tb.seed = 32;
    const Polynomial p2 = generate(tb);
    const Solution s2 = solve(p2, {suggested_bounds(tb, p2), 1e-6, false});
    CHECK(s2.diag.reduced_width <= std::max(s2.diag.interaction_width, s2.diag.nbr_size_max - 1));
}

TEST_CASE("solution and report JSON shapes") {
    Polynomial p(1);
    p.add_term(Monomial::var(0, 2), Rat(1));
    p.add_term(Monomial::var(0), Rat(-1));
    const Solution sol = solve(p, {loose_bounds(1), 1e-6, false});
    const std::string json = solution_to_json(sol, false);
    CHECK(json.find("\"value\":\"-1/4\"") != std::string::npos);
    CHECK(json.find("\"mode\":\"exact\"") != std::string::npos);
    CHECK(json.find("timings") == std::string::npos);
    CHECK(solution_to_json(sol, true).find("timings") != std::string::npos);
    const std::string report = report_to_json(check_assumptions(p, Bounds{}));
    CHECK(report.find("\"pass\":true") != std::string::npos);
    CHECK(certify_to_json(certify(sol, p)).find("\"ok\":true") != std::string::npos);
}
