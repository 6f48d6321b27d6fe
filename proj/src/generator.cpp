#include "generator.hpp"

#include <algorithm>

#include <json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

namespace {

// Substream ids, fixed so instances are reproducible from seed + description.
enum Stream : std::uint64_t { kDiag = 1, kCouple = 2, kLinear = 3, kShape = 4 };

long nonzero(SplitMix64& rng, int range) {
    long v = rng.range(1, range);
    return rng.bounded(2) ? v : -v;
}

Polynomial gen_path_blocks(const GenSpec& s) {
    const int bs = std::max(1, s.block_size);
    const int m = std::max(1, s.m);
    const int n = m * bs + (m - 1);
    Polynomial p(n);
    SplitMix64 base(s.seed);
    SplitMix64 diag = base.substream(kDiag);
    SplitMix64 couple = base.substream(kCouple);
    SplitMix64 linear = base.substream(kLinear);

    // Layout: [block 0][z_0][block 1][z_1]...[block m-1]; block i starts at
    // i*(bs+1), connector z_i sits at i*(bs+1)+bs.
    auto block_var = [bs](int i, int j) { return i * (bs + 1) + j; };
    auto z_var = [bs](int i) { return i * (bs + 1) + bs; };

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < bs; ++j) {
            const int c = block_var(i, j);
            p.add_term(Monomial::var(c, 2), Rat(diag.range(1, s.coef_range)));
            if (s.degree >= 3) p.add_term(Monomial::var(c, 3), Rat(diag.range(1, s.coef_range)));
            if (j + 1 < bs)
                p.add_term(Monomial::from_pairs({{c, 1}, {block_var(i, j + 1), 1}}),
                           Rat(nonzero(couple, s.coef_range)));
        }
        if (i > 0)
            p.add_term(Monomial::from_pairs({{z_var(i - 1), 1}, {block_var(i, 0), 1}}),
                       Rat(nonzero(couple, s.coef_range)));
        if (i + 1 < m)
            p.add_term(Monomial::from_pairs({{block_var(i, bs - 1), 1}, {z_var(i), 1}}),
                       Rat(nonzero(couple, s.coef_range)));
    }
    for (int i = 0; i + 1 < m; ++i) {
        const long d = diag.range(-s.coef_range, 0);  // hidden-binary connector
        if (d != 0) p.add_term(Monomial::var(z_var(i), 2), Rat(d));
    }
    for (int v = 0; v < n; ++v) {
        const long c = linear.range(-s.coef_range, s.coef_range);
        if (c != 0) p.add_term(Monomial::var(v), Rat(c));
    }
    return p;
}

Polynomial gen_tree_backbone(const GenSpec& s) {
    const int bs = std::max(1, s.block_size);
    const int m = std::max(1, s.m);
    const int nbr = std::max(0, s.nbr_size);
    const int backbone = nbr >= 1 ? m * nbr : m;
    const int n = backbone + m * bs;
    Polynomial p(n);
    SplitMix64 base(s.seed);
    SplitMix64 diag = base.substream(kDiag);
    SplitMix64 couple = base.substream(kCouple);
    SplitMix64 linear = base.substream(kLinear);
    SplitMix64 shape = base.substream(kShape);

    auto block_var = [&](int i, int j) { return backbone + i * bs + j; };

    // Binary backbone path.
    for (int t = 0; t + 1 < backbone; ++t)
        p.add_term(Monomial::from_pairs({{t, 1}, {t + 1, 1}}), Rat(nonzero(couple, s.coef_range)));
    for (int t = 0; t < backbone; ++t) {
        const long d = diag.range(-s.coef_range, 0);
        if (d != 0) p.add_term(Monomial::var(t, 2), Rat(d));
    }

    // Continuous blocks on disjoint backbone windows [i*nbr, (i+1)*nbr).
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < bs; ++j) {
            const int c = block_var(i, j);
            p.add_term(Monomial::var(c, 2), Rat(diag.range(1, s.coef_range)));
            if (s.degree >= 3) p.add_term(Monomial::var(c, 3), Rat(diag.range(1, s.coef_range)));
            if (j + 1 < bs)
                p.add_term(Monomial::from_pairs({{c, 1}, {block_var(i, j + 1), 1}}),
                           Rat(nonzero(couple, s.coef_range)));
            for (int w = 0; w < nbr; ++w) {
                // Each window slot wired with probability 1/2; slot j mod nbr
                // always, so the block touches its window.
                if (w != (j % std::max(nbr, 1)) && shape.bounded(2) == 0) continue;
                p.add_term(Monomial::from_pairs({{c, 1}, {i * nbr + w, 1}}),
                           Rat(nonzero(couple, s.coef_range)));
            }
        }
        if (s.degree >= 3 && bs >= 2 && nbr >= 1)
            p.add_term(Monomial::from_pairs(
                           {{block_var(i, 0), 1},
                            {block_var(i, 1), 1},
                            {i * nbr + static_cast<int>(shape.bounded(nbr)), 1}}),
                       Rat(nonzero(couple, s.coef_range)));
    }
    for (int v = 0; v < n; ++v) {
        const long c = linear.range(-s.coef_range, s.coef_range);
        if (c != 0) p.add_term(Monomial::var(v), Rat(c));
    }
    return p;
}

Polynomial gen_random_sparse(const GenSpec& s) {
    const int n = std::max(1, s.m);  // m = variable count for this kind
    const int d = std::max(1, s.degree);
    Polynomial p(n);
    SplitMix64 base(s.seed);
    SplitMix64 diag = base.substream(kDiag);
    SplitMix64 shape = base.substream(kShape);
    SplitMix64 coef = base.substream(kCouple);

    // Mixed-sign diagonals.
    for (int v = 0; v < n; ++v)
        if (d >= 2 && diag.bounded(2) == 0)
            p.add_term(Monomial::var(v, 2), Rat(nonzero(diag, s.coef_range)));

    const int monomials = 3 * n;
    for (int t = 0; t < monomials; ++t) {
        const int card = 1 + static_cast<int>(shape.bounded(static_cast<std::uint64_t>(
                                 std::min(d, std::min(n, 3)))));
        std::vector<int> sup;
        while (static_cast<int>(sup.size()) < card) {
            const int v = static_cast<int>(shape.bounded(n));
            if (std::find(sup.begin(), sup.end(), v) == sup.end()) sup.push_back(v);
        }
        std::sort(sup.begin(), sup.end());
        // Distribute remaining degree budget.
        std::vector<std::pair<int, int>> pairs;
        int budget = d - card;
        for (int v : sup) {
            int extra = budget > 0 ? static_cast<int>(shape.bounded(budget + 1)) : 0;
            budget -= extra;
            pairs.emplace_back(v, 1 + extra);
        }
        p.add_term(Monomial::from_pairs(std::move(pairs)), Rat(nonzero(coef, s.coef_range)));
    }
    // Guarantee a monomial of total degree d.
    const int v = static_cast<int>(shape.bounded(n));
    p.add_term(Monomial::var(v, d), Rat(nonzero(coef, s.coef_range)));
    for (int w = 0; w < n; ++w) {
        const long c = coef.range(-s.coef_range, s.coef_range);
        if (c != 0) p.add_term(Monomial::var(w), Rat(c));
    }
    if (p.is_zero()) p.add_term(Monomial::var(0), Rat(1));
    return p;
}

}  // namespace

Polynomial generate(const GenSpec& spec) {
    if (spec.m < 1) fail(Errc::invalid_argument, "m must be >= 1");
    if (spec.coef_range < 1) fail(Errc::invalid_argument, "coef_range must be >= 1");
    if (spec.degree < 2) fail(Errc::invalid_argument, "degree must be >= 2");
    switch (spec.kind) {
        case GenSpec::Kind::path_blocks: return gen_path_blocks(spec);
        case GenSpec::Kind::tree_backbone: return gen_tree_backbone(spec);
        case GenSpec::Kind::random_sparse: return gen_random_sparse(spec);
    }
    fail(Errc::invalid_argument, "unknown generator kind");
}

Bounds suggested_bounds(const GenSpec& spec, const Polynomial& p) {
    Bounds b;
    switch (spec.kind) {
        case GenSpec::Kind::path_blocks:
            b.tw_max = 2;
            b.itw_max = 3;
            b.block_max = std::max(1, spec.block_size);
            b.nbr_max = 2;
            break;
        case GenSpec::Kind::tree_backbone:
            b.tw_max = std::max(1, spec.block_size) + 2;
            b.itw_max = std::max(1, spec.block_size) + 3;
            b.block_max = std::max(1, spec.block_size);
            b.nbr_max = std::max(1, spec.nbr_size);
            break;
        case GenSpec::Kind::random_sparse: {
            const Hypergraph h = interaction_hypergraph(p);
            b.tw_max = std::max(1, p.nvars() - 1);
            b.itw_max = std::max(1, p.nvars() + static_cast<int>(h.edge_count()));
            b.block_max = std::max(1, p.nvars());
            b.nbr_max = std::max(1, p.nvars());
            break;
        }
    }
    return b;
}

GenSpec genspec_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("malformed JSON: ") + e.what());
    }
    GenSpec s;
    const std::string kind = doc.value("kind", "path-blocks");
    if (kind == "path-blocks")
        s.kind = GenSpec::Kind::path_blocks;
    else if (kind == "tree-backbone")
        s.kind = GenSpec::Kind::tree_backbone;
    else if (kind == "random-sparse")
        s.kind = GenSpec::Kind::random_sparse;
    else
        fail(Errc::parse, "unknown kind \"" + kind + "\"");
    s.m = doc.value("m", 3);
    s.block_size = doc.value("block_size", 1);
    s.nbr_size = doc.value("nbr_size", 2);
    s.degree = doc.value("degree", 2);
    s.seed = doc.value("seed", std::uint64_t{0});
    s.coef_range = doc.value("coef_range", 10);
    return s;
}

std::string genspec_to_json(const GenSpec& spec) {
    ordered_json doc;
    switch (spec.kind) {
        case GenSpec::Kind::path_blocks: doc["kind"] = "path-blocks"; break;
        case GenSpec::Kind::tree_backbone: doc["kind"] = "tree-backbone"; break;
        case GenSpec::Kind::random_sparse: doc["kind"] = "random-sparse"; break;
    }
    doc["m"] = spec.m;
    doc["block_size"] = spec.block_size;
    doc["nbr_size"] = spec.nbr_size;
    doc["degree"] = spec.degree;
    doc["seed"] = spec.seed;
    doc["coef_range"] = spec.coef_range;
    return doc.dump();
}

}  // namespace boxpoly
