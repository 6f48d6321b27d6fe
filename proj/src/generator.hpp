#pragma once

#include <cstdint>
#include <string>

#include "pipeline.hpp"
#include "polynomial.hpp"

namespace boxpoly {

// Seeded instance families. path-blocks is the path-of-blocks construction
// (continuous blocks chained through single binary connectors, interaction
// graph a path); tree-backbone couples blocks to disjoint windows of a binary
// backbone path; random-sparse draws unstructured sparse monomials (m is the
// variable count there).
struct GenSpec {
    enum class Kind { path_blocks, tree_backbone, random_sparse };
    Kind kind = Kind::path_blocks;
    int m = 3;
    int block_size = 1;
    int nbr_size = 2;
    int degree = 2;
    std::uint64_t seed = 0;
    int coef_range = 10;
};

Polynomial generate(const GenSpec& spec);

// Bounds the generated instance is guaranteed to satisfy; structured kinds
// derive them from the spec, random-sparse from the instance itself.
Bounds suggested_bounds(const GenSpec& spec, const Polynomial& p);

GenSpec genspec_from_json(const std::string& text);
std::string genspec_to_json(const GenSpec& spec);

}  // namespace boxpoly
