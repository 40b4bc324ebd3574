#pragma once

#include "idem/frobenius.hpp"
#include "idem/random.hpp"
#include "idem/truth_table.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace idem::genome {

enum class Encoding { unrestricted, restricted };

/// Truth-table genome. Unrestricted genomes carry all 2^n outputs; restricted
/// genomes carry one bit per Frobenius orbit, in orbit-index order.
struct BitstringGenome {
    Encoding encoding = Encoding::unrestricted;
    std::vector<std::uint8_t> bits;

    friend bool operator==(const BitstringGenome&, const BitstringGenome&) = default;
};

enum class Op : std::uint8_t { var, not_, and_, or_, xor_, if_ };

int arity(Op op) noexcept;

struct Node {
    Op op = Op::var;
    std::uint8_t var = 0;  // only meaningful for Op::var

    friend bool operator==(const Node&, const Node&) = default;
};

/// Boolean expression tree stored in prefix order; every subtree is a contiguous range.
struct TreeGenome {
    std::vector<Node> nodes;

    friend bool operator==(const TreeGenome&, const TreeGenome&) = default;
};

using Genotype = std::variant<BitstringGenome, TreeGenome>;

// Tree shape limits. Depth counts edges, so a lone leaf has depth 0.
struct TreeLimits {
    int max_depth = 8;
    int init_min_depth = 2;
    int init_max_depth = 5;
    int mutation_max_depth = 4;
};

// -- tree structure --------------------------------------------------------

/// One past the last node of the subtree rooted at `root`.
std::size_t subtree_end(std::span<const Node> nodes, std::size_t root);
int depth(const TreeGenome& tree);
/// Throws std::invalid_argument if arities do not form exactly one tree or a leaf is >= n.
void validate(const TreeGenome& tree, int n);

/// Prefix S-expression, e.g. "(IF x0 (XOR x1 x2) (NOT x3))".
std::string to_sexpr(const TreeGenome& tree);
TreeGenome parse_sexpr(std::string_view text);

std::string to_string(const BitstringGenome& g);
std::string to_string(const Genotype& g);

// -- decoding --------------------------------------------------------------

/// tt[X] = g.bits[orbit_id[X]]. Throws std::invalid_argument on a length mismatch.
TruthTable expand_restricted(const BitstringGenome& g, const frobenius::OrbitPartition& op);
void expand_restricted_into(std::span<const std::uint8_t> orbit_bits, const frobenius::OrbitPartition& op,
                            std::span<std::uint8_t> out);

/// Reads the bit at each orbit representative: the inverse of expand_restricted on idempotent tables.
BitstringGenome extract_restricted(const TruthTable& tt, const frobenius::OrbitPartition& op);

/// tt[X] = tree evaluated with x_i = bit i of X.
TruthTable eval_tree(const TreeGenome& tree, int n);
void eval_tree_into(const TreeGenome& tree, int n, std::span<std::uint8_t> out);

/// Copies the value at each orbit's representative over the whole orbit.
TruthTable repair_tree_tt(const TruthTable& tt, const frobenius::OrbitPartition& op);
void repair_in_place(std::span<std::uint8_t> bits, const frobenius::OrbitPartition& op);

// -- initialization --------------------------------------------------------

BitstringGenome random_bitstring(Encoding encoding, std::size_t length, Rng& rng);
TreeGenome random_tree_full(int n, int depth, Rng& rng);
TreeGenome random_tree_grow(int n, int max_depth, Rng& rng);
/// Ramped half-and-half: depth cycles through init_min_depth..=init_max_depth with
/// `slot`, and the full/grow method is chosen by coin flip.
TreeGenome random_tree_ramped(int n, const TreeLimits& limits, std::size_t slot, Rng& rng);

// -- bitstring variation ---------------------------------------------------

void mutate_flip(BitstringGenome& g, Rng& rng);
/// Uniformly permutes the bits inside a random contiguous segment.
void mutate_shuffle(BitstringGenome& g, Rng& rng);
BitstringGenome crossover_one_point(const BitstringGenome& a, const BitstringGenome& b, Rng& rng);
BitstringGenome crossover_uniform(const BitstringGenome& a, const BitstringGenome& b, Rng& rng);

// -- tree variation --------------------------------------------------------
// Every tree operator returns a copy of the first parent when the offspring
// would exceed limits.max_depth.

TreeGenome subtree_mutation(const TreeGenome& g, int n, const TreeLimits& limits, Rng& rng);
TreeGenome crossover_simple(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng);
TreeGenome crossover_uniform(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng);
TreeGenome crossover_size_fair(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng);
TreeGenome crossover_one_point(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng);
TreeGenome crossover_context_preserving(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits,
                                        Rng& rng);

// -- operator roulettes ----------------------------------------------------

/// Applies one mutation operator drawn uniformly from the set applicable to g.
void mutate(Genotype& g, int n, const TreeLimits& limits, Rng& rng);
/// Applies one crossover operator drawn uniformly from the set applicable to the parents.
/// Throws std::invalid_argument if the parents differ in kind, encoding, or length.
Genotype crossover(const Genotype& a, const Genotype& b, const TreeLimits& limits, Rng& rng);

}  // namespace idem::genome
