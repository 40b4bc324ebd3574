#include "idem/genome.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace idem::genome {

namespace {

constexpr std::array<Op, 5> kFunctions{Op::not_, Op::and_, Op::or_, Op::xor_, Op::if_};

constexpr std::array<std::uint64_t, 6> kVarMasks{
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

std::string_view op_name(Op op)
{
    switch (op) {
    case Op::not_: return "NOT";
    case Op::and_: return "AND";
    case Op::or_: return "OR";
    case Op::xor_: return "XOR";
    case Op::if_: return "IF";
    case Op::var: break;
    }
    return "";
}

// Evaluates 64 consecutive inputs at once; vars[i] holds the x_i column for the block.
std::uint64_t eval_block(std::span<const Node> nodes, std::size_t& pos, std::span<const std::uint64_t> vars)
{
    const Node node = nodes[pos++];
    switch (node.op) {
    case Op::var: return vars[node.var];
    case Op::not_: return ~eval_block(nodes, pos, vars);
    case Op::and_: {
        const std::uint64_t l = eval_block(nodes, pos, vars);
        return l & eval_block(nodes, pos, vars);
    }
    case Op::or_: {
        const std::uint64_t l = eval_block(nodes, pos, vars);
        return l | eval_block(nodes, pos, vars);
    }
    case Op::xor_: {
        const std::uint64_t l = eval_block(nodes, pos, vars);
        return l ^ eval_block(nodes, pos, vars);
    }
    case Op::if_: {
        const std::uint64_t c = eval_block(nodes, pos, vars);
        const std::uint64_t t = eval_block(nodes, pos, vars);
        const std::uint64_t e = eval_block(nodes, pos, vars);
        return (c & t) | (~c & e);
    }
    }
    return 0;
}

void emit_random(std::vector<Node>& out, int n, int remaining, bool full, Rng& rng)
{
    const auto vars = static_cast<std::uint64_t>(n);
    const bool leaf = remaining == 0 || (!full && rng.below(vars + kFunctions.size()) < vars);
    if (leaf) {
        out.push_back({Op::var, static_cast<std::uint8_t>(rng.below(vars))});
        return;
    }
    const Op op = kFunctions[rng.index(kFunctions.size())];
    out.push_back({op, 0});
    for (int k = 0; k < arity(op); ++k) {
        emit_random(out, n, remaining - 1, full, rng);
    }
}

TreeGenome within_limits(TreeGenome child, const TreeGenome& fallback, const TreeLimits& limits)
{
    if (depth(child) > limits.max_depth) {
        return fallback;
    }
    return child;
}

// a with the subtree at i replaced by the subtree of b at j.
TreeGenome splice(const TreeGenome& a, std::size_t i, const TreeGenome& b, std::size_t j)
{
    const std::size_t a_end = subtree_end(a.nodes, i);
    const std::size_t b_end = subtree_end(b.nodes, j);
    TreeGenome child;
    child.nodes.reserve(a.nodes.size() - (a_end - i) + (b_end - j));
    child.nodes.insert(child.nodes.end(), a.nodes.begin(), a.nodes.begin() + static_cast<std::ptrdiff_t>(i));
    child.nodes.insert(child.nodes.end(), b.nodes.begin() + static_cast<std::ptrdiff_t>(j),
                       b.nodes.begin() + static_cast<std::ptrdiff_t>(b_end));
    child.nodes.insert(child.nodes.end(), a.nodes.begin() + static_cast<std::ptrdiff_t>(a_end), a.nodes.end());
    return child;
}

// Pairs of nodes sitting at the same coordinates (path of child indices) in both
// trees. With same_arity, descent stops wherever the arities differ, which gives
// the common region of one-point crossover.
void collect_aligned(std::span<const Node> a, std::size_t i, std::span<const Node> b, std::size_t j,
                     bool same_arity, std::vector<std::pair<std::size_t, std::size_t>>& out)
{
    out.emplace_back(i, j);
    const int ka = arity(a[i].op);
    const int kb = arity(b[j].op);
    if (same_arity && ka != kb) {
        return;
    }
    std::size_t ci = i + 1;
    std::size_t cj = j + 1;
    for (int k = 0; k < std::min(ka, kb); ++k) {
        collect_aligned(a, ci, b, cj, same_arity, out);
        ci = subtree_end(a, ci);
        cj = subtree_end(b, cj);
    }
}

void emit_uniform(std::span<const Node> a, std::size_t i, std::span<const Node> b, std::size_t j,
                  std::vector<Node>& out, Rng& rng)
{
    const int ka = arity(a[i].op);
    if (ka > 0 && ka == arity(b[j].op)) {
        out.push_back(rng.coin() ? a[i] : b[j]);
        std::size_t ci = i + 1;
        std::size_t cj = j + 1;
        for (int k = 0; k < ka; ++k) {
            emit_uniform(a, ci, b, cj, out, rng);
            ci = subtree_end(a, ci);
            cj = subtree_end(b, cj);
        }
        return;
    }
    // Boundary of the common region: take a whole subtree from one side.
    if (rng.coin()) {
        out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i),
                   a.begin() + static_cast<std::ptrdiff_t>(subtree_end(a, i)));
    } else {
        out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j),
                   b.begin() + static_cast<std::ptrdiff_t>(subtree_end(b, j)));
    }
}

void check_compatible(const BitstringGenome& a, const BitstringGenome& b)
{
    if (a.encoding != b.encoding || a.bits.size() != b.bits.size()) {
        throw std::invalid_argument("crossover: parents differ in encoding or length");
    }
}

class SexprParser {
public:
    explicit SexprParser(std::string_view text) : text_(text) {}

    TreeGenome parse()
    {
        TreeGenome tree;
        parse_expr(tree.nodes);
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing characters");
        }
        return tree;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse_sexpr: " + what + " at offset " + std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view token()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a name");
        }
        return text_.substr(start, pos_ - start);
    }

    void parse_expr(std::vector<Node>& out)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            const std::string_view name = token();
            const auto it = std::find_if(kFunctions.begin(), kFunctions.end(),
                                         [name](Op op) { return op_name(op) == name; });
            if (it == kFunctions.end()) {
                fail("unknown function '" + std::string(name) + "'");
            }
            out.push_back({*it, 0});
            for (int k = 0; k < arity(*it); ++k) {
                parse_expr(out);
            }
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return;
        }
        const std::string_view name = token();
        if (name.size() < 2 || name.front() != 'x' ||
            !std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            fail("expected a variable like x3");
        }
        const int index = std::stoi(std::string(name.substr(1)));
        if (index > 255) {
            fail("variable index too large");
        }
        out.push_back({Op::var, static_cast<std::uint8_t>(index)});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void append_sexpr(std::span<const Node> nodes, std::size_t& pos, std::string& out)
{
    const Node node = nodes[pos++];
    if (node.op == Op::var) {
        out += 'x';
        out += std::to_string(node.var);
        return;
    }
    out += '(';
    out += op_name(node.op);
    for (int k = 0; k < arity(node.op); ++k) {
        out += ' ';
        append_sexpr(nodes, pos, out);
    }
    out += ')';
}

}  // namespace

int arity(Op op) noexcept
{
    switch (op) {
    case Op::var: return 0;
    case Op::not_: return 1;
    case Op::and_:
    case Op::or_:
    case Op::xor_: return 2;
    case Op::if_: return 3;
    }
    return 0;
}

std::size_t subtree_end(std::span<const Node> nodes, std::size_t root)
{
    std::size_t open = 1;
    std::size_t pos = root;
    while (open != 0) {
        open += static_cast<std::size_t>(arity(nodes[pos].op));
        --open;
        ++pos;
    }
    return pos;
}

int depth(const TreeGenome& tree)
{
    // Stack of remaining child slots per open ancestor.
    std::vector<int> pending;
    int deepest = 0;
    for (const Node& node : tree.nodes) {
        deepest = std::max(deepest, static_cast<int>(pending.size()));
        if (!pending.empty()) {
            --pending.back();
        }
        if (arity(node.op) > 0) {
            pending.push_back(arity(node.op));
        }
        while (!pending.empty() && pending.back() == 0) {
            pending.pop_back();
        }
    }
    return deepest;
}

void validate(const TreeGenome& tree, int n)
{
    if (tree.nodes.empty()) {
        throw std::invalid_argument("tree: empty");
    }
    std::size_t open = 1;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (open == 0) {
            throw std::invalid_argument("tree: nodes after the root subtree closed");
        }
        const Node& node = tree.nodes[i];
        if (node.op == Op::var && node.var >= n) {
            throw std::invalid_argument("tree: variable index out of range");
        }
        open += static_cast<std::size_t>(arity(node.op));
        --open;
    }
    if (open != 0) {
        throw std::invalid_argument("tree: missing operands");
    }
}

std::string to_sexpr(const TreeGenome& tree)
{
    std::string out;
    std::size_t pos = 0;
    append_sexpr(tree.nodes, pos, out);
    return out;
}

TreeGenome parse_sexpr(std::string_view text)
{
    return SexprParser(text).parse();
}

std::string to_string(const BitstringGenome& g)
{
    std::string out(g.bits.size(), '0');
    for (std::size_t i = 0; i < g.bits.size(); ++i) {
        if (g.bits[i]) {
            out[i] = '1';
        }
    }
    return out;
}

std::string to_string(const Genotype& g)
{
    if (const auto* bits = std::get_if<BitstringGenome>(&g)) {
        return to_string(*bits);
    }
    return to_sexpr(std::get<TreeGenome>(g));
}

void expand_restricted_into(std::span<const std::uint8_t> orbit_bits, const frobenius::OrbitPartition& op,
                            std::span<std::uint8_t> out)
{
    const auto ids = op.orbit_id();
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = orbit_bits[ids[x]];
    }
}

TruthTable expand_restricted(const BitstringGenome& g, const frobenius::OrbitPartition& op)
{
    if (g.bits.size() != op.count()) {
        throw std::invalid_argument("expand_restricted: genome length differs from orbit count");
    }
    TruthTable tt(op.n());
    expand_restricted_into(g.bits, op, tt.bits());
    return tt;
}

BitstringGenome extract_restricted(const TruthTable& tt, const frobenius::OrbitPartition& op)
{
    if (tt.n() != op.n()) {
        throw std::invalid_argument("extract_restricted: dimension mismatch");
    }
    BitstringGenome g{Encoding::restricted, {}};
    g.bits.reserve(op.count());
    for (std::uint32_t rep : op.representatives()) {
        g.bits.push_back(tt[rep] ? 1 : 0);
    }
    return g;
}

void eval_tree_into(const TreeGenome& tree, int n, std::span<std::uint8_t> out)
{
    std::array<std::uint64_t, 32> vars{};
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t block = 0; block < size; block += 64) {
        for (int i = 0; i < n; ++i) {
            vars[static_cast<std::size_t>(i)] = i < 6 ? kVarMasks[static_cast<std::size_t>(i)]
                                                      : (((block >> i) & 1u) != 0 ? ~std::uint64_t{0} : 0);
        }
        std::size_t pos = 0;
        const std::uint64_t word = eval_block(tree.nodes, pos, vars);
        const std::size_t count = std::min<std::size_t>(64, size - block);
        for (std::size_t k = 0; k < count; ++k) {
            out[block + k] = static_cast<std::uint8_t>(word >> k & 1u);
        }
    }
}

TruthTable eval_tree(const TreeGenome& tree, int n)
{
    validate(tree, n);
    TruthTable tt(n);
    eval_tree_into(tree, n, tt.bits());
    return tt;
}

void repair_in_place(std::span<std::uint8_t> bits, const frobenius::OrbitPartition& op)
{
    const auto reps = op.representatives();
    const auto ids = op.orbit_id();
    for (std::size_t x = 0; x < bits.size(); ++x) {
        bits[x] = bits[reps[ids[x]]];
    }
}

TruthTable repair_tree_tt(const TruthTable& tt, const frobenius::OrbitPartition& op)
{
    if (tt.n() != op.n()) {
        throw std::invalid_argument("repair_tree_tt: dimension mismatch");
    }
    TruthTable out = tt;
    repair_in_place(out.bits(), op);
    return out;
}

BitstringGenome random_bitstring(Encoding encoding, std::size_t length, Rng& rng)
{
    BitstringGenome g{encoding, std::vector<std::uint8_t>(length)};
    for (auto& b : g.bits) {
        b = rng.coin() ? 1 : 0;
    }
    return g;
}

TreeGenome random_tree_full(int n, int depth, Rng& rng)
{
    TreeGenome tree;
    emit_random(tree.nodes, n, depth, true, rng);
    return tree;
}

TreeGenome random_tree_grow(int n, int max_depth, Rng& rng)
{
    TreeGenome tree;
    emit_random(tree.nodes, n, max_depth, false, rng);
    return tree;
}

TreeGenome random_tree_ramped(int n, const TreeLimits& limits, std::size_t slot, Rng& rng)
{
    const auto span = static_cast<std::size_t>(limits.init_max_depth - limits.init_min_depth + 1);
    const int d = limits.init_min_depth + static_cast<int>(slot % span);
    return rng.coin() ? random_tree_full(n, d, rng) : random_tree_grow(n, d, rng);
}

void mutate_flip(BitstringGenome& g, Rng& rng)
{
    g.bits[rng.index(g.bits.size())] ^= 1;
}

void mutate_shuffle(BitstringGenome& g, Rng& rng)
{
    std::size_t lo = rng.index(g.bits.size());
    std::size_t hi = rng.index(g.bits.size());
    if (lo > hi) {
        std::swap(lo, hi);
    }
    rng.shuffle(std::span<std::uint8_t>(g.bits).subspan(lo, hi - lo + 1));
}

BitstringGenome crossover_one_point(const BitstringGenome& a, const BitstringGenome& b, Rng& rng)
{
    check_compatible(a, b);
    const std::size_t cut = rng.index(a.bits.size() + 1);
    BitstringGenome child = a;
    std::copy(b.bits.begin() + static_cast<std::ptrdiff_t>(cut), b.bits.end(),
              child.bits.begin() + static_cast<std::ptrdiff_t>(cut));
    return child;
}

BitstringGenome crossover_uniform(const BitstringGenome& a, const BitstringGenome& b, Rng& rng)
{
    check_compatible(a, b);
    BitstringGenome child = a;
    for (std::size_t i = 0; i < child.bits.size(); ++i) {
        if (rng.coin()) {
            child.bits[i] = b.bits[i];
        }
    }
    return child;
}

TreeGenome subtree_mutation(const TreeGenome& g, int n, const TreeLimits& limits, Rng& rng)
{
    const std::size_t point = rng.index(g.nodes.size());
    const TreeGenome fresh = random_tree_grow(n, limits.mutation_max_depth, rng);
    return within_limits(splice(g, point, fresh, 0), g, limits);
}

TreeGenome crossover_simple(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng)
{
    const std::size_t i = rng.index(a.nodes.size());
    const std::size_t j = rng.index(b.nodes.size());
    return within_limits(splice(a, i, b, j), a, limits);
}

TreeGenome crossover_size_fair(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng)
{
    const std::size_t i = rng.index(a.nodes.size());
    const std::size_t removed = subtree_end(a.nodes, i) - i;
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < b.nodes.size(); ++j) {
        if (subtree_end(b.nodes, j) - j <= 1 + 2 * removed) {
            candidates.push_back(j);
        }
    }
    // Leaves always qualify, so the candidate list is never empty.
    const std::size_t j = candidates[rng.index(candidates.size())];
    return within_limits(splice(a, i, b, j), a, limits);
}

TreeGenome crossover_uniform(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng)
{
    TreeGenome child;
    emit_uniform(a.nodes, 0, b.nodes, 0, child.nodes, rng);
    return within_limits(std::move(child), a, limits);
}

TreeGenome crossover_one_point(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits, Rng& rng)
{
    std::vector<std::pair<std::size_t, std::size_t>> region;
    collect_aligned(a.nodes, 0, b.nodes, 0, true, region);
    const auto [i, j] = region[rng.index(region.size())];
    return within_limits(splice(a, i, b, j), a, limits);
}

TreeGenome crossover_context_preserving(const TreeGenome& a, const TreeGenome& b, const TreeLimits& limits,
                                        Rng& rng)
{
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    collect_aligned(a.nodes, 0, b.nodes, 0, false, shared);
    const auto [i, j] = shared[rng.index(shared.size())];
    return within_limits(splice(a, i, b, j), a, limits);
}

void mutate(Genotype& g, int n, const TreeLimits& limits, Rng& rng)
{
    if (auto* bits = std::get_if<BitstringGenome>(&g)) {
        if (rng.coin()) {
            mutate_flip(*bits, rng);
        } else {
            mutate_shuffle(*bits, rng);
        }
        return;
    }
    auto& tree = std::get<TreeGenome>(g);
    tree = subtree_mutation(tree, n, limits, rng);
}

Genotype crossover(const Genotype& a, const Genotype& b, const TreeLimits& limits, Rng& rng)
{
    if (a.index() != b.index()) {
        throw std::invalid_argument("crossover: parents have different genotype kinds");
    }
    if (const auto* ba = std::get_if<BitstringGenome>(&a)) {
        const auto& bb = std::get<BitstringGenome>(b);
        return rng.coin() ? crossover_one_point(*ba, bb, rng) : crossover_uniform(*ba, bb, rng);
    }
    const auto& ta = std::get<TreeGenome>(a);
    const auto& tb = std::get<TreeGenome>(b);
    switch (rng.index(5)) {
    case 0: return crossover_simple(ta, tb, limits, rng);
    case 1: return crossover_uniform(ta, tb, limits, rng);
    case 2: return crossover_size_fair(ta, tb, limits, rng);
    case 3: return crossover_one_point(ta, tb, limits, rng);
    default: return crossover_context_preserving(ta, tb, limits, rng);
    }
}

}  // namespace idem::genome
