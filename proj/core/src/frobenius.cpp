#include "idem/frobenius.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace idem::frobenius {

std::uint32_t SquareMap::apply_matrix(std::uint32_t x) const noexcept
{
    std::uint32_t y = 0;
    for (std::size_t i = 0; x != 0; ++i, x >>= 1) {
        if (x & 1u) {
            y ^= columns_[i];
        }
    }
    return y;
}

SquareMap build_square_map(const gf2n::PolySpec& p)
{
    SquareMap sm;
    sm.poly_ = p;
    sm.columns_.resize(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        sm.columns_[static_cast<std::size_t>(i)] = gf2n::square({std::uint32_t{1} << i}, p).value;
    }

    const std::size_t size = std::size_t{1} << p.n;
    sm.perm_.resize(size);
    std::vector<bool> hit(size, false);
    for (std::uint32_t x = 0; x < size; ++x) {
        const std::uint32_t y = sm.apply_matrix(x);
        if (y != gf2n::square({x}, p).value) {
            throw std::logic_error("build_square_map: matrix disagrees with field squaring");
        }
        if (hit[y]) {
            throw std::logic_error("build_square_map: squaring map is not a bijection");
        }
        hit[y] = true;
        sm.perm_[x] = y;
    }
    return sm;
}

OrbitPartition enumerate_orbits(const SquareMap& sm)
{
    constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
    const auto perm = sm.perm();

    OrbitPartition op;
    op.n_ = sm.n();
    op.orbit_id_.assign(perm.size(), unvisited);
    op.members_.reserve(perm.size());

    // An ascending scan meets every orbit first at its smallest word.
    for (std::uint32_t seed = 0; seed < perm.size(); ++seed) {
        if (op.orbit_id_[seed] != unvisited) {
            continue;
        }
        const auto id = static_cast<std::uint32_t>(op.representatives_.size());
        op.representatives_.push_back(seed);
        op.offsets_.push_back(static_cast<std::uint32_t>(op.members_.size()));
        std::uint32_t size = 0;
        std::uint32_t x = seed;
        do {
            op.orbit_id_[x] = id;
            op.members_.push_back(x);
            ++size;
            x = perm[x];
        } while (x != seed);
        op.sizes_.push_back(size);
    }
    return op;
}

std::uint64_t burnside_count(int n)
{
    if (n < 1 || n > 62) {
        throw std::out_of_range("burnside_count: n must be in 1..=62");
    }
    std::uint64_t total = 0;
    for (int k = 0; k < n; ++k) {
        total += std::uint64_t{1} << std::gcd(n, k);
    }
    return total / static_cast<std::uint64_t>(n);
}

bool is_idempotent(const TruthTable& tt, const SquareMap& sm)
{
    if (tt.n() != sm.n()) {
        throw std::invalid_argument("is_idempotent: dimension mismatch");
    }
    const auto bits = tt.bits();
    const auto perm = sm.perm();
    for (std::size_t x = 0; x < bits.size(); ++x) {
        if (bits[x] != bits[perm[x]]) {
            return false;
        }
    }
    return true;
}

}  // namespace idem::frobenius
