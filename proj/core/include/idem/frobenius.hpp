#pragma once

#include "idem/gf2n.hpp"
#include "idem/truth_table.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace idem::frobenius {

/// The squaring map x -> x^2 of GF(2^n) written as an F2-linear map on
/// coordinate words, with a dense lookup table over all 2^n inputs.
class SquareMap {
public:
    int n() const noexcept { return poly_.n; }
    const gf2n::PolySpec& poly() const noexcept { return poly_; }

    /// Column i holds coords(a^{2i}), i.e. the image of basis vector a^i.
    std::span<const std::uint32_t> columns() const noexcept { return columns_; }
    /// perm()[X] = coords(x^2) for the element with coordinate word X.
    std::span<const std::uint32_t> perm() const noexcept { return perm_; }

    std::uint32_t operator()(std::uint32_t x) const noexcept { return perm_[x]; }

    /// Matrix-vector product over F2, independent of the lookup table.
    std::uint32_t apply_matrix(std::uint32_t x) const noexcept;

private:
    friend SquareMap build_square_map(const gf2n::PolySpec& p);

    gf2n::PolySpec poly_;
    std::vector<std::uint32_t> columns_;
    std::vector<std::uint32_t> perm_;
};

/// Builds the matrix from field squaring of the basis and cross-checks every
/// table entry against gf2n::square. Throws std::logic_error on any mismatch.
SquareMap build_square_map(const gf2n::PolySpec& p);

/// Frobenius orbits of all 2^n coordinate words. Orbit k has representative
/// representatives()[k], the smallest word in it; representatives ascend.
class OrbitPartition {
public:
    int n() const noexcept { return n_; }
    std::size_t count() const noexcept { return representatives_.size(); }

    std::span<const std::uint32_t> orbit_id() const noexcept { return orbit_id_; }
    std::span<const std::uint32_t> representatives() const noexcept { return representatives_; }
    std::span<const std::uint32_t> orbit_sizes() const noexcept { return sizes_; }

    /// Members of orbit k in squaring order starting from its representative.
    std::span<const std::uint32_t> members(std::size_t k) const noexcept
    {
        return std::span<const std::uint32_t>(members_).subspan(offsets_[k], sizes_[k]);
    }

private:
    friend OrbitPartition enumerate_orbits(const SquareMap& sm);

    int n_ = 0;
    std::vector<std::uint32_t> orbit_id_;
    std::vector<std::uint32_t> representatives_;
    std::vector<std::uint32_t> sizes_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> members_;
};

OrbitPartition enumerate_orbits(const SquareMap& sm);

/// (1/n) * sum_{k=0}^{n-1} 2^{gcd(n,k)}, exact. Valid for 1 <= n <= 62.
std::uint64_t burnside_count(int n);

/// True iff tt[X] == tt[S(X)] for every input word X.
/// Throws std::invalid_argument on a dimension mismatch.
bool is_idempotent(const TruthTable& tt, const SquareMap& sm);

}  // namespace idem::frobenius
