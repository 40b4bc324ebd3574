#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace idem::gf2n {

inline constexpr int kMinDegree = 3;
inline constexpr int kMaxDegree = 16;

/// Defining polynomial of GF(2^n). Bit i of `coeffs` is the coefficient of x^i;
/// bit n and bit 0 are always set.
struct PolySpec {
    int n = 0;
    std::uint32_t coeffs = 0;

    friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

/// Element of GF(2^n) in the polynomial basis (1, a, ..., a^{n-1}).
/// Bit i of `value` is the coordinate on a^i.
struct FieldElement {
    std::uint32_t value = 0;

    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
    friend FieldElement operator^(FieldElement a, FieldElement b) { return {a.value ^ b.value}; }
};

/// Distinct prime factors of 2^n - 1, ascending, by trial division.
std::vector<std::uint64_t> prime_factors_of_group_order(int n);

/// True iff the degree-n polynomial `coeffs` is primitive: the residue class of x
/// has multiplicative order exactly 2^n - 1 (which also forces irreducibility).
/// Throws std::invalid_argument unless bit n is the top set bit.
bool is_primitive(int n, std::uint32_t coeffs);

/// First primitive polynomial when monic candidates with a_0 = 1 are ordered
/// lexicographically by (a_{n-1}, ..., a_0). Throws std::out_of_range for n outside 3..=16.
PolySpec select_primitive_poly(int n);

FieldElement mul(FieldElement a, FieldElement b, const PolySpec& p);
FieldElement square(FieldElement a, const PolySpec& p);
FieldElement pow(FieldElement a, std::uint64_t e, const PolySpec& p);

/// Human-readable form, e.g. "x^4 + x + 1".
std::string to_string(const PolySpec& p);

}  // namespace idem::gf2n
