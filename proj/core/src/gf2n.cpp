#include "idem/gf2n.hpp"

#include <bit>
#include <stdexcept>

namespace idem::gf2n {

namespace {

// Carryless product of two words below 2^n followed by reduction modulo a
// degree-n polynomial. Operands are < 2^16, so the raw product fits in 32 bits.
std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int n)
{
    std::uint64_t product = 0;
    for (std::uint64_t shifted = a; b != 0; b >>= 1, shifted <<= 1) {
        if (b & 1u) {
            product ^= shifted;
        }
    }
    for (int bit = 2 * n - 2; bit >= n; --bit) {
        if (product >> bit & 1u) {
            product ^= static_cast<std::uint64_t>(modulus) << (bit - n);
        }
    }
    return static_cast<std::uint32_t>(product);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t e, std::uint32_t modulus, int n)
{
    std::uint32_t result = 1;
    while (e != 0) {
        if (e & 1u) {
            result = mul_mod(result, base, modulus, n);
        }
        base = mul_mod(base, base, modulus, n);
        e >>= 1;
    }
    return result;
}

}  // namespace

std::vector<std::uint64_t> prime_factors_of_group_order(int n)
{
    std::uint64_t rest = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t q = 2; q * q <= rest; ++q) {
        if (rest % q == 0) {
            primes.push_back(q);
            while (rest % q == 0) {
                rest /= q;
            }
        }
    }
    if (rest > 1) {
        primes.push_back(rest);
    }
    return primes;
}

bool is_primitive(int n, std::uint32_t coeffs)
{
    if (n < 1 || n > kMaxDegree || std::bit_width(coeffs) != static_cast<unsigned>(n + 1)) {
        throw std::invalid_argument("is_primitive: expected a monic polynomial of degree n");
    }
    if ((coeffs & 1u) == 0) {
        return false;  // x divides p, so x is not a unit
    }
    if (n == 1) {
        return true;  // x + 1: GF(2)^* is trivial
    }
    const std::uint64_t order = (std::uint64_t{1} << n) - 1;
    const std::uint32_t x = 0b10;
    if (pow_mod(x, order, coeffs, n) != 1) {
        return false;
    }
    for (std::uint64_t q : prime_factors_of_group_order(n)) {
        if (pow_mod(x, order / q, coeffs, n) == 1) {
            return false;
        }
    }
    return true;
}

PolySpec select_primitive_poly(int n)
{
    if (n < kMinDegree || n > kMaxDegree) {
        throw std::out_of_range("select_primitive_poly: degree must be in 3..=16");
    }
    const std::uint32_t top = std::uint32_t{1} << n;
    for (std::uint32_t low = 1; low < top; low += 2) {
        if (is_primitive(n, top | low)) {
            return {n, top | low};
        }
    }
    throw std::logic_error("select_primitive_poly: no primitive polynomial found");
}

FieldElement mul(FieldElement a, FieldElement b, const PolySpec& p)
{
    return {mul_mod(a.value, b.value, p.coeffs, p.n)};
}

FieldElement square(FieldElement a, const PolySpec& p)
{
    return mul(a, a, p);
}

FieldElement pow(FieldElement a, std::uint64_t e, const PolySpec& p)
{
    return {pow_mod(a.value, e, p.coeffs, p.n)};
}

std::string to_string(const PolySpec& p)
{
    std::string out;
    for (int i = p.n; i >= 0; --i) {
        if ((p.coeffs >> i & 1u) == 0) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        if (i == 0) {
            out += "1";
        } else if (i == 1) {
            out += "x";
        } else {
            out += "x^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace idem::gf2n
