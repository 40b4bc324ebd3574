#include "idem/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace idem::boolfn {

void walsh_transform_into(std::span<const std::uint8_t> bits, std::span<std::int32_t> out)
{
    const std::size_t size = bits.size();
    for (std::size_t x = 0; x < size; ++x) {
        out[x] = bits[x] ? -1 : 1;
    }
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                const std::int32_t u = out[i];
                const std::int32_t v = out[i + half];
                out[i] = u + v;
                out[i + half] = u - v;
            }
        }
    }
}

WalshSpectrum walsh_transform(const TruthTable& tt)
{
    WalshSpectrum ws{tt.n(), std::vector<std::int32_t>(tt.size())};
    walsh_transform_into(tt.bits(), ws.coeffs);
    return ws;
}

std::int32_t max_abs(std::span<const std::int32_t> coeffs)
{
    std::int32_t best = 0;
    for (std::int32_t c : coeffs) {
        best = std::max(best, std::abs(c));
    }
    return best;
}

int nonlinearity(const WalshSpectrum& ws)
{
    return (1 << (ws.n - 1)) - max_abs(ws.coeffs) / 2;
}

int nonlinearity(const TruthTable& tt)
{
    return nonlinearity(walsh_transform(tt));
}

int covering_bound(int n)
{
    if (n < 2) {
        throw std::invalid_argument("covering_bound: n must be at least 2");
    }
    const int half_power = 1 << (n - 1);
    if (n % 2 == 0) {
        return half_power - (1 << (n / 2 - 1));
    }
    // 2^{n/2-1} = sqrt(2^{n-2}) is irrational for odd n; the floor subtracts its ceiling.
    const auto radicand = std::uint64_t{1} << (n - 2);
    std::uint64_t root = 0;
    while ((root + 1) * (root + 1) <= radicand) {
        ++root;
    }
    return half_power - static_cast<int>(root + 1);
}

int quadratic_bound(int n)
{
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("quadratic_bound: n must be odd and at least 3");
    }
    return (1 << (n - 1)) - (1 << ((n - 1) / 2));
}

int max_value_count(std::span<const std::int32_t> coeffs)
{
    const std::int32_t best = max_abs(coeffs);
    return static_cast<int>(std::count_if(coeffs.begin(), coeffs.end(),
                                          [best](std::int32_t c) { return std::abs(c) == best; }));
}

int max_value_count(const WalshSpectrum& ws)
{
    return max_value_count(std::span<const std::int32_t>(ws.coeffs));
}

int penalty(std::span<const std::uint8_t> bits, const frobenius::SquareMap& sm)
{
    const auto perm = sm.perm();
    if (bits.size() != perm.size()) {
        throw std::invalid_argument("penalty: dimension mismatch");
    }
    int mismatches = 0;
    for (std::size_t x = 0; x < bits.size(); ++x) {
        mismatches += bits[x] != bits[perm[x]];
    }
    return mismatches;
}

int penalty(const TruthTable& tt, const frobenius::SquareMap& sm)
{
    return penalty(tt.bits(), sm);
}

}  // namespace idem::boolfn
