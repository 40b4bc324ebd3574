#pragma once

#include "idem/frobenius.hpp"
#include "idem/truth_table.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace idem::boolfn {

/// coeffs[a] = W_f(a) = sum_x (-1)^{f(x) xor a.x}.
struct WalshSpectrum {
    int n = 0;
    std::vector<std::int32_t> coeffs;
};

/// Fast butterfly transform, O(n 2^n).
WalshSpectrum walsh_transform(const TruthTable& tt);

/// Same transform into caller-owned storage of size 2^n, for hot loops.
void walsh_transform_into(std::span<const std::uint8_t> bits, std::span<std::int32_t> out);

/// max_a |W_f(a)|
std::int32_t max_abs(std::span<const std::int32_t> coeffs);

/// 2^{n-1} - max|W|/2, over the whole spectrum including a = 0.
int nonlinearity(const WalshSpectrum& ws);
int nonlinearity(const TruthTable& tt);

/// floor(2^{n-1} - 2^{n/2-1}). Requires n >= 2.
int covering_bound(int n);
/// 2^{n-1} - 2^{(n-1)/2}. Requires odd n >= 3; throws std::invalid_argument on even n.
int quadratic_bound(int n);

/// Number of a with |W(a)| equal to the spectrum maximum.
int max_value_count(const WalshSpectrum& ws);
int max_value_count(std::span<const std::int32_t> coeffs);

/// Number of inputs X with tt[X] != tt[S(X)]. Zero iff tt is idempotent.
int penalty(const TruthTable& tt, const frobenius::SquareMap& sm);
int penalty(std::span<const std::uint8_t> bits, const frobenius::SquareMap& sm);

}  // namespace idem::boolfn
