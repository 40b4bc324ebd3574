#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library code paths being checked.

#include "idem/random.hpp"
#include "idem/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

// Multiply-by-x ("xtime") product in GF(2)[x]/(modulus), a different route than
// the library's full carryless product followed by reduction.
inline std::uint32_t xtime_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int n)
{
    std::uint32_t result = 0;
    while (b != 0) {
        if (b & 1u) {
            result ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> n & 1u) {
            a ^= modulus;
        }
    }
    return result;
}

// Multiplicative order of x modulo `modulus`, by repeated multiplication; 0 if x never returns to 1.
inline std::uint64_t order_of_x(std::uint32_t modulus, int n)
{
    std::uint32_t x = 2;
    for (std::uint64_t k = 1; k <= (std::uint64_t{1} << n); ++k) {
        if (x == 1) {
            return k;
        }
        x = xtime_mul(x, 2, modulus, n);
    }
    return 0;
}

// Trial division by every polynomial of degree 1..n/2.
inline bool is_irreducible(std::uint32_t poly, int n)
{
    for (std::uint32_t d = 2; std::bit_width(d) - 1 <= static_cast<unsigned>(n / 2); ++d) {
        std::uint32_t r = poly;
        const int dd = static_cast<int>(std::bit_width(d)) - 1;
        for (int bit = n; bit >= dd; --bit) {
            if (r >> bit & 1u) {
                r ^= d << (bit - dd);
            }
        }
        if (r == 0) {
            return false;
        }
    }
    return true;
}

// First candidate in ascending (a_{n-1}, ..., a_0) order whose root has order 2^n - 1.
inline std::uint32_t scan_primitive(int n)
{
    for (std::uint32_t low = 1; low < (std::uint32_t{1} << n); low += 2) {
        const std::uint32_t poly = (std::uint32_t{1} << n) | low;
        if (order_of_x(poly, n) == (std::uint64_t{1} << n) - 1) {
            return poly;
        }
    }
    return 0;
}

// W_f(a) straight from the definition, O(4^n).
inline std::vector<std::int32_t> naive_walsh(const idem::TruthTable& tt)
{
    const std::size_t size = tt.size();
    std::vector<std::int32_t> w(size);
    for (std::size_t a = 0; a < size; ++a) {
        std::int32_t sum = 0;
        for (std::size_t x = 0; x < size; ++x) {
            const unsigned dot = std::popcount(a & x) & 1u;
            sum += ((tt[x] ? 1u : 0u) ^ dot) ? -1 : 1;
        }
        w[a] = sum;
    }
    return w;
}

// Minimum Hamming distance to all 2^{n+1} affine functions.
inline int brute_nonlinearity(const idem::TruthTable& tt)
{
    const std::size_t size = tt.size();
    int best = static_cast<int>(size);
    for (std::size_t a = 0; a < size; ++a) {
        int distance = 0;
        for (std::size_t x = 0; x < size; ++x) {
            distance += (tt[x] ? 1 : 0) != static_cast<int>(std::popcount(a & x) & 1u);
        }
        best = std::min({best, distance, static_cast<int>(size) - distance});
    }
    return best;
}

inline idem::TruthTable random_table(int n, idem::Rng& rng)
{
    idem::TruthTable tt(n);
    for (std::size_t x = 0; x < tt.size(); ++x) {
        tt.set(x, rng.coin());
    }
    return tt;
}

// Two-sided exact permutation p-value of the rank-sum statistic, using
// midranks of the pooled sample: P(|U - mean| >= |U_obs - mean|).
inline double exact_mann_whitney_p(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t total = pooled.size();
    std::vector<double> ranks(total);
    for (std::size_t i = 0; i < total; ++i) {
        double less = 0;
        double equal = 0;
        for (double v : pooled) {
            less += v < pooled[i];
            equal += v == pooled[i];
        }
        ranks[i] = less + (equal + 1.0) / 2.0;
    }
    const double na = static_cast<double>(a.size());
    const double mean = na * static_cast<double>(b.size()) / 2.0;
    const double offset = na * (na + 1.0) / 2.0;
    double observed = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        observed += ranks[i];
    }
    const double threshold = std::abs(observed - offset - mean) - 1e-9;

    std::size_t hits = 0;
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << total); ++mask) {
        if (std::popcount(mask) != static_cast<int>(a.size())) {
            continue;
        }
        double sum = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (mask >> i & 1u) {
                sum += ranks[i];
            }
        }
        ++count;
        hits += std::abs(sum - offset - mean) >= threshold;
    }
    return static_cast<double>(hits) / static_cast<double>(count);
}

inline double sorted_median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2.0;
}

}  // namespace oracle
