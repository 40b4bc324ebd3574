#pragma once

#include "idem/frobenius.hpp"
#include "idem/truth_table.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace idem::fitness {

enum class Objective { fit1, fit2 };

/// Penalised maximisation objective. `scalar` is -pen for infeasible tables,
/// otherwise nl (fit1) or nl + frac (fit2). Ordering uses the exact integer
/// `rank` = scalar * 2^n, so no floating-point ties arise.
struct FitnessValue {
    double scalar = 0.0;
    int pen = 0;
    int nl = 0;
    double frac = 0.0;
    std::int64_t rank = 0;

    bool feasible() const noexcept { return pen == 0; }
    /// Integer part reported in result tables (truncation toward zero).
    std::int64_t integer_part() const noexcept { return feasible() ? nl : -pen; }

    friend bool operator==(const FitnessValue& a, const FitnessValue& b) noexcept { return a.rank == b.rank; }
    friend std::strong_ordering operator<=>(const FitnessValue& a, const FitnessValue& b) noexcept
    {
        return a.rank <=> b.rank;
    }
};

/// Builds the value from its components; `max_count` is ignored for fit1.
FitnessValue make_value(Objective objective, int n, int pen, int nl, int max_count);

FitnessValue fitness1(const TruthTable& tt, const frobenius::SquareMap& sm);
FitnessValue fitness2(const TruthTable& tt, const frobenius::SquareMap& sm);

/// Reusable evaluator holding spectrum scratch space. Not thread-safe; use one per thread.
class Evaluator {
public:
    Evaluator(const frobenius::SquareMap& sm, Objective objective);

    FitnessValue operator()(std::span<const std::uint8_t> bits);
    FitnessValue operator()(const TruthTable& tt) { return (*this)(tt.bits()); }

    Objective objective() const noexcept { return objective_; }

private:
    const frobenius::SquareMap* sm_;
    Objective objective_;
    std::vector<std::int32_t> spectrum_;
};

}  // namespace idem::fitness
