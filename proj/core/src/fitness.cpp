#include "idem/fitness.hpp"

#include "idem/boolfn.hpp"

#include <stdexcept>

namespace idem::fitness {

FitnessValue make_value(Objective objective, int n, int pen, int nl, int max_count)
{
    const std::int64_t scale = std::int64_t{1} << n;
    FitnessValue v;
    v.pen = pen;
    if (pen > 0) {
        v.scalar = -static_cast<double>(pen);
        v.rank = -pen * scale;
        return v;
    }
    v.nl = nl;
    v.rank = nl * scale;
    if (objective == Objective::fit2) {
        const std::int64_t spare = scale - max_count;
        v.rank += spare;
        v.frac = static_cast<double>(spare) / static_cast<double>(scale);
    }
    v.scalar = static_cast<double>(v.rank) / static_cast<double>(scale);
    return v;
}

Evaluator::Evaluator(const frobenius::SquareMap& sm, Objective objective)
    : sm_(&sm), objective_(objective), spectrum_(sm.perm().size())
{
}

FitnessValue Evaluator::operator()(std::span<const std::uint8_t> bits)
{
    const int n = sm_->n();
    const int pen = boolfn::penalty(bits, *sm_);
    if (pen > 0) {
        return make_value(objective_, n, pen, 0, 0);
    }
    boolfn::walsh_transform_into(bits, spectrum_);
    const std::int32_t peak = boolfn::max_abs(spectrum_);
    const int nl = (1 << (n - 1)) - peak / 2;
    const int count = objective_ == Objective::fit2 ? boolfn::max_value_count(spectrum_) : 0;
    return make_value(objective_, n, 0, nl, count);
}

FitnessValue fitness1(const TruthTable& tt, const frobenius::SquareMap& sm)
{
    if (tt.n() != sm.n()) {
        throw std::invalid_argument("fitness1: dimension mismatch");
    }
    return Evaluator(sm, Objective::fit1)(tt);
}

FitnessValue fitness2(const TruthTable& tt, const frobenius::SquareMap& sm)
{
    if (tt.n() != sm.n()) {
        throw std::invalid_argument("fitness2: dimension mismatch");
    }
    return Evaluator(sm, Objective::fit2)(tt);
}

}  // namespace idem::fitness
