#include "idem/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace idem {

namespace {

constexpr int kMaxVariables = 24;

void check_variables(int n)
{
    if (n < 0 || n > kMaxVariables) {
        throw std::invalid_argument("truth table: variable count out of range");
    }
}

}  // namespace

TruthTable::TruthTable(int n) : n_(n)
{
    check_variables(n);
    bits_.assign(std::size_t{1} << n, 0);
}

TruthTable::TruthTable(int n, std::vector<std::uint8_t> bits) : n_(n), bits_(std::move(bits))
{
    check_variables(n);
    if (bits_.size() != std::size_t{1} << n) {
        throw std::invalid_argument("truth table: length must be 2^n");
    }
    for (auto& b : bits_) {
        b = b != 0 ? 1 : 0;
    }
}

std::size_t TruthTable::weight() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string TruthTable::to_binary() const
{
    std::string out(bits_.size(), '0');
    for (std::size_t x = 0; x < bits_.size(); ++x) {
        if (bits_[x]) {
            out[x] = '1';
        }
    }
    return out;
}

std::string TruthTable::to_hex() const
{
    if (n_ < 2) {
        throw std::invalid_argument("truth table: hex form needs at least 2 variables");
    }
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t nibbles = bits_.size() / 4;
    std::string out(nibbles, '0');
    for (std::size_t k = 0; k < nibbles; ++k) {
        const std::size_t base = 4 * k;
        const unsigned v = bits_[base] | bits_[base + 1] << 1 | bits_[base + 2] << 2 | bits_[base + 3] << 3;
        out[nibbles - 1 - k] = digits[v];
    }
    return out;
}

TruthTable TruthTable::from_binary(std::string_view text)
{
    if (text.empty() || !std::has_single_bit(text.size())) {
        throw std::invalid_argument("truth table: length must be a power of two");
    }
    const int n = std::countr_zero(text.size());
    std::vector<std::uint8_t> bits(text.size());
    for (std::size_t x = 0; x < text.size(); ++x) {
        if (text[x] != '0' && text[x] != '1') {
            throw std::invalid_argument("truth table: expected only '0' and '1'");
        }
        bits[x] = text[x] == '1' ? 1 : 0;
    }
    return TruthTable(n, std::move(bits));
}

TruthTable TruthTable::from_hex(std::string_view text, int n)
{
    if (n < 2) {
        throw std::invalid_argument("truth table: hex form needs at least 2 variables");
    }
    TruthTable tt(n);
    const std::size_t nibbles = tt.size() / 4;
    if (text.size() != nibbles) {
        throw std::invalid_argument("truth table: hex length must be 2^n / 4");
    }
    for (std::size_t k = 0; k < nibbles; ++k) {
        const char c = text[nibbles - 1 - k];
        unsigned v = 0;
        if (c >= '0' && c <= '9') {
            v = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            v = static_cast<unsigned>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            v = static_cast<unsigned>(c - 'A' + 10);
        } else {
            throw std::invalid_argument("truth table: invalid hex digit");
        }
        for (unsigned j = 0; j < 4; ++j) {
            tt.set(4 * k + j, (v >> j & 1u) != 0);
        }
    }
    return tt;
}

}  // namespace idem
