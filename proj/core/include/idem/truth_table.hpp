#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idem {

/// Boolean function of n variables as its 2^n output bits, indexed by the
/// integer value of the input word (bit i of the index is x_i).
class TruthTable {
public:
    TruthTable() = default;

    /// Constant-zero function of n variables.
    explicit TruthTable(int n);
    TruthTable(int n, std::vector<std::uint8_t> bits);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool operator[](std::size_t x) const noexcept { return bits_[x] != 0; }
    void set(std::size_t x, bool value) noexcept { bits_[x] = value ? 1 : 0; }
    void flip(std::size_t x) noexcept { bits_[x] ^= 1; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<std::uint8_t> bits() noexcept { return bits_; }

    std::size_t weight() const noexcept;

    /// 2^n characters '0'/'1', index ascending.
    std::string to_binary() const;
    /// Hex of the integer whose bit X is f(X), most significant nibble first. Needs n >= 2.
    std::string to_hex() const;

    /// Parses the '0'/'1' form. n is inferred from the length, which must be a power of two.
    static TruthTable from_binary(std::string_view text);
    /// Parses the hex form for n variables (2^n / 4 digits).
    static TruthTable from_hex(std::string_view text, int n);

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    int n_ = 0;
    std::vector<std::uint8_t> bits_;
};

}  // namespace idem
