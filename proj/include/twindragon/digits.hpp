#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twindragon/gaussian.hpp"
#include "twindragon/rational.hpp"

namespace twindragon {

/// One digit of the base -4 system together with the four base (-1+i)
/// digits it groups: value = d1*a^3 + d2*a^2 + d3*a + d4 with a = -1+i.
struct DigitBlock {
    GaussianInt value;
    std::array<std::uint8_t, 4> bits{};

    std::string bits_string() const;
};

inline constexpr std::size_t kDigitCount = 16;

/// The 16 blocks in bit order [0000], [0001], ..., [1111].
const std::array<DigitBlock, kDigitCount>& digit_table();

/// Index of `value` in digit_table(), if it is a digit.
std::optional<std::size_t> find_digit(GaussianInt value);

/// Values of digit_table() in table order; the alphabet of every base -4 automaton.
std::vector<GaussianInt> digit_values();

/// Base (-1+i) expansion with digits {0,1}, most significant digit first.
/// Zero maps to the empty word.
std::vector<std::uint8_t> alpha_expand(GaussianInt g);

/// Inverse of alpha_expand: sum of d_k * a^k over a most-significant-first word.
GaussianInt alpha_evaluate(std::span<const std::uint8_t> digits);

/// Exact point x + iy.
struct ExactPoint {
    Rational x;
    Rational y;

    friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
    std::string to_string() const;
};

/// sum_{k=1..n} digits[k-1] * (-4)^{-k}, exactly.
ExactPoint eval_prefix(std::span<const GaussianInt> digits);

/// Limit of preperiod followed by period repeated forever. `period` must be nonempty.
ExactPoint eval_periodic(std::span<const GaussianInt> preperiod, std::span<const GaussianInt> period);

namespace testing {

/// Swaps two digit values in the live table for the lifetime of the object.
/// Negative-control hook for the verification suite; not thread safe.
class ScopedDigitTableCorruption {
public:
    ScopedDigitTableCorruption(std::size_t first, std::size_t second);
    ~ScopedDigitTableCorruption();
    ScopedDigitTableCorruption(const ScopedDigitTableCorruption&) = delete;
    ScopedDigitTableCorruption& operator=(const ScopedDigitTableCorruption&) = delete;

private:
    std::size_t first_;
    std::size_t second_;
};

}  // namespace testing
}  // namespace twindragon
