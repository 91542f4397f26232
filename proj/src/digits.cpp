#include "twindragon/digits.hpp"

#include <algorithm>
#include <utility>

namespace twindragon {
namespace {

std::array<DigitBlock, kDigitCount> make_table() {
    std::array<DigitBlock, kDigitCount> table{};
    for (std::size_t code = 0; code < kDigitCount; ++code) {
        DigitBlock& block = table[code];
        for (std::size_t j = 0; j < 4; ++j) {
            block.bits[j] = static_cast<std::uint8_t>((code >> (3 - j)) & 1U);
        }
        block.value = alpha_evaluate(block.bits);
    }
    return table;
}

std::array<DigitBlock, kDigitCount>& live_table() {
    static std::array<DigitBlock, kDigitCount> table = make_table();
    return table;
}

}  // namespace

std::string DigitBlock::bits_string() const {
    std::string out;
    for (auto b : bits) out.push_back(static_cast<char>('0' + b));
    return out;
}

const std::array<DigitBlock, kDigitCount>& digit_table() { return live_table(); }

std::optional<std::size_t> find_digit(GaussianInt value) {
    const auto& table = digit_table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].value == value) return i;
    }
    return std::nullopt;
}

std::vector<GaussianInt> digit_values() {
    std::vector<GaussianInt> out;
    out.reserve(kDigitCount);
    for (const auto& block : digit_table()) out.push_back(block.value);
    return out;
}

std::vector<std::uint8_t> alpha_expand(GaussianInt g) {
    std::vector<std::uint8_t> digits;
    while (g != GaussianInt{}) {
        // a = -1+i has norm 2, so g - d is divisible by a iff re + im - d is even.
        const auto d = static_cast<std::uint8_t>(((g.re + g.im) % 2 + 2) % 2);
        digits.push_back(d);
        g = (g - GaussianInt{d}).divexact(kAlpha);
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

GaussianInt alpha_evaluate(std::span<const std::uint8_t> digits) {
    GaussianInt acc;
    for (auto d : digits) acc = acc * kAlpha + GaussianInt{d};
    return acc;
}

std::string ExactPoint::to_string() const {
    return "(" + x.to_string() + ", " + y.to_string() + ")";
}

ExactPoint eval_prefix(std::span<const GaussianInt> digits) {
    Rational x;
    Rational y;
    Rational weight(1);
    const Rational step(-1, 4);
    for (const auto& b : digits) {
        weight *= step;
        x += weight * Rational(b.re);
        y += weight * Rational(b.im);
    }
    return {x, y};
}

ExactPoint eval_periodic(std::span<const GaussianInt> preperiod, std::span<const GaussianInt> period) {
    if (period.empty()) throw PreconditionError("eval_periodic: period must be nonempty");
    const ExactPoint head = eval_prefix(preperiod);
    const ExactPoint cycle = eval_prefix(period);
    // cycle repeated: cycle / (1 - (-4)^{-n}), shifted by (-4)^{-m}.
    Rational cycle_weight(1);
    for (std::size_t i = 0; i < period.size(); ++i) cycle_weight *= Rational(-1, 4);
    Rational shift(1);
    for (std::size_t i = 0; i < preperiod.size(); ++i) shift *= Rational(-1, 4);
    const Rational factor = shift / (Rational(1) - cycle_weight);
    return {head.x + cycle.x * factor, head.y + cycle.y * factor};
}

namespace testing {

ScopedDigitTableCorruption::ScopedDigitTableCorruption(std::size_t first, std::size_t second)
    : first_(first), second_(second) {
    if (first >= kDigitCount || second >= kDigitCount) throw PreconditionError("digit index out of range");
    auto& table = live_table();
    std::swap(table[first_].value, table[second_].value);
}

ScopedDigitTableCorruption::~ScopedDigitTableCorruption() {
    auto& table = live_table();
    std::swap(table[first_].value, table[second_].value);
}

}  // namespace testing
}  // namespace twindragon
