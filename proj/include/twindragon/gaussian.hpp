#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "twindragon/error.hpp"

namespace twindragon {

/// Exact Gaussian integer re + im*i. Every operation checks for overflow.
struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(std::int64_t re_, std::int64_t im_ = 0) : re(re_), im(im_) {}

    friend constexpr auto operator<=>(const GaussianInt&, const GaussianInt&) = default;

    friend GaussianInt operator+(GaussianInt a, GaussianInt b) {
        return {checked::add(a.re, b.re), checked::add(a.im, b.im)};
    }
    friend GaussianInt operator-(GaussianInt a, GaussianInt b) {
        return {checked::sub(a.re, b.re), checked::sub(a.im, b.im)};
    }
    friend GaussianInt operator-(GaussianInt a) { return {checked::neg(a.re), checked::neg(a.im)}; }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {checked::sub(checked::mul(a.re, b.re), checked::mul(a.im, b.im)),
                checked::add(checked::mul(a.re, b.im), checked::mul(a.im, b.re))};
    }
    GaussianInt& operator+=(GaussianInt b) { return *this = *this + b; }
    GaussianInt& operator*=(GaussianInt b) { return *this = *this * b; }

    std::int64_t norm() const { return checked::add(checked::mul(re, re), checked::mul(im, im)); }

    /// Exact quotient; throws PreconditionError when `d` does not divide `*this`.
    GaussianInt divexact(GaussianInt d) const;

    std::string to_string() const;
};

inline std::ostream& operator<<(std::ostream& os, const GaussianInt& g) { return os << g.to_string(); }

/// The base of the binary number system, -1 + i.
inline constexpr GaussianInt kAlpha{-1, 1};

}  // namespace twindragon
