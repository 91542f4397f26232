#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twindragon {

/// Raised when fixed-width integer arithmetic would wrap around.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised for lines px + qy = r with p = q = 0.
class DegenerateLineError : public PreconditionError {
public:
    explicit DegenerateLineError(const std::string& what) : PreconditionError(what) {}
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
    return out;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
    return out;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
    return out;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

}  // namespace checked
}  // namespace twindragon
