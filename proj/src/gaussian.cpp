#include "twindragon/gaussian.hpp"

namespace twindragon {

GaussianInt GaussianInt::divexact(GaussianInt d) const {
    const std::int64_t n = d.norm();
    if (n == 0) throw PreconditionError("division by zero Gaussian integer");
    // (re + im i)(d.re - d.im i) / n
    const std::int64_t x = checked::add(checked::mul(re, d.re), checked::mul(im, d.im));
    const std::int64_t y = checked::sub(checked::mul(im, d.re), checked::mul(re, d.im));
    if (x % n != 0 || y % n != 0) {
        throw PreconditionError(d.to_string() + " does not divide " + to_string());
    }
    return {x / n, y / n};
}

std::string GaussianInt::to_string() const {
    if (im == 0) return std::to_string(re);
    std::string imag;
    if (im == 1) {
        imag = "i";
    } else if (im == -1) {
        imag = "-i";
    } else {
        imag = std::to_string(im) + "i";
    }
    if (re == 0) return imag;
    return std::to_string(re) + (im > 0 ? "+" : "") + imag;
}

}  // namespace twindragon
