#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace twindragon {

using BigInt = boost::multiprecision::cpp_int;

/// Dense univariate polynomial, coefficients in ascending order of degree.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
template <typename Scalar>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { normalize(); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    const Scalar& leading() const { return coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Scalar(1); }
    Scalar operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }

    template <typename T>
    T operator()(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Scalar c = coeffs_[static_cast<std::size_t>(k)];
            if (c == Scalar(0)) continue;
            const bool negative = c < Scalar(0);
            if (negative) c = -c;
            if (first) {
                if (negative) os << "-";
            } else {
                os << (negative ? " - " : " + ");
            }
            if (c != Scalar(1) || k == 0) os << c;
            if (k >= 1) os << "x";
            if (k >= 2) os << "^" << k;
            first = false;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

using IntPolynomial = Polynomial<BigInt>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// det(xI - M) by Faddeev–LeVerrier. Every division is exact for integer
/// matrices, so any exact ring scalar with exact division works.
/// Products use lazyProduct; operator* does not instantiate for cpp_int.
template <typename Derived>
Polynomial<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("char_poly: matrix is not square");
    const DenseMatrix<Scalar> a = m;
    std::vector<Scalar> coeffs(static_cast<std::size_t>(n) + 1, Scalar(0));
    coeffs[static_cast<std::size_t>(n)] = Scalar(1);
    DenseMatrix<Scalar> acc = DenseMatrix<Scalar>::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        // acc_k = A acc_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A acc_k) / k
        DenseMatrix<Scalar> next = a.lazyProduct(acc);
        next.diagonal().array() += coeffs[static_cast<std::size_t>(n - k + 1)];
        acc = std::move(next);
        const Scalar trace = a.lazyProduct(acc).trace();
        coeffs[static_cast<std::size_t>(n - k)] = Scalar(-trace / Scalar(k));
    }
    return Polynomial<Scalar>(std::move(coeffs));
}

/// p(M) by Horner's rule on matrices.
template <typename Scalar, typename Derived>
DenseMatrix<typename Derived::Scalar> evaluate_at_matrix(const Polynomial<Scalar>& p,
                                                         const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    const Eigen::Index n = m.rows();
    DenseMatrix<S> acc = DenseMatrix<S>::Zero(n, n);
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        DenseMatrix<S> next = acc.lazyProduct(m);
        next.diagonal().array() += S(*it);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace twindragon
