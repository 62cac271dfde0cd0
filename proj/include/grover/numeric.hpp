#pragma once

#include <complex>

#include "grover/types.hpp"

namespace grover {

/// Neumaier-compensated accumulator. Long reductions (register means,
/// subset-average moments) must stay near one ulp of the true sum; a naive
/// accumulation over 10^5..10^6 terms does not.
template <typename T>
class CompensatedSum {
  public:
    void add(T x) {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

  private:
    T sum_{};
    T comp_{};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
  public:
    void add(std::complex<T> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum<T> re_;
    CompensatedSum<T> im_;
};

/// Compensated sum of the coefficients of any dense Eigen expression.
template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& v) {
    CompensatedSum<typename Derived::Scalar> acc;
    for (Index i = 0; i < v.size(); ++i) acc.add(v(i));
    return acc.value();
}

/// Compensated arithmetic mean of the coefficients.
template <typename Derived>
typename Derived::Scalar compensated_mean(const Eigen::DenseBase<Derived>& v) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return compensated_sum(v) / Real(v.size());
}

/// (-1)^t from the parity of t; never goes through floating-point pow.
template <typename T = double>
constexpr T parity_sign(Index t) {
    return (t % 2 == 0) ? T(1) : T(-1);
}

} // namespace grover
