#ifndef POTENTIA_KERNELS_HPP
#define POTENTIA_KERNELS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace potentia {

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Point = VectorX<double>;

// Extended reals are carried as IEEE values; +inf + -inf is rejected instead of
// silently turning into NaN.
template <typename Scalar>
Scalar extended_add(Scalar a, Scalar b)
{
    if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0))
        throw DomainError("extended_add: +inf + (-inf) is undefined");
    return a + b;
}

template <typename Scalar>
Scalar extended_sub(Scalar a, Scalar b)
{
    return extended_add(a, -b);
}

/// k_s(t) = ln t for s = 0 and -sign(s) t^{-s} otherwise.
template <typename Scalar>
Scalar k(Scalar s, Scalar t)
{
    if (!(t > Scalar(0)))
        throw DomainError("k: t must be positive");
    using std::log;
    using std::pow;
    if (s == Scalar(0))
        return log(t);
    const Scalar sign = s > Scalar(0) ? Scalar(1) : Scalar(-1);
    return -sign * pow(t, -s);
}

/// Radial profile of the Riesz kernel in dimension d, i.e. k_{d-2}(t) with the
/// integer powers written out.
template <typename Scalar>
Scalar radial_kernel(int d, Scalar t)
{
    if (!(t > Scalar(0)))
        throw DomainError("radial_kernel: t must be positive");
    using std::log;
    switch (d) {
    case 1:
        return t;
    case 2:
        return log(t);
    case 3:
        return -Scalar(1) / t;
    default:
        if (d < 1)
            throw DomainError("radial_kernel: dimension must be >= 1");
        return k(Scalar(d - 2), t);
    }
}

template <typename Scalar, typename DerivedY, typename DerivedX>
Scalar distance(const Eigen::MatrixBase<DerivedY>& y, const Eigen::MatrixBase<DerivedX>& x)
{
    return (y - x).norm();
}

/// K_{d-2}(y, x): k_{d-2}(|y - x|) off the diagonal, -inf on it for d >= 2 and 0
/// on it for d = 1. Symmetric in its arguments bit for bit.
template <typename DerivedY, typename DerivedX>
typename DerivedY::Scalar kernel_K(int d, const Eigen::MatrixBase<DerivedY>& y,
                                   const Eigen::MatrixBase<DerivedX>& x)
{
    using Scalar = typename DerivedY::Scalar;
    if (y.size() != d || x.size() != d)
        throw DomainError("kernel_K: point dimension mismatch");
    const Scalar t = (y - x).norm();
    if (t == Scalar(0))
        return d >= 2 ? -std::numeric_limits<Scalar>::infinity() : Scalar(0);
    return radial_kernel(d, t);
}

namespace detail {

// Gamma(d/2) through Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(z+1) = z Gamma(z).
template <typename Scalar>
Scalar gamma_half_integer(int d)
{
    Scalar z = (d % 2 == 0) ? Scalar(1) : Scalar(0.5);
    Scalar value = (d % 2 == 0) ? Scalar(1) : std::sqrt(std::numbers::pi_v<Scalar>);
    const Scalar target = Scalar(d) / Scalar(2);
    while (z < target) {
        value *= z;
        z += Scalar(1);
    }
    return value;
}

} // namespace detail

/// c_d = Gamma(d/2) / (2 pi^{d/2} max{1, d-2}); the Riesz measure of u is c_d times
/// its distributional Laplacian.
template <typename Scalar = double>
Scalar riesz_normalization(int d)
{
    if (d < 1)
        throw DomainError("riesz_normalization: dimension must be >= 1");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar gamma = detail::gamma_half_integer<Scalar>(d);
    const Scalar pi_pow = std::pow(pi, Scalar(d) / Scalar(2));
    return gamma / (Scalar(2) * pi_pow * Scalar(std::max(1, d - 2)));
}

/// Gradient in y of K_{d-2}(y, x).
template <typename DerivedY, typename DerivedX>
VectorX<typename DerivedY::Scalar> kernel_gradient(int d, const Eigen::MatrixBase<DerivedY>& y,
                                                   const Eigen::MatrixBase<DerivedX>& x)
{
    using Scalar = typename DerivedY::Scalar;
    if (y.size() != d || x.size() != d)
        throw DomainError("kernel_gradient: point dimension mismatch");
    const VectorX<Scalar> diff = y - x;
    const Scalar t = diff.norm();
    if (t == Scalar(0))
        throw DomainError("kernel_gradient: y coincides with the pole");
    if (d == 1)
        return VectorX<Scalar>::Constant(1, diff(0) > Scalar(0) ? Scalar(1) : Scalar(-1));
    if (d == 2)
        return diff / (t * t);
    return Scalar(d - 2) * diff / std::pow(t, d);
}

} // namespace potentia

#endif // POTENTIA_KERNELS_HPP
