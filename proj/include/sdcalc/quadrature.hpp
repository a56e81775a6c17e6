#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sdcalc {

/// Thrown when the adaptive refinement budget is exhausted before the
/// requested tolerance is met; carries the residual error estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double residual, double tolerance)
        : std::runtime_error("quadrature did not converge: residual " +
                             std::to_string(residual) + " > tolerance " +
                             std::to_string(tolerance)),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 32;
};

namespace detail {

// 15-point Gauss-Legendre rule on [-1,1] (positive half; rule is symmetric).
inline constexpr double kGl15X[8] = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
};
inline constexpr double kGl15W[8] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

template <class F>
auto gl15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto acc = kGl15W[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGl15X[i];
        acc += kGl15W[i] * (f(mid + dx) + f(mid - dx));
    }
    return half * acc;
}

template <class F, class V>
V adaptive_impl(F& f, double a, double b, V whole, double tol, int depth,
                double& spilled) {
    const double mid = 0.5 * (a + b);
    const V left = gl15(f, a, mid);
    const V right = gl15(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || b - a <= 1e-14 * (std::abs(a) + std::abs(b))) {
        return left + right;
    }
    if (depth <= 0) {
        spilled += err;
        return left + right;
    }
    return adaptive_impl(f, a, mid, left, 0.5 * tol, depth - 1, spilled) +
           adaptive_impl(f, mid, b, right, 0.5 * tol, depth - 1, spilled);
}

}  // namespace detail

/// Adaptive Gauss-Legendre quadrature of f over [a,b] to absolute
/// tolerance opts.abs_tol. Works for real- or complex-valued f. Throws
/// QuadratureError when bisection down to opts.max_depth levels still
/// leaves an estimated residual above tolerance.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    using V = decltype(f(a));
    if (a == b) return V{};
    double spilled = 0.0;
    V whole = detail::gl15(f, a, b);
    V result = detail::adaptive_impl(f, a, b, whole, opts.abs_tol,
                                     opts.max_depth, spilled);
    if (spilled > 10.0 * opts.abs_tol) throw QuadratureError(spilled, opts.abs_tol);
    return result;
}

}  // namespace sdcalc
