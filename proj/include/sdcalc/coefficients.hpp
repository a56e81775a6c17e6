#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace sdcalc {

/// Relative pairwise gap below which the floating-point coefficient
/// routines refuse: closer exponents must be merged into a multiplicity
/// instead of silently cancelling.
inline constexpr double kMinRelativeGap = 1e-9;

namespace detail {

template <class T>
std::string scalar_str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

template <class T>
void check_distinct_positive(const std::vector<T>& betas) {
    if (betas.empty()) throw std::invalid_argument("empty exponent list");
    for (const T& b : betas)
        if (!(b > 0))
            throw std::invalid_argument("non-positive exponent " + scalar_str(b));
    for (std::size_t i = 0; i < betas.size(); ++i) {
        for (std::size_t j = i + 1; j < betas.size(); ++j) {
            if (betas[i] == betas[j])
                throw std::invalid_argument("duplicate exponent " + scalar_str(betas[i]));
            if constexpr (std::is_floating_point_v<T>) {
                double gap = std::abs(betas[i] - betas[j]);
                double scale = std::max(std::abs(betas[i]), std::abs(betas[j]));
                if (gap < kMinRelativeGap * scale)
                    throw std::invalid_argument(
                        "exponents " + scalar_str(betas[i]) + " and " + scalar_str(betas[j]) +
                        " are closer than the relative gap guard (" +
                        scalar_str(kMinRelativeGap) +
                        "); merge them into a multiplicity instead");
            }
        }
    }
}

}  // namespace detail

/// Rising factorial (w)_m = w(w+1)...(w+m-1), (w)_0 = 1, by iterative
/// product so that integer and rational arguments stay exact.
template <class T>
T pochhammer(T w, int m) {
    T acc(1);
    for (int i = 0; i < m; ++i) acc *= w + T(i);
    return acc;
}

template <class T>
T factorial_of(int n) {
    T acc(1);
    for (int i = 2; i <= n; ++i) acc *= T(i);
    return acc;
}

/// C_{j,n} = prod_{k != j} beta_k / (beta_k - beta_j). Satisfies
/// sum_j C_{j,n} = 1 for distinct exponents; with n = 1 the empty
/// product gives [1].
template <class T>
std::vector<T> big_C(const std::vector<T>& betas) {
    detail::check_distinct_positive(betas);
    const std::size_t n = betas.size();
    std::vector<T> out(n, T(1));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) out[j] *= betas[k] / (betas[k] - betas[j]);
    return out;
}

/// c_{j,n} = prod_{k != j} 1 / (alpha_k - alpha_j); related to big_C by
/// C_{j,n} = (prod_k alpha_k / alpha_j) c_{j,n}.
template <class T>
std::vector<T> little_c(const std::vector<T>& betas) {
    detail::check_distinct_positive(betas);
    const std::size_t n = betas.size();
    std::vector<T> out(n, T(1));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) out[j] /= betas[k] - betas[j];
    return out;
}

/// d_{j,n}^{(l)} = C_{j,n} * (alpha/(alpha - beta_j))^l.
template <class T>
std::vector<T> d_coeff(const std::vector<T>& betas, const T& alpha, int l) {
    if (l < 0) throw std::invalid_argument("repetition count l must be >= 0");
    if (!(alpha > 0))
        throw std::invalid_argument("non-positive exponent " + detail::scalar_str(alpha));
    for (const T& b : betas) {
        if (b == alpha)
            throw std::invalid_argument("alpha " + detail::scalar_str(alpha) +
                                        " coincides with an exponent in the list");
        if constexpr (std::is_floating_point_v<T>) {
            double gap = std::abs(b - alpha);
            if (gap < kMinRelativeGap * std::max(std::abs(b), std::abs(alpha)))
                throw std::invalid_argument("alpha " + detail::scalar_str(alpha) +
                                            " is within the gap guard of exponent " +
                                            detail::scalar_str(b));
        }
    }
    std::vector<T> out = big_C(betas);
    for (std::size_t j = 0; j < betas.size(); ++j) {
        T ratio = alpha / (alpha - betas[j]);
        for (int i = 0; i < l; ++i) out[j] *= ratio;
    }
    return out;
}

/// e_{r,k+l} for r = 1..k+l-1:
///   e_{r,k+l} = sum_{s=1}^{min(r,k)} (-1)^s (s)_{r-s}/(r-s)! * (l)_{k-s}/(k-s)!
template <class T>
std::vector<T> e_coeff(int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("block sizes k, l must be >= 1");
    std::vector<T> out;
    out.reserve(k + l - 1);
    for (int r = 1; r <= k + l - 1; ++r) {
        T acc(0);
        const int smax = std::min(r, k);
        for (int s = 1; s <= smax; ++s) {
            T term = pochhammer(T(s), r - s) / factorial_of<T>(r - s) *
                     pochhammer(T(l), k - s) / factorial_of<T>(k - s);
            if (s % 2 != 0) term = -term;
            acc += term;
        }
        out.push_back(acc);
    }
    return out;
}

/// rho over a multiset: for each distinct value b, the product over the
/// other distinct values c of (c/(c-b))^multiplicity(c). For an
/// all-distinct multiset this is big_C entrywise.
template <class T>
std::vector<T> rho(const std::vector<std::pair<T, int>>& entries) {
    if (entries.empty()) throw std::invalid_argument("empty exponent multiset");
    std::vector<T> values;
    for (const auto& [v, m] : entries) {
        values.push_back(v);
        if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    }
    detail::check_distinct_positive(values);
    std::vector<T> out(entries.size(), T(1));
    for (std::size_t j = 0; j < entries.size(); ++j) {
        for (std::size_t k = 0; k < entries.size(); ++k) {
            if (k == j) continue;
            T ratio = entries[k].first / (entries[k].first - entries[j].first);
            for (int i = 0; i < entries[k].second; ++i) out[j] *= ratio;
        }
    }
    return out;
}

/// |sum_i prod_{k != i} (z_k - z)/(z_k - z_i) - 1|; mathematically zero
/// for any distinct z_k (the decomposition of unity behind the
/// composition theorem).
inline double lagrange_identity_residual(const std::vector<std::complex<double>>& zs,
                                         std::complex<double> z) {
    if (zs.empty()) throw std::invalid_argument("empty node list");
    for (std::size_t i = 0; i < zs.size(); ++i)
        for (std::size_t j = i + 1; j < zs.size(); ++j)
            if (zs[i] == zs[j])
                throw std::invalid_argument("duplicate node in the identity check");
    std::complex<double> sum(0.0);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        std::complex<double> prod(1.0);
        for (std::size_t k = 0; k < zs.size(); ++k)
            if (k != i) prod *= (zs[k] - z) / (zs[k] - zs[i]);
        sum += prod;
    }
    return std::abs(sum - 1.0);
}

}  // namespace sdcalc
