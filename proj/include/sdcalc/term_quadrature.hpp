#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "sdcalc/product_law.hpp"
#include "sdcalc/quadrature.hpp"

namespace sdcalc {

namespace detail {

inline double powint_d(double base, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

}  // namespace detail

/// Integrates g against one density term over (0,1]:
///   \int_0^1 g(s) coef s^{a-1} (-log s)^j ds.
/// For a < 1 the substitution u = s^a removes the algebraic endpoint
/// singularity; for a >= 1 the weight is bounded and the integral is
/// taken in s directly. g must vanish at 0 (all integrands here are
/// Levy exponents, which are 0 at the origin). splits_s lists interior
/// breakpoints (in s) the integrand is not smooth across.
template <class G>
auto integrate_against_term(G&& g, const LawTerm& term, const QuadratureOptions& opts = {},
                            std::span<const double> splits_s = {}) {
    const double a = term.exponent;
    const int j = term.logpow;
    const bool substitute = a < 1.0;

    std::vector<double> breaks{0.0, 1.0};
    for (double s : splits_s)
        if (s > 0.0 && s < 1.0) breaks.push_back(substitute ? std::pow(s, a) : s);
    std::sort(breaks.begin(), breaks.end());

    auto integrand = [&](double v) {
        if (substitute) {
            const double s = std::pow(v, 1.0 / a);
            const double logf = j == 0 ? 1.0 : detail::powint_d(-std::log(v), j);
            return (term.coef / detail::powint_d(a, j + 1)) * logf * g(s);
        }
        const double logf = j == 0 ? 1.0 : detail::powint_d(-std::log(v), j);
        return term.coef * std::pow(v, a - 1.0) * logf * g(v);
    };

    using V = decltype(integrand(0.5));
    V acc{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        acc += integrate(integrand, breaks[i], breaks[i + 1], opts);
    return acc;
}

template <class G>
auto integrate_against_terms(G&& g, std::span<const LawTerm> terms,
                             const QuadratureOptions& opts = {},
                             std::span<const double> splits_s = {}) {
    using V = decltype(integrate_against_term(g, terms[0], opts, splits_s));
    V acc{};
    for (const LawTerm& t : terms) acc += integrate_against_term(g, t, opts, splits_s);
    return acc;
}

}  // namespace sdcalc
