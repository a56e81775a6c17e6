#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace sdcalc {

/// Barycentric Chebyshev-Lobatto interpolant of a complex-valued
/// function on [a,b]. Analytic integrands make this spectrally accurate
/// at modest node counts; it backs the nested-composition ladder, where
/// each level's log-characteristic function is re-expanded before the
/// next integration.
class ChebInterpolant {
public:
    ChebInterpolant(const std::function<std::complex<double>(double)>& f, double a,
                    double b, int degree = 96)
        : a_(a), b_(b) {
        nodes_.resize(degree + 1);
        values_.resize(degree + 1);
        for (int j = 0; j <= degree; ++j) {
            const double x = std::cos(M_PI * j / degree);
            nodes_[j] = 0.5 * (a + b) + 0.5 * (b - a) * x;
            values_[j] = f(nodes_[j]);
        }
    }

    std::complex<double> operator()(double x) const {
        const int n = static_cast<int>(nodes_.size()) - 1;
        std::complex<double> num(0.0);
        double den = 0.0;
        double sign = 1.0;
        for (int j = 0; j <= n; ++j) {
            const double dx = x - nodes_[j];
            if (dx == 0.0) return values_[j];
            double w = sign * (j == 0 || j == n ? 0.5 : 1.0);
            const double q = w / dx;
            num += q * values_[j];
            den += q;
            sign = -sign;
        }
        return num / den;
    }

    double lower() const { return a_; }
    double upper() const { return b_; }

private:
    double a_, b_;
    std::vector<double> nodes_;
    std::vector<std::complex<double>> values_;
};

}  // namespace sdcalc
