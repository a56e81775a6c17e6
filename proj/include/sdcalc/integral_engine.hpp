#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sdcalc/beta_multiset.hpp"
#include "sdcalc/levy.hpp"
#include "sdcalc/product_law.hpp"
#include "sdcalc/quadrature.hpp"

namespace sdcalc {

/// The random integral \int_{(0,1]} h(t) dY(r(t)) with a power integrand
/// h(t) = t^{h_power} and a genuine product-law time change r.
struct IntegralSpec {
    double h_power;
    ClosedFormLaw timechange;

    static IntegralSpec make(double h_power, ClosedFormLaw timechange);
};

using ExponentFn = std::function<std::complex<double>(std::span<const double>)>;

/// log-characteristic function of the integral: \int_0^1 Phi(h(s) y) dr(s),
/// integrated term-by-term over the time change's closed form.
std::complex<double> logcf_quadrature(const ExponentFn& phi, const IntegralSpec& spec,
                                      std::span<const double> y,
                                      const QuadratureOptions& opts = {});

std::complex<double> logcf_quadrature(const LevyTriple& triple, const IntegralSpec& spec,
                                      std::span<const double> y,
                                      const QuadratureOptions& opts = {});

/// Max residual over the y grid between the one-layer-at-a-time nested
/// quadrature of the composed mappings (in the given order) and the
/// single quadrature with the product-of-uniforms time change.
/// Mathematically zero; dimension 1 only.
double compose_residual(const LevyTriple& triple, std::span<const double> ordered_betas,
                        std::span<const double> ygrid);

/// Same contract for general power-integrand specs: double quadrature of
/// the composition versus the single integral with the symbolically
/// composed time change. Dimension 1.
double general_compose_residual(const IntegralSpec& outer, const IntegralSpec& inner,
                                const LevyTriple& triple, std::span<const double> ygrid);

/// Path-wise simulation: grid increments of the time-changed Levy
/// process accumulated against h. Reproducible per (seed, path index);
/// the sub-1/grid left tail is truncated, its time-change mass is
/// reported alongside.
struct SimulationResult {
    std::vector<Vec> samples;
    double truncated_mass;  // r(1/grid)
};

SimulationResult simulate_integral(const LevyTriple& triple, const IntegralSpec& spec,
                                   int n_paths, int grid, std::uint64_t seed);

struct EmpiricalCF {
    std::vector<Vec> ygrid;
    std::vector<std::complex<double>> estimates;
    std::vector<double> std_errors;  // conservative 1/sqrt(n)
    int n;
};

EmpiricalCF empirical_cf(const std::vector<Vec>& samples, const std::vector<Vec>& ygrid);

struct CfPointReport {
    Vec y;
    std::complex<double> empirical;
    std::complex<double> analytic;
    double std_error;
    double standardized_deviation;
    bool pass;
};

struct CfComparison {
    std::vector<CfPointReport> points;
    double max_standardized_deviation;
    bool pass;
};

/// Flags grid points where |empirical - exp(logcf)| exceeds z standard
/// errors.
CfComparison cf_compare(const EmpiricalCF& emp,
                        const std::function<std::complex<double>(std::span<const double>)>&
                            analytic_logcf,
                        double z_threshold);

}  // namespace sdcalc
