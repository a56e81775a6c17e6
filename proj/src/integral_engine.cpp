#include "sdcalc/integral_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdcalc/cheb.hpp"
#include "sdcalc/rng.hpp"
#include "sdcalc/term_quadrature.hpp"

namespace sdcalc {

namespace {

// Cholesky-type factor for a PSD matrix; near-zero pivots collapse
// their column so rank-deficient covariances (pure drift, etc.) work.
std::vector<double> psd_factor(const std::vector<double>& m, int d) {
    std::vector<double> L(d * d, 0.0);
    double trace = 0.0;
    for (int i = 0; i < d; ++i) trace += m[i * d + i];
    const double tol = 1e-12 * std::max(1.0, trace);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = m[i * d + j];
            for (int k = 0; k < j; ++k) sum -= L[i * d + k] * L[j * d + k];
            if (i == j) {
                L[i * d + i] = sum > tol ? std::sqrt(sum) : 0.0;
            } else {
                L[i * d + j] = L[j * d + j] > 0.0 ? sum / L[j * d + j] : 0.0;
            }
        }
    }
    return L;
}

bool all_zero(std::span<const double> y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
}

}  // namespace

IntegralSpec IntegralSpec::make(double h_power, ClosedFormLaw timechange) {
    if (!(h_power > 0.0)) throw std::invalid_argument("integrand power must be positive");
    if (!timechange.is_genuine())
        throw std::invalid_argument("time change must be a genuine product law");
    return IntegralSpec{h_power, std::move(timechange)};
}

std::complex<double> logcf_quadrature(const ExponentFn& phi, const IntegralSpec& spec,
                                      std::span<const double> y,
                                      const QuadratureOptions& opts) {
    if (all_zero(y)) return {0.0, 0.0};
    std::vector<double> scaled(y.size());
    auto g = [&](double s) {
        const double h = spec.h_power == 1.0 ? s : std::pow(s, spec.h_power);
        for (std::size_t i = 0; i < y.size(); ++i) scaled[i] = h * y[i];
        return phi(scaled);
    };
    return integrate_against_terms(g, spec.timechange.terms(), opts);
}

std::complex<double> logcf_quadrature(const LevyTriple& triple, const IntegralSpec& spec,
                                      std::span<const double> y,
                                      const QuadratureOptions& opts) {
    return logcf_quadrature(
        [&](std::span<const double> arg) { return levy_exponent(triple, arg); }, spec, y,
        opts);
}

double compose_residual(const LevyTriple& triple, std::span<const double> ordered_betas,
                        std::span<const double> ygrid) {
    if (triple.dim != 1)
        throw std::invalid_argument("compose check supports dimension 1 only");
    if (ordered_betas.empty()) throw std::invalid_argument("empty composition list");

    double z_max = 0.0;
    for (double y : ygrid) z_max = std::max(z_max, std::abs(y));
    if (z_max == 0.0) z_max = 1.0;

    QuadratureOptions opts;
    opts.abs_tol = 1e-11;

    // Nested route: the log-cf after each layer, re-expanded as a
    // Chebyshev interpolant so the next layer integrates a cheap proxy.
    std::function<std::complex<double>(double)> level = [&](double z) {
        const double arg[] = {z};
        return levy_exponent(triple, arg);
    };
    for (double beta : ordered_betas) {
        const std::function<std::complex<double>(double)> prev = level;
        const LawTerm layer{beta, beta, 0};  // dr(s) = beta s^{beta-1} ds
        ChebInterpolant next(
            [&](double z) {
                return integrate_against_term([&](double s) { return prev(s * z); },
                                              layer, opts);
            },
            -z_max, z_max);
        level = [interp = std::move(next)](double z) { return interp(z); };
    }

    // Single-quadrature route with the composed time change.
    IntegralSpec spec = IntegralSpec::make(
        1.0, build_law(BetaMultiset::from_values(ordered_betas)));

    double residual = 0.0;
    for (double y : ygrid) {
        const double arg[] = {y};
        const std::complex<double> nested = level(y);
        const std::complex<double> direct = logcf_quadrature(triple, spec, arg, opts);
        residual = std::max(residual, std::abs(nested - direct));
    }
    return residual;
}

double general_compose_residual(const IntegralSpec& outer, const IntegralSpec& inner,
                                const LevyTriple& triple, std::span<const double> ygrid) {
    if (triple.dim != 1)
        throw std::invalid_argument("compose check supports dimension 1 only");
    if (!outer.timechange.source() || !inner.timechange.source())
        throw std::invalid_argument(
            "general composition requires product-law time changes with multiset tags");

    // X^{p} for X a product of uniforms-to-powers is again such a product
    // with every exponent divided by p; the composed time change is the
    // law of the merged multiset.
    std::vector<double> combined;
    for (double b : inner.timechange.source()->expanded())
        combined.push_back(b / inner.h_power);
    for (double b : outer.timechange.source()->expanded())
        combined.push_back(b / outer.h_power);
    IntegralSpec composed =
        IntegralSpec::make(1.0, build_law(BetaMultiset::from_values(combined)));

    QuadratureOptions opts;
    opts.abs_tol = 1e-11;
    double residual = 0.0;
    for (double y : ygrid) {
        const double arg[] = {y};
        // Double quadrature: outer over r_outer of the inner integral's
        // log-cf at the rescaled argument.
        auto g = [&](double x_outer) {
            const double scale = std::pow(x_outer, outer.h_power);
            const double scaled[] = {scale * y};
            return logcf_quadrature(triple, inner, scaled, opts);
        };
        const std::complex<double> nested =
            integrate_against_terms(g, outer.timechange.terms(), opts);
        const std::complex<double> direct = logcf_quadrature(triple, composed, arg, opts);
        residual = std::max(residual, std::abs(nested - direct));
    }
    return residual;
}

SimulationResult simulate_integral(const LevyTriple& triple, const IntegralSpec& spec,
                                   int n_paths, int grid, std::uint64_t seed) {
    if (n_paths < 1) throw std::invalid_argument("path count must be >= 1");
    if (grid < 64) throw std::invalid_argument("grid size must be >= 64");
    const auto* atomic = std::get_if<FiniteAtomicMeasure>(&triple.measure);
    if (!atomic)
        throw std::invalid_argument("simulation requires a finite atomic measure");

    const int d = triple.dim;
    const std::vector<double> chol = psd_factor(triple.covariance, d);
    bool has_gaussian = false;
    for (double v : chol) has_gaussian = has_gaussian || v != 0.0;
    const double total_mass = atomic->total_mass();

    // Per-cell time-change increments, shared across paths.
    std::vector<double> dr(grid), h_at(grid);
    double r_prev = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = static_cast<double>(i + 1) / grid;
        const double r = spec.timechange.cdf(t);
        dr[i] = r - r_prev;
        r_prev = r;
        h_at[i] = spec.h_power == 1.0 ? t : std::pow(t, spec.h_power);
    }

    SimulationResult result;
    result.truncated_mass = spec.timechange.cdf(1.0 / grid);
    result.samples.assign(n_paths, Vec(d, 0.0));
    std::vector<double> z(d);
    for (int p = 0; p < n_paths; ++p) {
        StreamRng rng(seed, static_cast<std::uint64_t>(p));
        Vec& acc = result.samples[p];
        for (int i = 0; i < grid; ++i) {
            const double dri = dr[i];
            const double h = h_at[i];
            for (int k = 0; k < d; ++k) acc[k] += h * triple.shift[k] * dri;
            if (has_gaussian) {
                const double sd = std::sqrt(dri);
                for (int k = 0; k < d; ++k) z[k] = rng.normal();
                for (int r = 0; r < d; ++r) {
                    double g = 0.0;
                    for (int c = 0; c <= r; ++c) g += chol[r * d + c] * z[c];
                    acc[r] += h * sd * g;
                }
            }
            if (total_mass > 0.0) {
                const int jumps = rng.poisson(dri * total_mass);
                for (int j = 0; j < jumps; ++j) {
                    double pick = rng.uniform01() * total_mass;
                    for (const MeasureAtom& a : atomic->atoms()) {
                        pick -= a.mass;
                        if (pick <= 0.0) {
                            for (int k = 0; k < d; ++k) acc[k] += h * a.point[k];
                            break;
                        }
                    }
                }
            }
        }
        for (double v : acc)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite increment in path simulation");
    }
    return result;
}

EmpiricalCF empirical_cf(const std::vector<Vec>& samples, const std::vector<Vec>& ygrid) {
    if (samples.size() < 100)
        throw std::invalid_argument("empirical cf requires at least 100 samples");
    const int n = static_cast<int>(samples.size());
    EmpiricalCF out;
    out.ygrid.assign(ygrid.begin(), ygrid.end());
    out.n = n;
    for (const Vec& y : ygrid) {
        // Kahan-compensated accumulation keeps the mean independent of
        // summation granularity to ~1 ulp.
        double sum_re = 0.0, c_re = 0.0, sum_im = 0.0, c_im = 0.0;
        for (const Vec& x : samples) {
            double yx = 0.0;
            for (std::size_t k = 0; k < y.size(); ++k) yx += y[k] * x[k];
            double t = std::cos(yx) - c_re;
            double s = sum_re + t;
            c_re = (s - sum_re) - t;
            sum_re = s;
            t = std::sin(yx) - c_im;
            s = sum_im + t;
            c_im = (s - sum_im) - t;
            sum_im = s;
        }
        out.estimates.emplace_back(sum_re / n, sum_im / n);
        out.std_errors.push_back(1.0 / std::sqrt(static_cast<double>(n)));
    }
    return out;
}

CfComparison cf_compare(const EmpiricalCF& emp,
                        const std::function<std::complex<double>(std::span<const double>)>&
                            analytic_logcf,
                        double z_threshold) {
    CfComparison out;
    out.max_standardized_deviation = 0.0;
    out.pass = true;
    for (std::size_t i = 0; i < emp.ygrid.size(); ++i) {
        CfPointReport rep;
        rep.y = emp.ygrid[i];
        rep.empirical = emp.estimates[i];
        rep.analytic = std::exp(analytic_logcf(rep.y));
        rep.std_error = emp.std_errors[i];
        rep.standardized_deviation = std::abs(rep.empirical - rep.analytic) / rep.std_error;
        rep.pass = rep.standardized_deviation <= z_threshold;
        out.max_standardized_deviation =
            std::max(out.max_standardized_deviation, rep.standardized_deviation);
        out.pass = out.pass && rep.pass;
        out.points.push_back(std::move(rep));
    }
    return out;
}

}  // namespace sdcalc
