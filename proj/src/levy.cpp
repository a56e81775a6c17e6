#include "sdcalc/levy.hpp"

#include <cmath>
#include <stdexcept>

#include "sdcalc/term_quadrature.hpp"

namespace sdcalc {

namespace {

constexpr int kMaxDim = 3;

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Eigenvalue range of a small symmetric matrix by cyclic Jacobi sweeps.
std::pair<double, double> sym_eigen_range(const std::vector<double>& m, int d) {
    std::vector<double> a = m;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) off += std::abs(a[p * d + q]);
        if (off < 1e-300) break;
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = a[k * d + p];
                    const double akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = a[p * d + k];
                    const double aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = a[0], hi = a[0];
    for (int i = 1; i < d; ++i) {
        lo = std::min(lo, a[i * d + i]);
        hi = std::max(hi, a[i * d + i]);
    }
    return {lo, hi};
}

// E[T^p] for T the product of uniforms-to-powers with the given multiset:
// prod over elements of beta/(beta+p).
double product_moment(const BetaMultiset& multiset, double p) {
    double acc = 1.0;
    for (const auto& e : multiset.entries())
        for (int i = 0; i < e.multiplicity; ++i) acc *= e.value / (e.value + p);
    return acc;
}

}  // namespace

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

FiniteAtomicMeasure::FiniteAtomicMeasure(int dim, std::vector<MeasureAtom> atoms)
    : dim_(dim), atoms_(std::move(atoms)) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("measure dimension must be in 1..3");
    for (const MeasureAtom& a : atoms_) {
        if (static_cast<int>(a.point.size()) != dim)
            throw std::invalid_argument("atom dimension mismatch");
        if (norm2(a.point) == 0.0)
            throw std::invalid_argument("Levy measure atom at the origin");
        if (!(a.mass > 0.0)) throw std::invalid_argument("atom mass must be positive");
    }
}

double FiniteAtomicMeasure::total_mass() const {
    double acc = 0.0;
    for (const MeasureAtom& a : atoms_) acc += a.mass;
    return acc;
}

int measure_dim(const LevyMeasure& m) {
    return std::visit(
        [](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, FiniteAtomicMeasure>)
                return v.dim();
            else
                return v.base.dim();
        },
        m);
}

MeasureValidity levy_measure_valid(const LevyMeasure& m) {
    const FiniteAtomicMeasure* base = std::get_if<FiniteAtomicMeasure>(&m);
    if (!base) {
        const auto& t = std::get<TransformedMeasure>(m);
        if (!t.timechange.is_genuine())
            throw std::invalid_argument(
                "transformed measure requires a genuine product-law time change");
        base = &t.base;
    }
    double acc = 0.0;
    for (const MeasureAtom& a : base->atoms()) {
        const double r = norm2(a.point);
        acc += a.mass * std::min(1.0, r * r);
    }
    return {true, acc};
}

LevyTriple LevyTriple::make(int dim, Vec shift, std::vector<double> covariance,
                            LevyMeasure measure) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("triple dimension must be in 1..3");
    if (static_cast<int>(shift.size()) != dim)
        throw std::invalid_argument("shift dimension mismatch");
    if (static_cast<int>(covariance.size()) != dim * dim)
        throw std::invalid_argument("covariance must be dim x dim row-major");
    if (measure_dim(measure) != dim)
        throw std::invalid_argument("measure dimension mismatch");
    double trace = 0.0;
    for (int i = 0; i < dim; ++i) trace += covariance[i * dim + i];
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (std::abs(covariance[i * dim + j] - covariance[j * dim + i]) >
                1e-12 * std::max(1.0, std::abs(trace)))
                throw std::invalid_argument("covariance is not symmetric");
    auto [lo, hi] = sym_eigen_range(covariance, dim);
    (void)hi;
    if (lo < -1e-10 * std::max(1.0, std::abs(trace)))
        throw std::invalid_argument("covariance is not positive semidefinite");
    levy_measure_valid(measure);
    return LevyTriple{dim, std::move(shift), std::move(covariance), std::move(measure)};
}

std::complex<double> levy_exponent(const LevyTriple& triple, std::span<const double> y,
                                   const QuadratureOptions& opts) {
    if (static_cast<int>(y.size()) != triple.dim)
        throw std::invalid_argument("argument dimension mismatch");
    const std::complex<double> iunit(0.0, 1.0);
    std::complex<double> phi = iunit * dot(y, triple.shift);
    double quad = 0.0;
    for (int i = 0; i < triple.dim; ++i)
        for (int j = 0; j < triple.dim; ++j)
            quad += y[i] * triple.covariance[i * triple.dim + j] * y[j];
    phi -= 0.5 * quad;

    if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&triple.measure)) {
        for (const MeasureAtom& a : atomic->atoms()) {
            const double yx = dot(y, a.point);
            std::complex<double> term = std::exp(iunit * yx) - 1.0;
            if (norm2(a.point) <= 1.0) term -= iunit * yx;  // closed unit ball
            phi += a.mass * term;
        }
        return phi;
    }

    const auto& tm = std::get<TransformedMeasure>(triple.measure);
    for (const MeasureAtom& a : tm.base.atoms()) {
        const double r = norm2(a.point);
        const double yx = dot(y, a.point);
        // s x is inside the closed unit ball iff s <= 1/|x|.
        const double cut = r > 1.0 ? 1.0 / r : 1.0;
        auto psi = [&](double s) {
            std::complex<double> v = std::exp(iunit * (s * yx)) - 1.0;
            if (s <= cut) v -= iunit * (s * yx);
            return v;
        };
        const double splits[] = {cut};
        phi += a.mass * integrate_against_terms(psi, tm.timechange.terms(), opts,
                                                r > 1.0 ? std::span<const double>(splits)
                                                        : std::span<const double>());
    }
    return phi;
}

Vec b_M(const FiniteAtomicMeasure& m, double beta) {
    Vec out(m.dim(), 0.0);
    for (const MeasureAtom& a : m.atoms()) {
        const double r = norm2(a.point);
        if (r > 1.0) {
            const double w = a.mass * std::pow(r, -1.0 - beta);
            for (int i = 0; i < m.dim(); ++i) out[i] += w * a.point[i];
        }
    }
    return out;
}

namespace {

const FiniteAtomicMeasure& require_atomic(const LevyMeasure& m) {
    const auto* atomic = std::get_if<FiniteAtomicMeasure>(&m);
    if (!atomic)
        throw std::invalid_argument(
            "transform requires a finite atomic base measure; compose the "
            "multisets instead of transforming twice");
    return *atomic;
}

}  // namespace

LevyTriple transform_single(const LevyTriple& triple, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const FiniteAtomicMeasure& m = require_atomic(triple.measure);
    const Vec b = b_M(m, beta);
    Vec shift(triple.dim);
    for (int i = 0; i < triple.dim; ++i)
        shift[i] = beta / (beta + 1.0) * (triple.shift[i] + b[i]);
    std::vector<double> cov = triple.covariance;
    for (double& v : cov) v *= beta / (beta + 2.0);
    ClosedFormLaw law = build_law(BetaMultiset::from_values({beta}));
    return LevyTriple{triple.dim, std::move(shift), std::move(cov),
                      TransformedMeasure{m, std::move(law)}};
}

LevyTriple transform_multi(const LevyTriple& triple, const BetaMultiset& multiset) {
    const FiniteAtomicMeasure& m = require_atomic(triple.measure);
    ClosedFormLaw law = build_law(multiset);
    const double mean = product_moment(multiset, 1.0);
    const double mean_sq = product_moment(multiset, 2.0);

    Vec shift(triple.dim);
    for (int i = 0; i < triple.dim; ++i) shift[i] = mean * triple.shift[i];
    // Atoms beyond the unit ball re-enter the compensation set while the
    // time change shrinks them; the correction closes as a partial first
    // moment of the time-change law.
    for (const MeasureAtom& a : m.atoms()) {
        const double r = norm2(a.point);
        if (r > 1.0) {
            const double w = a.mass * law.partial_power_moment(1.0 / r, 1.0);
            for (int i = 0; i < triple.dim; ++i) shift[i] += w * a.point[i];
        }
    }
    std::vector<double> cov = triple.covariance;
    for (double& v : cov) v *= mean_sq;
    return LevyTriple{triple.dim, std::move(shift), std::move(cov),
                      TransformedMeasure{m, std::move(law)}};
}

double measure_eval(const LevyMeasure& m, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&m)) {
        double acc = 0.0;
        for (const MeasureAtom& a : atomic->atoms())
            if (norm2(a.point) > rho) acc += a.mass;
        return acc;
    }
    const auto& tm = std::get<TransformedMeasure>(m);
    double acc = 0.0;
    for (const MeasureAtom& a : tm.base.atoms()) {
        const double r = norm2(a.point);
        if (rho >= r) continue;  // the whole segment image lies inside the ball
        acc += a.mass * (1.0 - tm.timechange.cdf(rho / r));
    }
    return acc;
}

std::complex<double> logcf_decomposition(const std::vector<LevyTriple>& triples,
                                     const std::vector<double>& coeffs,
                                     std::span<const double> y,
                                     const QuadratureOptions& opts) {
    if (triples.size() != coeffs.size())
        throw std::invalid_argument("triple/coefficient length mismatch");
    std::complex<double> acc(0.0);
    for (std::size_t j = 0; j < triples.size(); ++j) {
        if (j > 0 && triples[j].dim != triples[0].dim)
            throw std::invalid_argument("triples must share a dimension");
        acc += coeffs[j] * levy_exponent(triples[j], y, opts);
    }
    return acc;
}

}  // namespace sdcalc
