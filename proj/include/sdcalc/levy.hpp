#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "sdcalc/beta_multiset.hpp"
#include "sdcalc/product_law.hpp"
#include "sdcalc/quadrature.hpp"

namespace sdcalc {

using Vec = std::vector<double>;

double norm2(std::span<const double> x);

/// One point mass of a compound-Poisson Levy measure; the point is never
/// the origin.
struct MeasureAtom {
    Vec point;
    double mass;
};

/// Finite atomic measure on R^d \ {0}.
class FiniteAtomicMeasure {
public:
    FiniteAtomicMeasure(int dim, std::vector<MeasureAtom> atoms);

    int dim() const { return dim_; }
    const std::vector<MeasureAtom>& atoms() const { return atoms_; }
    double total_mass() const;

private:
    int dim_;
    std::vector<MeasureAtom> atoms_;
};

/// Image of a finite atomic measure under a random-integral mapping,
/// kept lazy as (base, time change): each atom spreads along the ray
/// through its point, weighted by the time-change law.
struct TransformedMeasure {
    FiniteAtomicMeasure base;
    ClosedFormLaw timechange;  // must be a genuine product law
};

using LevyMeasure = std::variant<FiniteAtomicMeasure, TransformedMeasure>;

int measure_dim(const LevyMeasure& m);

struct MeasureValidity {
    bool valid;
    double integral;  // \int min(1, |x|^2) M(dx)
};

/// Spectral-measure criterion; finite atomic measures always pass, the
/// returned integral is the exact finite sum. An atom at the origin is
/// an input error, not a false result.
MeasureValidity levy_measure_valid(const LevyMeasure& m);

/// The full parametrization [a, R, M] of an infinitely divisible law.
/// R is row-major symmetric PSD; dimensions 1..3 are supported.
struct LevyTriple {
    int dim;
    Vec shift;
    std::vector<double> covariance;  // dim x dim, row-major
    LevyMeasure measure;

    static LevyTriple make(int dim, Vec shift, std::vector<double> covariance,
                           LevyMeasure measure);
};

/// Levy exponent Phi(y) with the closed unit ball as compensation set.
/// Exact finite sum for atomic measures; transformed measures integrate
/// each atom's ray profile against the time-change law by adaptive
/// quadrature.
std::complex<double> levy_exponent(const LevyTriple& triple, std::span<const double> y,
                                   const QuadratureOptions& opts = {});

/// b_{M,beta} = sum over atoms with |x| > 1 of mass * x * |x|^{-1-beta}.
Vec b_M(const FiniteAtomicMeasure& m, double beta);

/// Triple transform of a single mapping: closed-form shift/covariance
/// scaling, measure kept lazy.
LevyTriple transform_single(const LevyTriple& triple, double beta);

/// Triple transform of a composed mapping with an arbitrary multiset,
/// via the product-of-uniforms time change.
LevyTriple transform_multi(const LevyTriple& triple, const BetaMultiset& multiset);

/// Mass of {y : |y| > rho}. Closed form in both variants.
double measure_eval(const LevyMeasure& m, double rho);

/// sum_j C_j * Phi_j(y): the log-characteristic function of the signed
/// convolution-power decomposition.
std::complex<double> logcf_decomposition(const std::vector<LevyTriple>& triples,
                                     const std::vector<double>& coeffs,
                                     std::span<const double> y,
                                     const QuadratureOptions& opts = {});

}  // namespace sdcalc
