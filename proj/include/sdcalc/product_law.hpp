#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdcalc/beta_multiset.hpp"

namespace sdcalc {

/// One term c * x^{exponent-1} * (-log x)^{logpow} of a closed-form
/// density on (0,1]. Exponents may be negative in auxiliary functions;
/// genuine product laws only ever carry positive ones.
struct LawTerm {
    double coef;
    double exponent;
    int logpow;
};

/// A finite signed combination of LawTerms. When tagged with a source
/// multiset it is the exact density of a product of powers of uniforms,
/// and its CDF is the time change of the composed integral mapping.
class ClosedFormLaw {
public:
    ClosedFormLaw(std::vector<LawTerm> terms, std::optional<BetaMultiset> source);

    const std::vector<LawTerm>& terms() const { return terms_; }
    bool is_genuine() const { return source_.has_value(); }
    const std::optional<BetaMultiset>& source() const { return source_; }

    /// Density at x in (0,1]; may be unbounded as x -> 0 when some
    /// exponent is < 1. Throws std::domain_error outside (0,1].
    double pdf(double x) const;

    /// CDF; clamps to 0 for t <= 0 and 1 for t >= 1. Requires all
    /// exponents positive.
    double cdf(double t) const;

    /// Partial moment integral_0^u s^p dr(s) in closed form (u clamped
    /// to [0,1]). Requires exponent + p > 0 for every term.
    double partial_power_moment(double u, double p) const;

private:
    std::vector<LawTerm> terms_;
    std::optional<BetaMultiset> source_;
};

/// Merges duplicate (exponent, logpow) pairs and drops exact zeros.
std::vector<LawTerm> merge_terms(std::vector<LawTerm> terms);

/// Builds the exact law of U_1^{1/beta_1} ... U_K^{1/beta_K} by mixing
/// in one exponent at a time through the product-convolution identity.
ClosedFormLaw build_law(const BetaMultiset& multiset);

struct SampleBatch {
    std::vector<double> values;  // each in (0,1]
    std::uint64_t seed;
    std::uint64_t stream;
};

/// n realizations of exp(-sum_i E_i/beta_i) with unit exponentials E_i,
/// one per multiset element counted with multiplicity. Underflow to zero
/// is clamped to the smallest positive normal double.
SampleBatch sample(const BetaMultiset& multiset, int n, std::uint64_t seed,
                   std::uint64_t stream);

/// P[exp(-gamma_{m,alpha}) <= t] through the regularized upper
/// incomplete gamma function; the independent oracle for cdf on a
/// single repeated block.
double repeated_cdf_gamma(int m, double alpha, double t);

/// Density by direct nested quadrature of the iterated product-
/// convolution integral; test oracle only, multiset size <= 4.
double pdf_numeric_oracle(const BetaMultiset& multiset, double x);

/// Case formulas used as oracles against build_law.
ClosedFormLaw law_distinct(std::span<const double> betas);
ClosedFormLaw law_repeated(double alpha, int m);
ClosedFormLaw law_distinct_plus_block(std::span<const double> betas, double alpha, int m);
ClosedFormLaw law_two_blocks(double alpha, int k, double gamma, int l);
ClosedFormLaw law_distinct_plus_two_blocks(std::span<const double> betas, double alpha,
                                           int m, double gamma, int l);

/// Auxiliary repeated-block functions, valid for any nonzero real a
/// (negative a gives the formal functions of the two-block reduction,
/// never a probability density).
double repeated_block_pdf(double a, int m, double x);
double repeated_block_cdf(double a, int m, double s);

}  // namespace sdcalc
