#include "sdcalc/product_law.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdcalc/coefficients.hpp"
#include "sdcalc/quadrature.hpp"
#include "sdcalc/rng.hpp"

namespace sdcalc {

namespace {

double powint(double base, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

double dfactorial(int n) {
    double acc = 1.0;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// Appends coef * f_{a x m} expanded into the term family:
// f_{a x m}(x) = a^m/(m-1)! x^{a-1} (-log x)^{m-1}.
void append_repeated_f(std::vector<LawTerm>& terms, double coef, double a, int m) {
    terms.push_back({coef * powint(a, m) / dfactorial(m - 1), a, m - 1});
}

// Mixes exponent beta into a term-family density f:
//   g(z) = beta z^{beta-1} \int_z^1 f(t) t^{-beta} dt,
// with the inner integral closed inside the family (shifted-exponent
// antiderivative when exponent != beta, one extra log power otherwise).
std::vector<LawTerm> mix_in(const std::vector<LawTerm>& f, double beta) {
    std::vector<LawTerm> out;
    for (const LawTerm& t : f) {
        const double shifted = t.exponent - beta;
        const int j = t.logpow;
        if (shifted == 0.0) {
            out.push_back({t.coef * beta / (j + 1), beta, j + 1});
            continue;
        }
        const double base = t.coef * beta * dfactorial(j) / powint(shifted, j + 1);
        out.push_back({base, beta, 0});
        double shifted_pow = 1.0;
        double kfact = 1.0;
        for (int k = 0; k <= j; ++k) {
            out.push_back({-base * shifted_pow / kfact, t.exponent, k});
            shifted_pow *= shifted;
            kfact *= k + 1;
        }
    }
    return merge_terms(std::move(out));
}

double oracle_recursive(std::span<const double> alphas, double x) {
    const double beta = alphas.back();
    if (alphas.size() == 1) return beta * std::pow(x, beta - 1.0);
    auto rest = alphas.first(alphas.size() - 1);
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    double inner = integrate(
        [&](double t) { return oracle_recursive(rest, t) * std::pow(t, -beta); }, x, 1.0,
        opts);
    return beta * std::pow(x, beta - 1.0) * inner;
}

}  // namespace

std::vector<LawTerm> merge_terms(std::vector<LawTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const LawTerm& a, const LawTerm& b) {
        if (a.exponent != b.exponent) return a.exponent < b.exponent;
        return a.logpow < b.logpow;
    });
    std::vector<LawTerm> out;
    for (const LawTerm& t : terms) {
        if (!out.empty() && out.back().exponent == t.exponent &&
            out.back().logpow == t.logpow)
            out.back().coef += t.coef;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const LawTerm& t) { return t.coef == 0.0; });
    return out;
}

ClosedFormLaw::ClosedFormLaw(std::vector<LawTerm> terms, std::optional<BetaMultiset> source)
    : terms_(merge_terms(std::move(terms))), source_(std::move(source)) {
    for (const LawTerm& t : terms_) {
        if (t.exponent == 0.0)
            throw std::invalid_argument("law term with zero exponent");
        if (t.logpow < 0) throw std::invalid_argument("negative log power");
        if (source_ && t.exponent < 0.0)
            throw std::invalid_argument(
                "genuine product law cannot carry negative exponents");
    }
}

double ClosedFormLaw::pdf(double x) const {
    if (!(x > 0.0) || x > 1.0)
        throw std::domain_error("pdf argument must lie in (0,1]");
    const double neglog = -std::log(x);
    double acc = 0.0;
    for (const LawTerm& t : terms_)
        acc += t.coef * std::pow(x, t.exponent - 1.0) * powint(neglog, t.logpow);
    return acc;
}

double ClosedFormLaw::cdf(double t) const { return partial_power_moment(t, 0.0); }

double ClosedFormLaw::partial_power_moment(double u, double p) const {
    if (u <= 0.0) return 0.0;
    if (u > 1.0) u = 1.0;
    const double neglog = -std::log(u);
    double acc = 0.0;
    for (const LawTerm& t : terms_) {
        const double e = t.exponent + p;
        if (!(e > 0.0))
            throw std::domain_error("partial moment requires positive shifted exponents");
        const int j = t.logpow;
        // \int_0^u x^{e-1} (-log x)^j dx = j!/e^{j+1} u^e sum_k (-e log u)^k / k!
        double tail = 0.0;
        double pw = 1.0;
        double kfact = 1.0;
        for (int k = 0; k <= j; ++k) {
            tail += pw / kfact;
            pw *= e * neglog;
            kfact *= k + 1;
        }
        acc += t.coef * dfactorial(j) / powint(e, j + 1) * std::pow(u, e) * tail;
    }
    return acc;
}

ClosedFormLaw build_law(const BetaMultiset& multiset) {
    const std::vector<double> expanded = multiset.expanded();
    std::vector<LawTerm> terms{{expanded[0], expanded[0], 0}};
    for (std::size_t i = 1; i < expanded.size(); ++i) terms = mix_in(terms, expanded[i]);
    return ClosedFormLaw(std::move(terms), multiset);
}

SampleBatch sample(const BetaMultiset& multiset, int n, std::uint64_t seed,
                   std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    const std::vector<double> expanded = multiset.expanded();
    StreamRng rng(seed, stream);
    SampleBatch batch{{}, seed, stream};
    batch.values.reserve(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (double beta : expanded) acc += rng.exponential() / beta;
        double v = std::exp(-acc);
        if (v <= 0.0) v = std::numeric_limits<double>::min();
        batch.values.push_back(v);
    }
    return batch;
}

double repeated_cdf_gamma(int m, double alpha, double t) {
    if (m < 1) throw std::invalid_argument("block size m must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(t > 0.0) || t > 1.0)
        throw std::domain_error("gamma oracle argument must lie in (0,1]");
    return boost::math::gamma_q(static_cast<double>(m), alpha * (-std::log(t)));
}

double pdf_numeric_oracle(const BetaMultiset& multiset, double x) {
    if (!(x > 0.0) || x > 1.0)
        throw std::domain_error("oracle argument must lie in (0,1]");
    if (multiset.size() > 4)
        throw std::invalid_argument("numeric oracle supports multisets of size <= 4");
    const std::vector<double> expanded = multiset.expanded();
    return oracle_recursive(expanded, x);
}

ClosedFormLaw law_distinct(std::span<const double> betas) {
    std::vector<double> bs(betas.begin(), betas.end());
    std::vector<double> coeffs = big_C(bs);
    std::vector<LawTerm> terms;
    for (std::size_t j = 0; j < bs.size(); ++j)
        terms.push_back({coeffs[j] * bs[j], bs[j], 0});
    return ClosedFormLaw(std::move(terms), BetaMultiset::from_values(betas));
}

ClosedFormLaw law_repeated(double alpha, int m) {
    if (m < 1) throw std::invalid_argument("block size m must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    std::vector<LawTerm> terms;
    append_repeated_f(terms, 1.0, alpha, m);
    return ClosedFormLaw(std::move(terms),
                         BetaMultiset::from_entries(std::vector<BetaMultiset::Entry>{
                             {alpha, m}}));
}

ClosedFormLaw law_distinct_plus_block(std::span<const double> betas, double alpha, int m) {
    if (m < 1) throw std::invalid_argument("block size m must be >= 1");
    std::vector<double> bs(betas.begin(), betas.end());
    std::vector<LawTerm> terms;
    std::vector<double> d_top = d_coeff(bs, alpha, m);
    for (std::size_t j = 0; j < bs.size(); ++j)
        terms.push_back({d_top[j] * bs[j], bs[j], 0});
    for (int k = 0; k < m; ++k) {
        std::vector<double> d_level = d_coeff(bs, alpha, m - k);
        double weight = 0.0;
        for (std::size_t j = 0; j < bs.size(); ++j) weight += bs[j] * d_level[j];
        append_repeated_f(terms, -weight / alpha, alpha, k + 1);
    }
    std::vector<BetaMultiset::Entry> entries;
    for (double b : bs) entries.push_back({b, 1});
    entries.push_back({alpha, m});
    return ClosedFormLaw(std::move(terms), BetaMultiset::from_entries(entries));
}

ClosedFormLaw law_two_blocks(double alpha, int k, double gamma, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("block sizes must be >= 1");
    if (!(alpha > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("block exponents must be positive");
    if (alpha == gamma)
        throw std::invalid_argument("two-block case requires alpha != gamma");
    const double pref =
        powint(alpha / (alpha - gamma), k) * powint(gamma / (gamma - alpha), l);
    std::vector<LawTerm> terms;
    for (int s = 1; s <= k; ++s) {
        double coef = pref * pochhammer<double>(l, k - s) / dfactorial(k - s) *
                      powint((alpha - gamma) / alpha, s);
        append_repeated_f(terms, coef, alpha, s);
    }
    std::vector<double> e = e_coeff<double>(k, l);
    for (int r = 1; r <= k + l - 1; ++r)
        append_repeated_f(terms, -pref * e[r - 1] * powint((gamma - alpha) / gamma, r),
                          gamma, r);
    return ClosedFormLaw(std::move(terms),
                         BetaMultiset::from_entries(std::vector<BetaMultiset::Entry>{
                             {alpha, k}, {gamma, l}}));
}

ClosedFormLaw law_distinct_plus_two_blocks(std::span<const double> betas, double alpha,
                                           int m, double gamma, int l) {
    if (m < 1 || l < 1) throw std::invalid_argument("block sizes must be >= 1");
    std::vector<double> bs(betas.begin(), betas.end());
    std::vector<LawTerm> terms;
    std::vector<double> d_top = d_coeff(bs, alpha, m);
    for (std::size_t j = 0; j < bs.size(); ++j) {
        std::vector<double> one{bs[j]};
        ClosedFormLaw part = law_distinct_plus_block(one, gamma, l);
        for (LawTerm t : part.terms()) {
            t.coef *= d_top[j];
            terms.push_back(t);
        }
    }
    for (int k = 0; k < m; ++k) {
        std::vector<double> d_level = d_coeff(bs, alpha, m - k);
        double weight = 0.0;
        for (std::size_t j = 0; j < bs.size(); ++j) weight += bs[j] * d_level[j];
        ClosedFormLaw part = law_two_blocks(alpha, k + 1, gamma, l);
        for (LawTerm t : part.terms()) {
            t.coef *= -weight / alpha;
            terms.push_back(t);
        }
    }
    std::vector<BetaMultiset::Entry> entries;
    for (double b : bs) entries.push_back({b, 1});
    entries.push_back({alpha, m});
    entries.push_back({gamma, l});
    return ClosedFormLaw(std::move(terms), BetaMultiset::from_entries(entries));
}

double repeated_block_pdf(double a, int m, double x) {
    if (m < 1) throw std::invalid_argument("block size m must be >= 1");
    if (a == 0.0) throw std::invalid_argument("block exponent must be nonzero");
    if (!(x > 0.0) || x > 1.0)
        throw std::domain_error("argument must lie in (0,1]");
    return powint(a, m) / dfactorial(m - 1) * std::pow(x, a - 1.0) *
           powint(-std::log(x), m - 1);
}

double repeated_block_cdf(double a, int m, double s) {
    if (m < 1) throw std::invalid_argument("block size m must be >= 1");
    if (a == 0.0) throw std::invalid_argument("block exponent must be nonzero");
    if (!(s > 0.0) || s > 1.0)
        throw std::domain_error("argument must lie in (0,1]");
    const double neglog = -std::log(s);
    double acc = 0.0;
    double pw = 1.0;
    double jfact = 1.0;
    for (int j = 0; j < m; ++j) {
        acc += pw / jfact;
        pw *= a * neglog;
        jfact *= j + 1;
    }
    return std::pow(s, a) * acc;
}

}  // namespace sdcalc
