#include "sdcalc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "sdcalc/coefficients.hpp"
#include "sdcalc/integral_engine.hpp"
#include "sdcalc/product_law.hpp"
#include "sdcalc/rational.hpp"
#include "sdcalc/rng.hpp"

namespace sdcalc {

namespace {

std::vector<double> grid_points(int count, double lo, double hi) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

double law_distance(const ClosedFormLaw& a, const ClosedFormLaw& b) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = (i + 0.5) / 100.0;
        worst = std::max(worst, std::abs(a.pdf(t) - b.pdf(t)));
        worst = std::max(worst, std::abs(a.cdf(t) - b.cdf(t)));
    }
    worst = std::max(worst, std::abs(a.cdf(1.0) - b.cdf(1.0)));
    return worst;
}

std::string fmt_betas(std::span<const double> betas) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < betas.size(); ++i) os << (i ? "," : "") << betas[i];
    os << "}";
    return os.str();
}

}  // namespace

LevyTriple standard_test_triple() {
    return LevyTriple::make(1, {0.2}, {1.0},
                            FiniteAtomicMeasure(1, {{{1.5}, 0.8}}));
}

CheckResult check_partition_of_unity(std::uint64_t seed) {
    StreamRng rng(seed, 101);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 10);
        std::vector<Rational> exact;
        std::vector<double> approx;
        while (static_cast<int>(exact.size()) < n) {
            const long num = 1 + static_cast<long>(rng.next_u64() % 60);
            const long den = 1 + static_cast<long>(rng.next_u64() % 12);
            Rational candidate(num, den);
            if (std::find(exact.begin(), exact.end(), candidate) != exact.end()) continue;
            exact.push_back(candidate);
            approx.push_back(static_cast<double>(num) / static_cast<double>(den));
        }
        std::vector<Rational> c_exact = big_C(exact);
        Rational sum(0);
        for (const Rational& c : c_exact) sum += c;
        if (sum != 1)
            return {"partition_of_unity", false, 1.0, 0.0,
                    "exact-mode sum differs from 1"};
        std::vector<double> c_float = big_C(approx);
        double fsum = 0.0, comp = 0.0, cmax = 0.0;
        for (double c : c_float) {
            const double t = c - comp;
            const double s = fsum + t;
            comp = (s - fsum) - t;
            fsum = s;
            cmax = std::max(cmax, std::abs(c));
        }
        worst = std::max(worst, std::abs(fsum - 1.0) / std::max(cmax, 1.0));
    }
    return {"partition_of_unity", worst <= 1e-8, worst, 1e-8,
            "200 random rational exponent sets, n <= 10"};
}

CheckResult check_lagrange_identity(std::uint64_t seed) {
    StreamRng rng(seed, 102);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 7);
        std::vector<std::complex<double>> zs;
        while (static_cast<int>(zs.size()) < n) {
            std::complex<double> z(6.0 * rng.uniform01() - 3.0,
                                   6.0 * rng.uniform01() - 3.0);
            bool ok = true;
            for (const auto& w : zs) ok = ok && std::abs(w - z) >= 0.1;
            if (ok) zs.push_back(z);
        }
        std::complex<double> z(6.0 * rng.uniform01() - 3.0, 6.0 * rng.uniform01() - 3.0);
        double scale = 1.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> prod(1.0);
            for (int k = 0; k < n; ++k)
                if (k != i) prod *= (zs[k] - z) / (zs[k] - zs[i]);
            scale = std::max(scale, std::abs(prod));
        }
        worst = std::max(worst, lagrange_identity_residual(zs, z) / scale);
    }
    return {"lagrange_identity", worst <= 1e-10, worst, 1e-10,
            "500 random complex configurations, n <= 8, gap >= 0.1"};
}

CheckResult check_two_block_identity() {
    const std::pair<Rational, Rational> pairs[] = {
        {Rational(2), Rational(3)},         {Rational(1, 2), Rational(3)},
        {Rational(5, 2), Rational(7, 3)},   {Rational(1), Rational(4)},
        {Rational(3), Rational(8)},         {Rational(7, 2), Rational(1, 2)},
        {Rational(10), Rational(1)},        {Rational(9, 4), Rational(5, 4)},
        {Rational(6), Rational(5)},         {Rational(8, 3), Rational(1, 3)}};
    for (const auto& [alpha, gamma] : pairs) {
        for (int k = 1; k <= 8; ++k) {
            for (int l = 1; l <= 8; ++l) {
                Rational pref(1);
                for (int i = 0; i < k; ++i) pref *= alpha / (alpha - gamma);
                for (int i = 0; i < l; ++i) pref *= gamma / (gamma - alpha);
                Rational bracket(0);
                for (int s = 1; s <= k; ++s) {
                    Rational term = pochhammer(Rational(l), k - s) /
                                    factorial_of<Rational>(k - s);
                    for (int i = 0; i < s; ++i) term *= (alpha - gamma) / alpha;
                    bracket += term;
                }
                std::vector<Rational> e = e_coeff<Rational>(k, l);
                for (int r = 1; r <= k + l - 1; ++r) {
                    Rational term = e[r - 1];
                    for (int i = 0; i < r; ++i) term *= (gamma - alpha) / gamma;
                    bracket -= term;
                }
                if (pref * bracket != 1)
                    return {"two_block_identity", false, 1.0, 0.0,
                            "failed at k=" + std::to_string(k) +
                                " l=" + std::to_string(l)};
            }
        }
    }
    return {"two_block_identity", true, 0.0, 0.0,
            "exact value 1 for all k,l <= 8 and 10 rational (alpha,gamma) pairs"};
}

CheckResult check_case_formulas() {
    double worst = 0.0;
    int configs = 0;

    const std::vector<std::vector<double>> distinct_sets = {
        {0.5, 2.0},        {1.0, 3.0},          {0.5, 2.0, 5.0},
        {1.0, 2.5, 4.0},   {2.0, 4.0, 7.0, 10}, {0.5, 1.5, 3.0, 6.0},
        {1.0, 2.0, 3.5, 5.0, 8.0}};
    for (const auto& betas : distinct_sets) {
        const BetaMultiset ms = BetaMultiset::from_values(betas);
        worst = std::max(worst, law_distance(build_law(ms), law_distinct(betas)));
        ++configs;
    }

    for (double alpha : {0.5, 1.0, 2.5, 7.0, 10.0}) {
        for (int m : {1, 2, 3, 4}) {
            const BetaMultiset ms = BetaMultiset::from_entries(
                std::vector<BetaMultiset::Entry>{{alpha, m}});
            worst = std::max(worst, law_distance(build_law(ms), law_repeated(alpha, m)));
            ++configs;
        }
    }

    const std::vector<std::pair<std::vector<double>, double>> block_cases = {
        {{1.0}, 2.0},      {{0.5, 2.0}, 4.0},  {{1.0, 3.0}, 6.0},
        {{2.0, 5.0}, 0.5}, {{1.5, 4.0, 8.0}, 10.0}};
    for (const auto& [betas, alpha] : block_cases) {
        for (int m : {1, 2, 3}) {
            std::vector<BetaMultiset::Entry> entries;
            for (double b : betas) entries.push_back({b, 1});
            entries.push_back({alpha, m});
            const BetaMultiset ms = BetaMultiset::from_entries(entries);
            worst = std::max(worst,
                             law_distance(build_law(ms),
                                          law_distinct_plus_block(betas, alpha, m)));
            ++configs;
        }
    }

    const std::pair<double, double> two_block_pairs[] = {
        {0.5, 2.0}, {1.0, 3.5}, {2.0, 6.0}, {4.0, 10.0}};
    for (const auto& [alpha, gamma] : two_block_pairs) {
        for (int k : {1, 2, 3}) {
            for (int l : {1, 2}) {
                const BetaMultiset ms = BetaMultiset::from_entries(
                    std::vector<BetaMultiset::Entry>{{alpha, k}, {gamma, l}});
                worst = std::max(
                    worst, law_distance(build_law(ms), law_two_blocks(alpha, k, gamma, l)));
                ++configs;
            }
        }
    }

    const std::vector<double> base{1.0, 4.5};
    for (int m : {1, 2}) {
        for (int l : {1, 2}) {
            std::vector<BetaMultiset::Entry> entries{{1.0, 1}, {4.5, 1}, {2.0, m}, {7.5, l}};
            const BetaMultiset ms = BetaMultiset::from_entries(entries);
            worst = std::max(
                worst, law_distance(build_law(ms),
                                    law_distinct_plus_two_blocks(base, 2.0, m, 7.5, l)));
            ++configs;
        }
    }

    return {"case_formulas", worst <= 1e-10, worst, 1e-10,
            std::to_string(configs) + " parameter configurations, 100-point grids"};
}

CheckResult check_gamma_oracle() {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 3.0}) {
        for (int m = 1; m <= 10; ++m) {
            const ClosedFormLaw law = build_law(BetaMultiset::from_entries(
                std::vector<BetaMultiset::Entry>{{alpha, m}}));
            for (int i = 1; i <= 50; ++i) {
                const double t = static_cast<double>(i) / 50.0;
                worst = std::max(worst,
                                 std::abs(law.cdf(t) - repeated_cdf_gamma(m, alpha, t)));
            }
        }
    }
    return {"gamma_oracle", worst <= 1e-12, worst, 1e-12,
            "m <= 10, alpha in {0.5, 1, 3}, 50-point grids"};
}

CheckResult check_mc_laws(std::uint64_t seed) {
    using E = BetaMultiset::Entry;
    const std::vector<std::vector<E>> cases = {
        {{1.0, 1}},
        {{2.0, 1}},
        {{1.0, 1}, {2.0, 1}},
        {{0.5, 1}, {3.0, 1}},
        {{1.0, 2}},
        {{2.0, 3}},
        {{1.0, 1}, {2.0, 1}, {3.0, 1}},
        {{0.5, 1}, {1.0, 2}, {4.0, 1}},
        {{1.0, 3}, {2.0, 2}},
        {{0.5, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}, {5.0, 1}, {8.0, 1}}};
    double worst = 0.0;
    std::string worst_case;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const BetaMultiset ms = BetaMultiset::from_entries(cases[ci]);
        const ClosedFormLaw law = build_law(ms);
        SampleBatch batch = sample(ms, 1000000, seed, ci);
        std::sort(batch.values.begin(), batch.values.end());
        const double n = static_cast<double>(batch.values.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < batch.values.size(); ++i) {
            const double f = law.cdf(batch.values[i]);
            sup = std::max(sup, std::abs(f - (i + 1) / n));
            sup = std::max(sup, std::abs(f - i / n));
        }
        if (sup > worst) {
            worst = sup;
            worst_case = "case " + std::to_string(ci);
        }
    }
    return {"mc_laws", worst <= 0.002, worst, 0.002,
            "10 multisets, 1e6 samples each, DKW band (worst: " + worst_case + ")"};
}

CheckResult check_transform_consistency() {
    const LevyTriple triple = standard_test_triple();
    const std::vector<std::vector<double>> multisets = {
        {1.0},           {2.0},           {0.5},           {3.5},
        {1.0, 2.0},      {0.5, 2.0},      {1.0, 3.5},      {2.0, 3.0},
        {0.5, 1.5},      {2.5, 4.0},      {1.0, 2.0, 3.0}, {0.5, 1.5, 3.0},
        {1.0, 2.5, 4.0}, {0.5, 2.0, 3.5}, {1.5, 2.5, 3.5}, {1.0, 2.0, 3.0, 4.0},
        {0.5, 1.5, 2.5, 3.5}, {1.0, 1.5, 2.0, 2.5}, {0.5, 1.0, 2.0, 4.0},
        {2.0, 3.0, 4.0, 5.0}};
    StreamRng rng(12345, 7);
    std::vector<double> radii;
    for (int i = 0; i < 20; ++i) radii.push_back(0.05 + 1.95 * rng.uniform01());

    double worst = 0.0;
    for (const auto& betas : multisets) {
        const BetaMultiset ms = BetaMultiset::from_values(betas);
        const LevyTriple direct = transform_multi(triple, ms);
        const std::vector<double> coeffs = big_C(betas);
        std::vector<LevyTriple> singles;
        for (double b : betas) singles.push_back(transform_single(triple, b));

        for (int i = 0; i < triple.dim; ++i) {
            double a_sum = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                a_sum += coeffs[j] * singles[j].shift[i];
            worst = std::max(worst, std::abs(a_sum - direct.shift[i]));
        }
        for (int i = 0; i < triple.dim * triple.dim; ++i) {
            double r_sum = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                r_sum += coeffs[j] * singles[j].covariance[i];
            worst = std::max(worst, std::abs(r_sum - direct.covariance[i]));
        }
        for (double rho : radii) {
            double m_sum = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                m_sum += coeffs[j] * measure_eval(singles[j].measure, rho);
            worst = std::max(worst, std::abs(m_sum - measure_eval(direct.measure, rho)));
        }
    }
    return {"transform_consistency", worst <= 1e-10, worst, 1e-10,
            "20 distinct multisets, shift/covariance/20 ball complements"};
}

CheckResult check_compose_residual() {
    const LevyTriple triple = standard_test_triple();
    const std::vector<double> ygrid = grid_points(21, -3.0, 3.0);
    const double pool[] = {0.5, 1.0, 2.0, 3.5};
    double worst = 0.0;
    std::string worst_list;
    std::vector<double> list;
    // All ordered lists over the pool, lengths 1..4.
    for (int len = 1; len <= 4; ++len) {
        std::vector<int> idx(len, 0);
        while (true) {
            list.clear();
            for (int i : idx) list.push_back(pool[i]);
            const double r = compose_residual(triple, list, ygrid);
            if (r > worst) {
                worst = r;
                worst_list = fmt_betas(list);
            }
            int pos = len - 1;
            while (pos >= 0 && ++idx[pos] == 4) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return {"compose_residual", worst <= 1e-8, worst, 1e-8,
            "340 ordered lists over {0.5,1,2,3.5} (worst: " + worst_list + ")"};
}

CheckResult check_convolution_decomposition() {
    const LevyTriple triple = standard_test_triple();
    const std::vector<double> ygrid = grid_points(21, -3.0, 3.0);
    const std::vector<std::vector<double>> multisets = {
        {1.0, 2.0},      {0.5, 2.0},      {1.0, 3.5},           {2.0, 3.0},
        {0.5, 3.5},      {1.0, 2.0, 3.0}, {0.5, 1.5, 3.0},      {1.0, 2.5, 4.0},
        {0.5, 1.0, 2.0, 4.0}, {1.0, 2.0, 3.0, 4.0}};
    double worst = 0.0;
    for (const auto& betas : multisets) {
        const BetaMultiset ms = BetaMultiset::from_values(betas);
        const LevyTriple composed = transform_multi(triple, ms);
        const std::vector<double> coeffs = big_C(betas);
        std::vector<LevyTriple> singles;
        for (double b : betas) singles.push_back(transform_single(triple, b));
        for (double y : ygrid) {
            const double arg[] = {y};
            const std::complex<double> lhs = logcf_decomposition(singles, coeffs, arg);
            const std::complex<double> rhs = levy_exponent(composed, arg);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return {"convolution_decomposition", worst <= 1e-8, worst, 1e-8,
            "10 distinct multisets, 21-point y grid"};
}

CheckResult check_simulation(std::uint64_t seed) {
    const LevyTriple triple = standard_test_triple();
    IntegralSpec spec =
        IntegralSpec::make(1.0, build_law(BetaMultiset::from_values({1.0, 2.0})));
    SimulationResult sim = simulate_integral(triple, spec, 100000, 512, seed);
    std::vector<Vec> ygrid;
    for (double y : grid_points(21, -3.0, 3.0)) ygrid.push_back({y});
    EmpiricalCF emp = empirical_cf(sim.samples, ygrid);
    CfComparison cmp = cf_compare(
        emp,
        [&](std::span<const double> y) { return logcf_quadrature(triple, spec, y); }, 4.0);
    return {"simulation_cf", cmp.pass, cmp.max_standardized_deviation, 4.0,
            "A={1,2}, 1e5 paths, grid 512, z=4"};
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const bool all = suite == "all";
    if (all || suite == "identities") {
        out.push_back(check_partition_of_unity(seed));
        out.push_back(check_lagrange_identity(seed));
        out.push_back(check_two_block_identity());
        out.push_back(check_case_formulas());
        out.push_back(check_gamma_oracle());
    }
    if (all || suite == "mc") {
        out.push_back(check_mc_laws(seed));
        out.push_back(check_simulation(seed));
    }
    if (all || suite == "compose") {
        out.push_back(check_transform_consistency());
        out.push_back(check_compose_residual());
        out.push_back(check_convolution_decomposition());
    }
    if (out.empty())
        throw std::invalid_argument("unknown suite '" + suite +
                                    "' (expected identities, mc, compose, or all)");
    return out;
}

}  // namespace sdcalc
