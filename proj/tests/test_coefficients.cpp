#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "sdcalc/coefficients.hpp"
#include "sdcalc/rational.hpp"
#include "sdcalc/rng.hpp"

using namespace sdcalc;

TEST_CASE("pochhammer and factorial basics") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(2.0, 3) == doctest::Approx(2.0 * 3.0 * 4.0));
    CHECK(pochhammer(Rational(1, 2), 2) == Rational(3, 4));
    CHECK(factorial_of<double>(0) == 1.0);
    CHECK(factorial_of<Rational>(5) == 120);
}

TEST_CASE("two-exponent partition") {
    std::vector<double> betas{1.0, 2.0};
    std::vector<double> C = big_C(betas);
    CHECK(C[0] == doctest::Approx(2.0));
    CHECK(C[1] == doctest::Approx(-1.0));
    CHECK(C[0] + C[1] == doctest::Approx(1.0));
}

TEST_CASE("single exponent gives [1]") {
    std::vector<double> betas{3.5};
    CHECK(big_C(betas) == std::vector<double>{1.0});
    CHECK(little_c(betas) == std::vector<double>{1.0});
}

TEST_CASE("exact partition of unity on random rational sets") {
    StreamRng rng(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 7);
        std::vector<Rational> betas;
        while (static_cast<int>(betas.size()) < n) {
            Rational candidate(1 + static_cast<long>(rng.next_u64() % 40),
                               1 + static_cast<long>(rng.next_u64() % 9));
            bool dup = false;
            for (const Rational& b : betas) dup = dup || b == candidate;
            if (!dup) betas.push_back(candidate);
        }
        Rational sum(0);
        for (const Rational& c : big_C(betas)) sum += c;
        CHECK(sum == 1);
    }
}

TEST_CASE("big_C and little_c are tied by the product of exponents") {
    std::vector<Rational> betas{Rational(1, 2), Rational(3), Rational(7, 4)};
    std::vector<Rational> C = big_C(betas);
    std::vector<Rational> c = little_c(betas);
    Rational prod(1);
    for (const Rational& b : betas) prod *= b;
    for (std::size_t j = 0; j < betas.size(); ++j)
        CHECK(C[j] == prod / betas[j] * c[j]);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(big_C(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(big_C(std::vector<double>{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(big_C(std::vector<double>{-1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(big_C(std::vector<double>{0.0, 2.0}), std::invalid_argument);
    // Clustered floats must be merged into a multiplicity, not cancelled.
    CHECK_THROWS_AS(big_C(std::vector<double>{1.0, 1.0 + 1e-12}), std::invalid_argument);
    // The same pair is fine in exact arithmetic.
    std::vector<Rational> close{Rational(1), Rational(1) + Rational(1, 1000000000000LL)};
    CHECK_NOTHROW(big_C(close));
}

TEST_CASE("d coefficients reduce to big_C at l = 0 and scale per power") {
    std::vector<double> betas{1.0, 2.5};
    const double alpha = 4.0;
    CHECK(d_coeff(betas, alpha, 0) == big_C(betas));
    std::vector<double> d1 = d_coeff(betas, alpha, 1);
    std::vector<double> d3 = d_coeff(betas, alpha, 3);
    std::vector<double> C = big_C(betas);
    for (std::size_t j = 0; j < betas.size(); ++j) {
        const double ratio = alpha / (alpha - betas[j]);
        CHECK(d1[j] == doctest::Approx(C[j] * ratio));
        CHECK(d3[j] == doctest::Approx(C[j] * ratio * ratio * ratio));
    }
    CHECK_THROWS_AS(d_coeff(betas, 2.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(d_coeff(betas, -1.0, 1), std::invalid_argument);
}

TEST_CASE("e coefficients, small closed forms") {
    // k = l = 1: single entry e_1 = -1.
    std::vector<Rational> e11 = e_coeff<Rational>(1, 1);
    REQUIRE(e11.size() == 1);
    CHECK(e11[0] == -1);
    // k = 1: e_r = (-1) * (1)_{r-1}/(r-1)! = -1 for every r.
    std::vector<Rational> e13 = e_coeff<Rational>(1, 3);
    for (const Rational& v : e13) CHECK(v == -1);
    // k = 2, l = 1: e_1 = -(1)_1/1! = -1, e_2 = -(1)_1/1! + 1 = 0 ... compute directly.
    std::vector<Rational> e21 = e_coeff<Rational>(2, 1);
    REQUIRE(e21.size() == 2);
    CHECK(e21[0] == -1);
    CHECK(e21[1] == 0);
    CHECK_THROWS_AS(e_coeff<double>(0, 1), std::invalid_argument);
}

TEST_CASE("rho reduces to big_C for distinct multisets and sums to 1") {
    std::vector<std::pair<double, int>> entries{{1.0, 1}, {2.0, 1}, {3.5, 1}};
    std::vector<double> r = rho(entries);
    std::vector<double> C = big_C(std::vector<double>{1.0, 2.0, 3.5});
    for (std::size_t j = 0; j < r.size(); ++j) CHECK(r[j] == doctest::Approx(C[j]));

    std::vector<std::pair<Rational, int>> mixed{{Rational(1), 2}, {Rational(3), 1}};
    std::vector<Rational> rm = rho(mixed);
    // (3/(3-1))^1 = 3/2 and (1/(1-3))^2 = 1/4.
    CHECK(rm[0] == Rational(3, 2));
    CHECK(rm[1] == Rational(1, 4));
}

TEST_CASE("lagrange identity residual is tiny for well-separated nodes") {
    std::vector<std::complex<double>> zs{{1.0, 0.5}, {-2.0, 1.0}, {0.5, -1.5}, {2.5, 2.0}};
    CHECK(lagrange_identity_residual(zs, {0.3, -0.7}) < 1e-13);
    CHECK_THROWS_AS(lagrange_identity_residual({zs[0], zs[0]}, {0.0, 0.0}),
                    std::invalid_argument);
}
