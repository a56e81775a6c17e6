#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sdcalc/levy.hpp"
#include "sdcalc/quadrature.hpp"
#include "sdcalc/triple_io.hpp"

using namespace sdcalc;

namespace {

LevyTriple gaussian_triple(double a, double R) {
    return LevyTriple::make(1, {a}, {R}, FiniteAtomicMeasure(1, {}));
}

LevyTriple test_triple() {
    return LevyTriple::make(1, {0.2}, {1.0}, FiniteAtomicMeasure(1, {{{1.5}, 0.8}}));
}

}  // namespace

TEST_CASE("gaussian exponent closed form") {
    const LevyTriple t = gaussian_triple(0.7, 2.0);
    for (double y : {-2.0, -0.5, 1.0, 3.0}) {
        const double arg[] = {y};
        const std::complex<double> phi = levy_exponent(t, arg);
        CHECK(phi.real() == doctest::Approx(-0.5 * 2.0 * y * y));
        CHECK(phi.imag() == doctest::Approx(0.7 * y));
    }
}

TEST_CASE("atomic exponent closed forms and ball convention") {
    // Atom outside the unit ball: no compensation.
    const LevyTriple outside =
        LevyTriple::make(1, {0.0}, {0.0}, FiniteAtomicMeasure(1, {{{1.5}, 0.8}}));
    // Atom exactly on the sphere: compensated (closed ball).
    const LevyTriple boundary =
        LevyTriple::make(1, {0.0}, {0.0}, FiniteAtomicMeasure(1, {{{1.0}, 0.8}}));
    const double y = 1.3;
    const double arg[] = {y};
    const std::complex<double> iy(0.0, 1.0);
    std::complex<double> expect_out = 0.8 * (std::exp(iy * (1.5 * y)) - 1.0);
    std::complex<double> expect_bd = 0.8 * (std::exp(iy * y) - 1.0 - iy * y);
    CHECK(std::abs(levy_exponent(outside, arg) - expect_out) < 1e-14);
    CHECK(std::abs(levy_exponent(boundary, arg) - expect_bd) < 1e-14);
}

TEST_CASE("hermitian symmetry and vanishing at zero") {
    const LevyTriple t = test_triple();
    const double zero[] = {0.0};
    CHECK(std::abs(levy_exponent(t, zero)) == 0.0);
    for (double y : {0.3, 1.7, 2.9}) {
        const double pos[] = {y}, neg[] = {-y};
        CHECK(std::abs(levy_exponent(t, neg) - std::conj(levy_exponent(t, pos))) < 1e-13);
    }
}

TEST_CASE("transformed exponent is the time-change average of the base exponent") {
    const LevyTriple base = test_triple();
    const double beta = 2.0;
    const LevyTriple mapped = transform_single(base, beta);
    for (double y : {-1.5, 0.4, 2.2}) {
        const double arg[] = {y};
        QuadratureOptions opts;
        opts.abs_tol = 1e-13;
        const std::complex<double> averaged = integrate(
            [&](double s) {
                const double sy[] = {s * y};
                return beta * std::pow(s, beta - 1.0) * levy_exponent(base, sy);
            },
            0.0, 1.0, opts);
        CHECK(std::abs(levy_exponent(mapped, arg) - averaged) < 1e-10);
    }
}

TEST_CASE("single-beta transform closed forms") {
    const LevyTriple base = test_triple();
    const double beta = 3.0;
    const LevyTriple mapped = transform_single(base, beta);
    CHECK(mapped.covariance[0] == doctest::Approx(beta / (beta + 2.0)));
    const Vec b = b_M(std::get<FiniteAtomicMeasure>(base.measure), beta);
    CHECK(b[0] == doctest::Approx(0.8 * 1.5 * std::pow(1.5, -1.0 - beta)));
    CHECK(mapped.shift[0] == doctest::Approx(beta / (beta + 1.0) * (0.2 + b[0])));
}

TEST_CASE("transform_multi with one exponent matches transform_single") {
    const LevyTriple base = test_triple();
    const LevyTriple a = transform_single(base, 1.5);
    const LevyTriple b = transform_multi(base, BetaMultiset::from_values({1.5}));
    CHECK(a.shift[0] == doctest::Approx(b.shift[0]).epsilon(1e-13));
    CHECK(a.covariance[0] == doctest::Approx(b.covariance[0]).epsilon(1e-13));
    for (double rho : {0.3, 0.9, 1.4})
        CHECK(measure_eval(a.measure, rho) ==
              doctest::Approx(measure_eval(b.measure, rho)).epsilon(1e-13));
}

TEST_CASE("shift-only triple scales by the mean of the time change") {
    const LevyTriple drift =
        LevyTriple::make(1, {1.0}, {0.0}, FiniteAtomicMeasure(1, {}));
    const LevyTriple mapped = transform_multi(drift, BetaMultiset::from_values({1.0, 2.0}));
    CHECK(mapped.shift[0] == doctest::Approx(0.5 * (2.0 / 3.0)));
    CHECK(mapped.covariance[0] == 0.0);
}

TEST_CASE("measure_eval in both representations") {
    const LevyTriple base = test_triple();
    CHECK(measure_eval(base.measure, 1.0) == doctest::Approx(0.8));
    CHECK(measure_eval(base.measure, 2.0) == doctest::Approx(0.0));
    const LevyTriple mapped = transform_single(base, 1.0);
    // Time change is uniform; the segment image has mass 0.8*(1 - rho/1.5).
    CHECK(measure_eval(mapped.measure, 0.6) == doctest::Approx(0.8 * (1.0 - 0.4)));
    CHECK(measure_eval(mapped.measure, 1.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(measure_eval(base.measure, 0.0), std::invalid_argument);
}

TEST_CASE("spectral validity integral") {
    const LevyTriple base = test_triple();
    MeasureValidity v = levy_measure_valid(base.measure);
    CHECK(v.valid);
    CHECK(v.integral == doctest::Approx(0.8));  // min(1, 1.5^2) = 1
}

TEST_CASE("triple construction rejects bad input") {
    CHECK_THROWS_AS(LevyTriple::make(1, {0.0, 1.0}, {1.0}, FiniteAtomicMeasure(1, {})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        LevyTriple::make(2, {0.0, 0.0}, {1.0, 0.5, -0.5, 1.0}, FiniteAtomicMeasure(2, {})),
        std::invalid_argument);
    CHECK_THROWS_AS(
        LevyTriple::make(2, {0.0, 0.0}, {1.0, 2.0, 2.0, 1.0}, FiniteAtomicMeasure(2, {})),
        std::invalid_argument);
    CHECK_THROWS_AS(FiniteAtomicMeasure(1, {{{0.0}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteAtomicMeasure(1, {{{1.0}, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(transform_single(test_triple(), -1.0), std::invalid_argument);
    // Double transform must go through multiset composition.
    CHECK_THROWS_AS(transform_single(transform_single(test_triple(), 1.0), 2.0),
                    std::invalid_argument);
}

TEST_CASE("triple JSON round trip") {
    const LevyTriple t = test_triple();
    const nlohmann::json doc = triple_to_json(t);
    const LevyTriple back = parse_triple(doc);
    CHECK(back.dim == t.dim);
    CHECK(back.shift == t.shift);
    CHECK(back.covariance == t.covariance);
    const auto& atoms = std::get<FiniteAtomicMeasure>(back.measure).atoms();
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].point == Vec{1.5});
    CHECK(atoms[0].mass == 0.8);
}

TEST_CASE("transformed triple round trips through the timechange field") {
    const LevyTriple mapped = transform_multi(test_triple(), BetaMultiset::from_values({1.0, 2.0}));
    const nlohmann::json doc = triple_to_json(mapped);
    CHECK(doc["timechange"] == nlohmann::json::array({1.0, 2.0}));
    const LevyTriple back = parse_triple(doc);
    for (double rho : {0.4, 1.0, 1.4})
        CHECK(measure_eval(back.measure, rho) ==
              doctest::Approx(measure_eval(mapped.measure, rho)).epsilon(1e-13));
}

TEST_CASE("triple parse errors carry field paths") {
    auto expect_path = [](const char* text, const std::string& path) {
        try {
            parse_triple(nlohmann::json::parse(text));
            FAIL("expected a parse error for ", text);
        } catch (const TripleParseError& e) {
            CHECK(e.path() == path);
        }
    };
    expect_path(R"({"dim": 1, "shift": [0], "covariance": [1], "extra": 1})", "$.extra");
    expect_path(R"({"dim": 0, "shift": [], "covariance": []})", "$.dim");
    expect_path(R"({"dim": 1, "covariance": [1]})", "$.shift");
    expect_path(R"({"dim": 1, "shift": [0, 1], "covariance": [1]})", "$.shift");
    expect_path(R"({"dim": 1, "shift": [0], "covariance": [1], "atoms": [[0, 1]]})",
                "$.atoms[0][0]");
    expect_path(R"({"dim": 1, "shift": [0], "covariance": [1], "atoms": [[[0], 1]]})",
                "$");
    expect_path(R"({"dim": 1, "shift": [0], "covariance": [1], "timechange": []})",
                "$.timechange");
    CHECK_THROWS_AS(parse_triple_file("/nonexistent/file.json"), TripleParseError);
}
