#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdcalc/levy.hpp"

namespace sdcalc {

struct CheckResult {
    std::string name;
    bool pass;
    double residual;
    double threshold;
    std::string detail;
};

/// The atomic triple every desk-scale verification runs against:
/// d = 1, shift 0.2, unit Gaussian, one atom (1.5, 0.8).
LevyTriple standard_test_triple();

// Exact and floating identity suites.
CheckResult check_partition_of_unity(std::uint64_t seed);
CheckResult check_lagrange_identity(std::uint64_t seed);
CheckResult check_two_block_identity();
CheckResult check_case_formulas();
CheckResult check_gamma_oracle();

// Monte Carlo suites.
CheckResult check_mc_laws(std::uint64_t seed);
CheckResult check_simulation(std::uint64_t seed);

// Composition suites.
CheckResult check_transform_consistency();
CheckResult check_compose_residual();
CheckResult check_convolution_decomposition();

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace sdcalc
