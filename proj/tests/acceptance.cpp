// Acceptance gate: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "sdcalc/checks.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int index, const std::string& label, bool pass, double residual,
            double threshold, double seconds) {
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %-28s residual %.3e (limit %.1e) [%.2f s]\n",
                pass ? "PASS" : "FAIL", index, label.c_str(), residual, threshold,
                seconds);
    std::fflush(stdout);
}

template <class F>
void run(int index, const std::string& label, F&& fn) {
    const auto t0 = Clock::now();
    sdcalc::CheckResult r = fn();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(index, label, r.pass, r.residual, r.threshold, secs);
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Criterion 11: CLI determinism and the exit-code contract.
sdcalc::CheckResult check_cli() {
    const std::string cli = SDCALC_CLI_PATH;
    const std::string dir = "/tmp/sdcalc_acceptance";
    if (shell("mkdir -p " + dir) != 0) return {"cli", false, 1, 0, "mkdir failed"};
    if (shell("printf '%s' '{\"dim\": 1, \"shift\": [0.2], \"covariance\": [1], "
              "\"atoms\": [[[1.5], 0.8]]}' > " +
              dir + "/triple.json") != 0)
        return {"cli", false, 1, 0, "triple write failed"};

    const std::string golden_cmds[] = {
        "coeffs 1 2 --format csv",
        "--mode exact coeffs 1/2 3 5/4",
        "law 1,2x2 --grid 25 --format csv",
        "law 1,2 --eval 0.5",
        "transform " + dir + "/triple.json --betas 1,2 --check --radii 0.5,1,1.4",
        "verify --suite identities --seed 7 --format csv",
    };
    int idx = 0;
    for (const std::string& cmd : golden_cmds) {
        const std::string a = dir + "/a" + std::to_string(idx);
        const std::string b = dir + "/b" + std::to_string(idx);
        if (shell(cli + " " + cmd + " > " + a) != 0)
            return {"cli", false, 1, 0, "exit nonzero: " + cmd};
        if (shell(cli + " " + cmd + " > " + b) != 0)
            return {"cli", false, 1, 0, "exit nonzero: " + cmd};
        if (shell("cmp -s " + a + " " + b) != 0)
            return {"cli", false, 1, 0, "nondeterministic output: " + cmd};
        ++idx;
    }

    const std::pair<std::string, int> exit_cases[] = {
        {"coeffs 1 1", 2},
        {"coeffs 1 -2", 2},
        {"law 2x0", 2},
        {"law nonsense", 2},
        {"transform /nonexistent.json --betas 1", 2},
        {"verify --suite bogus", 2},
        {"coeffs 1 2 3", 0},
    };
    for (const auto& [cmd, expected] : exit_cases) {
        const int got = shell(cli + " " + cmd + " > /dev/null 2>&1");
        if (got != expected)
            return {"cli", false, static_cast<double>(got), static_cast<double>(expected),
                    "exit code mismatch: " + cmd};
    }
    return {"cli", true, 0, 0, ""};
}

}  // namespace

int main() {
    const std::uint64_t seed = 20260824;
    run(1, "partition of unity", [&] { return sdcalc::check_partition_of_unity(seed); });
    run(2, "lagrange identity", [&] { return sdcalc::check_lagrange_identity(seed); });
    run(3, "two-block identity", [&] { return sdcalc::check_two_block_identity(); });
    run(4, "case-formula equivalence", [&] { return sdcalc::check_case_formulas(); });
    run(5, "monte carlo law check", [&] { return sdcalc::check_mc_laws(seed); });
    run(6, "gamma cross-check", [&] { return sdcalc::check_gamma_oracle(); });
    run(7, "triple-transform consistency",
        [&] { return sdcalc::check_transform_consistency(); });
    run(8, "composition at quadrature level",
        [&] { return sdcalc::check_compose_residual(); });
    run(9, "convolution decomposition",
        [&] { return sdcalc::check_convolution_decomposition(); });
    run(10, "end-to-end simulation", [&] { return sdcalc::check_simulation(seed); });
    run(11, "cli determinism + exit codes", [&] { return check_cli(); });
    return failures;
}
