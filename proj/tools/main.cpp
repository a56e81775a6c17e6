// Command-line front end: coefficients, product laws, triple transforms,
// the verification suite, and the simulation harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdcalc/checks.hpp"
#include "sdcalc/coefficients.hpp"
#include "sdcalc/integral_engine.hpp"
#include "sdcalc/levy.hpp"
#include "sdcalc/product_law.hpp"
#include "sdcalc/rational.hpp"
#include "sdcalc/rng.hpp"
#include "sdcalc/triple_io.hpp"

namespace {

using nlohmann::json;
using namespace sdcalc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

// 17 significant digits: enough to round-trip any double from decimal.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct GlobalOpts {
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 42;
    std::string mode = "float";
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw std::invalid_argument("cannot open output file '" + g.output + "'");
    out << text;
}

std::vector<double> parse_double_list(const std::string& spec, const char* what) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("cannot parse ") + what + " item '" +
                                        item + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(hi > lo)) throw std::invalid_argument("grid bounds must be increasing");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

int run_coeffs(const GlobalOpts& g, const std::vector<std::string>& beta_args) {
    std::ostringstream out;
    if (g.mode == "exact") {
        std::vector<Rational> betas;
        for (const std::string& s : beta_args) betas.push_back(parse_rational(s));
        std::vector<Rational> C = big_C(betas);
        std::vector<Rational> c = little_c(betas);
        Rational sum(0);
        for (const Rational& v : C) sum += v;
        if (g.format == "csv") {
            out << "beta,C,c\n";
            for (std::size_t j = 0; j < betas.size(); ++j)
                out << to_string(betas[j]) << "," << to_string(C[j]) << ","
                    << to_string(c[j]) << "\n";
            out << "sum," << to_string(sum) << ",\n";
        } else {
            json doc;
            doc["mode"] = "exact";
            for (std::size_t j = 0; j < betas.size(); ++j) {
                doc["betas"].push_back(to_string(betas[j]));
                doc["C"].push_back(to_string(C[j]));
                doc["c"].push_back(to_string(c[j]));
            }
            doc["sum_C"] = to_string(sum);
            out << doc.dump(2) << "\n";
        }
    } else {
        std::vector<double> betas;
        for (const std::string& s : beta_args) {
            try {
                std::size_t used = 0;
                betas.push_back(std::stod(s, &used));
                if (used != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse exponent '" + s + "'");
            }
        }
        std::vector<double> C = big_C(betas);
        std::vector<double> c = little_c(betas);
        double sum = 0.0;
        for (double v : C) sum += v;
        if (g.format == "csv") {
            out << "beta,C,c\n";
            for (std::size_t j = 0; j < betas.size(); ++j)
                out << fmt17(betas[j]) << "," << fmt17(C[j]) << "," << fmt17(c[j]) << "\n";
            out << "sum," << fmt17(sum) << ",\n";
        } else {
            json doc;
            doc["mode"] = "float";
            doc["betas"] = betas;
            doc["C"] = C;
            doc["c"] = c;
            doc["sum_C"] = sum;
            out << doc.dump(2) << "\n";
        }
    }
    emit(g, out.str());
    return kExitOk;
}

int run_law(const GlobalOpts& g, const std::string& spec, int grid,
            const std::optional<double>& eval_at, int n_samples) {
    const BetaMultiset ms = parse_multiset_spec(spec);
    const ClosedFormLaw law = build_law(ms);
    std::ostringstream out;

    if (n_samples > 0) {
        SampleBatch batch = sample(ms, n_samples, g.seed, 0);
        if (g.format == "csv") {
            out << "sample\n";
            for (double v : batch.values) out << fmt17(v) << "\n";
        } else {
            json doc;
            doc["multiset"] = ms.expanded();
            doc["seed"] = g.seed;
            doc["samples"] = batch.values;
            out << doc.dump(2) << "\n";
        }
        emit(g, out.str());
        return kExitOk;
    }

    std::vector<double> ts;
    if (eval_at) {
        ts.push_back(*eval_at);
    } else {
        if (grid < 2) throw std::invalid_argument("grid needs at least 2 points");
        for (int i = 1; i <= grid; ++i) ts.push_back(static_cast<double>(i) / grid);
    }
    if (g.format == "csv") {
        out << "t,pdf,cdf\n";
        for (double t : ts)
            out << fmt17(t) << "," << fmt17(law.pdf(t)) << "," << fmt17(law.cdf(t)) << "\n";
    } else {
        json doc;
        doc["multiset"] = ms.expanded();
        json rows = json::array();
        for (double t : ts)
            rows.push_back({{"t", t}, {"pdf", law.pdf(t)}, {"cdf", law.cdf(t)}});
        doc["table"] = rows;
        out << doc.dump(2) << "\n";
    }
    emit(g, out.str());
    return kExitOk;
}

int run_transform(const GlobalOpts& g, const std::string& triple_path,
                  const std::string& betas_spec, const std::string& radii_spec,
                  bool check) {
    const LevyTriple triple = parse_triple_file(triple_path);
    if (!std::holds_alternative<FiniteAtomicMeasure>(triple.measure))
        throw std::invalid_argument("transform input must carry a finite atomic measure");
    const BetaMultiset ms = parse_multiset_spec(betas_spec);
    const LevyTriple transformed = transform_multi(triple, ms);

    json doc;
    doc["triple"] = triple_to_json(transformed);
    if (!radii_spec.empty()) {
        json masses = json::array();
        for (double rho : parse_double_list(radii_spec, "radius")) {
            if (!(rho > 0.0)) throw std::invalid_argument("radii must be positive");
            masses.push_back(
                {{"radius", rho}, {"mass", measure_eval(transformed.measure, rho)}});
        }
        doc["ball_complement_masses"] = masses;
    }
    if (check) {
        if (!ms.all_distinct())
            throw std::invalid_argument(
                "--check requires distinct exponents (the decomposition needs them)");
        const std::vector<double> betas = ms.expanded();
        const std::vector<double> coeffs = big_C(betas);
        std::vector<LevyTriple> singles;
        for (double b : betas) singles.push_back(transform_single(triple, b));
        double residual = 0.0;
        for (int i = 0; i < triple.dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                s += coeffs[j] * singles[j].shift[i];
            residual = std::max(residual, std::abs(s - transformed.shift[i]));
        }
        for (int i = 0; i < triple.dim * triple.dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                s += coeffs[j] * singles[j].covariance[i];
            residual = std::max(residual, std::abs(s - transformed.covariance[i]));
        }
        for (double rho : {0.25, 0.5, 1.0, 2.0}) {
            double s = 0.0;
            for (std::size_t j = 0; j < betas.size(); ++j)
                s += coeffs[j] * measure_eval(singles[j].measure, rho);
            residual =
                std::max(residual, std::abs(s - measure_eval(transformed.measure, rho)));
        }
        doc["check_residual"] = residual;
    }
    emit(g, doc.dump(2) + "\n");
    return kExitOk;
}

int run_verify(const GlobalOpts& g, const std::string& suite) {
    const std::vector<CheckResult> results = run_suite(suite, g.seed);
    bool all_pass = true;
    std::ostringstream out;
    if (g.format == "csv") {
        out << "check,pass,residual,threshold\n";
        for (const CheckResult& r : results) {
            all_pass = all_pass && r.pass;
            out << r.name << "," << (r.pass ? "pass" : "fail") << "," << fmt17(r.residual)
                << "," << fmt17(r.threshold) << "\n";
        }
    } else {
        json doc;
        doc["suite"] = suite;
        doc["seed"] = g.seed;
        json checks = json::array();
        for (const CheckResult& r : results) {
            all_pass = all_pass && r.pass;
            checks.push_back({{"name", r.name},
                              {"pass", r.pass},
                              {"residual", r.residual},
                              {"threshold", r.threshold},
                              {"detail", r.detail}});
        }
        doc["checks"] = checks;
        doc["pass"] = all_pass;
        out << doc.dump(2) << "\n";
    }
    emit(g, out.str());
    return all_pass ? kExitOk : kExitVerifyFail;
}

int run_simulate(const GlobalOpts& g, const std::string& triple_path,
                 const std::string& betas_spec, int paths, int grid, double ymin,
                 double ymax, int ypoints, double z) {
    if (paths < 1000) throw std::invalid_argument("at least 1000 paths required");
    const LevyTriple triple = parse_triple_file(triple_path);
    IntegralSpec spec = IntegralSpec::make(1.0, build_law(parse_multiset_spec(betas_spec)));
    SimulationResult sim = simulate_integral(triple, spec, paths, grid, g.seed);
    std::vector<Vec> ygrid;
    if (triple.dim != 1)
        throw std::invalid_argument("the scalar y grid applies to dimension 1 only");
    for (double y : linspace(ymin, ymax, ypoints)) ygrid.push_back({y});
    EmpiricalCF emp = empirical_cf(sim.samples, ygrid);
    CfComparison cmp = cf_compare(
        emp,
        [&](std::span<const double> y) { return logcf_quadrature(triple, spec, y); }, z);

    json doc;
    doc["seed"] = g.seed;
    doc["paths"] = paths;
    doc["grid"] = grid;
    doc["multiset"] = parse_multiset_spec(betas_spec).expanded();
    doc["truncated_mass"] = sim.truncated_mass;
    doc["z_threshold"] = z;
    json pts = json::array();
    for (const CfPointReport& p : cmp.points) {
        pts.push_back({{"y", p.y},
                       {"empirical_re", p.empirical.real()},
                       {"empirical_im", p.empirical.imag()},
                       {"analytic_re", p.analytic.real()},
                       {"analytic_im", p.analytic.imag()},
                       {"std_error", p.std_error},
                       {"standardized_deviation", p.standardized_deviation},
                       {"pass", p.pass}});
    }
    doc["points"] = pts;
    doc["max_standardized_deviation"] = cmp.max_standardized_deviation;
    doc["pass"] = cmp.pass;
    emit(g, doc.dump(2) + "\n");
    return cmp.pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-integral calculus toolkit: coefficient families, product laws, "
                 "triple transforms, verification, simulation"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--output", g.output, "Write output to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "Seed for randomized commands (echoed in output)");
    app.add_option("--mode", g.mode, "Arithmetic mode")
        ->check(CLI::IsMember({"float", "exact"}));

    std::vector<std::string> beta_args;
    CLI::App* coeffs = app.add_subcommand(
        "coeffs", "Coefficient families C and c for distinct exponents");
    coeffs->add_option("betas", beta_args, "Distinct positive exponents")->required();

    std::string law_spec;
    int law_grid = 100;
    std::optional<double> law_eval;
    int law_samples = 0;
    CLI::App* law = app.add_subcommand(
        "law", "Closed-form law of a product of powers of uniforms");
    law->add_option("multiset", law_spec, "Exponent multiset, e.g. 1,2 or 2x3")->required();
    law->add_option("--grid", law_grid, "Table grid size");
    law->add_option("--eval", law_eval, "Evaluate pdf/cdf at a single point");
    law->add_option("--sample", law_samples, "Emit this many samples instead of a table");

    std::string tf_triple, tf_betas, tf_radii;
    bool tf_check = false;
    CLI::App* transform = app.add_subcommand(
        "transform", "Transform a Levy triple under a composed mapping");
    transform->add_option("triple", tf_triple, "Triple JSON file")->required();
    transform->add_option("--betas", tf_betas, "Exponent multiset")->required();
    transform->add_option("--radii", tf_radii, "Radii for ball-complement masses");
    transform->add_flag("--check", tf_check, "Also report the decomposition residual");

    std::string verify_suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--suite", verify_suite, "Suite selector")
        ->check(CLI::IsMember({"identities", "mc", "compose", "all"}));

    std::string sim_triple, sim_betas;
    int sim_paths = 100000, sim_grid = 512, sim_ypoints = 21;
    double sim_ymin = -3.0, sim_ymax = 3.0, sim_z = 4.0;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Simulate the integral and compare the empirical cf");
    simulate->add_option("triple", sim_triple, "Triple JSON file")->required();
    simulate->add_option("--betas", sim_betas, "Exponent multiset")->required();
    simulate->add_option("--paths", sim_paths, "Number of paths (>= 1000)");
    simulate->add_option("--grid", sim_grid, "Time grid size (>= 64)");
    simulate->add_option("--ymin", sim_ymin, "Lower end of the y grid");
    simulate->add_option("--ymax", sim_ymax, "Upper end of the y grid");
    simulate->add_option("--ypoints", sim_ypoints, "Number of y grid points");
    simulate->add_option("--z", sim_z, "Standardized-deviation threshold");

    // Global flags remain valid after the subcommand name.
    for (CLI::App* sub : {coeffs, law, transform, verify, simulate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (coeffs->parsed()) return run_coeffs(g, beta_args);
        if (law->parsed()) return run_law(g, law_spec, law_grid, law_eval, law_samples);
        if (transform->parsed())
            return run_transform(g, tf_triple, tf_betas, tf_radii, tf_check);
        if (verify->parsed()) return run_verify(g, verify_suite);
        if (simulate->parsed())
            return run_simulate(g, sim_triple, sim_betas, sim_paths, sim_grid, sim_ymin,
                                sim_ymax, sim_ypoints, sim_z);
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitInputError;
}
