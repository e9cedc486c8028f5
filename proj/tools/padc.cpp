// padc: batch front-end for the p-adic Cauchy-problem library.
//
// Subcommands: solve-ode, solve-pde, type, ml, verify, factorial-bounds.
// All I/O is JSON with exact rationals as strings "a/b"; decimal renderings
// are display-only. Exit codes: 0 success, 2 verification failure,
// 3 precision exhaustion, 4 invalid input.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic/cauchy.hpp"
#include "padic/factorial.hpp"
#include "padic/fnspace.hpp"
#include "padic/json_io.hpp"
#include "padic/mittag.hpp"

using nlohmann::json;
using namespace padic;

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidProblem("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

long long require_prime(const json& j, long long flag_p) {
    long long p = flag_p > 0 ? flag_p : j.value("p", 0LL);
    if (!is_prime(p)) throw InvalidProblem("p = " + std::to_string(p) + " is not prime");
    return p;
}

json display(const ExtRational& r) {
    return json{{"exact", r.to_string()}, {"approx_display_only", r.to_double()}};
}

void emit(const json& report, const std::string& output, bool quiet) {
    if (!output.empty()) {
        std::ofstream out(output);
        out << report.dump(2) << "\n";
        if (!quiet) std::cerr << "report written to " << output << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

MatrixCauchyProblem ode_problem_from_json(const json& j, long long p, int precision,
                                          int truncation) {
    MatrixCauchyProblem prob;
    prob.prime = p;
    prob.m = j.at("m").get<int>();
    prob.op = io::matrix_from_json(j.at("matrix"), p);
    for (const auto& y : j.at("initial")) prob.initial.push_back(io::vector_from_json(y, p));
    prob.n_terms = truncation > 0 ? truncation : j.value("truncation", 32);
    prob.precision_cap = precision > 0 ? precision : j.value("precision", 64);
    return prob;
}

json ode_problem_to_json(const MatrixCauchyProblem& prob) {
    json initial = json::array();
    for (const auto& y : prob.initial) initial.push_back(io::vector_to_json(y));
    return json{{"p", prob.prime},       {"m", prob.m},
                {"matrix", io::matrix_to_json(prob.op)}, {"initial", initial},
                {"truncation", prob.n_terms},            {"precision", prob.precision_cap}};
}

PdeCauchyProblem pde_problem_from_json(const json& j, long long p, int precision, int truncation) {
    PdeCauchyProblem prob;
    prob.prime = p;
    prob.m = j.at("m").get<int>();
    prob.op = io::diffop_from_json(j.at("operator"), p);
    for (const auto& phi : j.at("initial"))
        prob.initial.push_back(io::multiseries_from_json(phi, p));
    prob.n_terms = truncation > 0 ? truncation : j.value("truncation", 16);
    prob.precision_cap = precision > 0 ? precision : j.value("precision", 64);
    return prob;
}

json pde_problem_to_json(const PdeCauchyProblem& prob) {
    json initial = json::array();
    for (const auto& phi : prob.initial) initial.push_back(io::multiseries_to_json(phi));
    return json{{"p", prob.prime},
                {"m", prob.m},
                {"operator", io::diffop_to_json(prob.op)},
                {"initial", initial},
                {"truncation", prob.n_terms},
                {"precision", prob.precision_cap}};
}

int run_solve_ode(const json& in, long long flag_p, int precision, int truncation,
                  const std::string& output, bool quiet) {
    Timer t;
    long long p = require_prime(in, flag_p);
    MatrixCauchyProblem prob = ode_problem_from_json(in, p, precision, truncation);
    CauchySolution<PVector> sol = solve(prob);
    ResidualReport rep = verify_residual(sol, prob);

    json sigmas = json::array();
    for (const auto& c : sol.per_k_types) sigmas.push_back(c.sigma_exp.to_string());
    json report{{"schema_version", 1},
                {"kind", "ode"},
                {"problem", ode_problem_to_json(prob)},
                {"results",
                 {{"series", io::series_to_json(sol.series)},
                  {"radius_threshold", display(sol.radius_threshold)},
                  {"per_k_sigma_exp", sigmas}}},
                {"verification", io::residual_report_to_json(rep)},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return rep.pass ? 0 : 2;
}

int run_solve_pde(const json& in, long long flag_p, int precision, int truncation, int degree,
                  const std::string& output, bool quiet) {
    Timer t;
    long long p = require_prime(in, flag_p);
    PdeCauchyProblem prob = pde_problem_from_json(in, p, precision, truncation);
    int out_degree = degree > 0 ? degree : in.value("degree", -1);
    CauchySolution<MultiSeries> sol = pde_solve(prob, out_degree);
    ResidualReport rep = verify_residual(sol, prob);

    json coeffs = json::array();
    for (const auto& c : sol.series.coeffs) coeffs.push_back(io::multiseries_to_json(c));
    json report{{"schema_version", 1},
                {"kind", "pde"},
                {"problem", pde_problem_to_json(prob)},
                {"results",
                 {{"series",
                   {{"truncation", sol.series.truncation()},
                    {"coeffs", coeffs},
                    {"tail", io::tail_to_json(sol.series.tail)},
                    {"polynomial", sol.series.polynomial}}},
                  {"radius_threshold", display(sol.radius_threshold)},
                  {"operator_norm_bound", display(diffop_norm_bound(prob.op))}}},
                {"verification", io::residual_report_to_json(rep)},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return rep.pass ? 0 : 2;
}

int run_type(const json& in, long long flag_p, const std::string& output, bool quiet) {
    Timer t;
    long long p = require_prime(in, flag_p);
    PMatrix a = io::matrix_from_json(in.at("matrix"), p);
    PVector x = io::vector_from_json(in.at("vector"), p);
    TypeCertificate cert = vector_type(a, x);
    json vals = json::array();
    for (const auto& v : cert.minpoly_valuations) vals.push_back(v.to_string());
    json report{{"schema_version", 1},
                {"kind", "type"},
                {"results",
                 {{"sigma_exp", display(cert.sigma_exp)},
                  {"minpoly_valuations", vals},
                  {"krylov_degree", cert.krylov_degree},
                  {"method", "newton_polygon"},
                  {"entire", cert.sigma_exp.is_neg_inf()},
                  {"operator_norm_exp", display(operator_norm(a))}}},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return 0;
}

int run_ml(const json& in, long long flag_p, int precision, int truncation,
           const std::string& output, bool quiet) {
    Timer t;
    long long p = require_prime(in, flag_p);
    PMatrix a = io::matrix_from_json(in.at("matrix"), p);
    PVector x = io::vector_from_json(in.at("vector"), p);
    MLSpec spec{in.value("m", 1), in.value("k", 0),
                truncation > 0 ? truncation : in.value("truncation", 32)};
    int cap = precision > 0 ? precision : in.value("precision", 64);
    BSeries<PVector> s = ml_coefficients(a, x, spec, cap);
    TypeCertificate cert = vector_type(a, x);
    json results{{"series", io::series_to_json(s)},
                 {"sigma_exp", display(cert.sigma_exp)},
                 {"radius_threshold", display(ml_radius(cert.sigma_exp, spec.m, p))}};
    if (in.contains("eval_at")) {
        PAdicScalar z = io::scalar_from_json(in.at("eval_at"), p);
        auto ev = ml_eval(a, x, spec, z, cap);
        results["eval"] = json{{"value", io::vector_to_json(ev.value)},
                               {"error_valuation", ev.error_exponent.to_string()},
                               {"certified", ev.certified}};
    }
    json report{{"schema_version", 1},
                {"kind", "ml"},
                {"results", results},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return 0;
}

int run_verify(const json& in, const std::string& output, bool quiet) {
    Timer t;
    std::string kind = in.at("kind").get<std::string>();
    ResidualReport rep;
    if (kind == "ode") {
        const json& pj = in.at("problem");
        long long p = require_prime(pj, 0);
        MatrixCauchyProblem prob = ode_problem_from_json(pj, p, 0, 0);
        CauchySolution<PVector> sol;
        sol.series = io::series_from_json(in.at("results").at("series"), p);
        rep = verify_residual(sol, prob);
    } else if (kind == "pde") {
        const json& pj = in.at("problem");
        long long p = require_prime(pj, 0);
        PdeCauchyProblem prob = pde_problem_from_json(pj, p, 0, 0);
        CauchySolution<MultiSeries> sol;
        sol.series.prime = p;
        for (const auto& c : in.at("results").at("series").at("coeffs"))
            sol.series.coeffs.push_back(io::multiseries_from_json(c, p));
        sol.series.polynomial = in.at("results").at("series").value("polynomial", false);
        rep = verify_residual(sol, prob);
    } else {
        throw InvalidProblem("verify: unsupported report kind '" + kind + "'");
    }
    json report{{"schema_version", 1},
                {"kind", "verify"},
                {"verification", io::residual_report_to_json(rep)},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return rep.pass ? 0 : 2;
}

int run_factorial_bounds(long long p, long long n_max, const std::string& output, bool quiet) {
    Timer t;
    if (!is_prime(p)) throw InvalidProblem("p = " + std::to_string(p) + " is not prime");
    if (n_max < 1) throw InvalidProblem("--n-max must be >= 1");
    json rows = json::array();
    bool all = true;
    for (long long n = 1; n <= n_max; ++n) {
        FactorialNormBounds b = factorial_norm_bounds(n, p);
        bool ok = b.lower_le_exact && b.exact_le_upper;
        all = all && ok;
        rows.push_back(json{{"n", n},
                            {"exact", b.exact.to_string()},
                            {"upper", b.upper.to_string()},
                            {"lower_le_exact", b.lower_le_exact},
                            {"exact_le_upper", b.exact_le_upper}});
    }
    json report{{"schema_version", 1},
                {"kind", "factorial-bounds"},
                {"p", p},
                {"n_max", n_max},
                {"all_hold", all},
                {"rows", rows},
                {"timing", {{"seconds", t.seconds()}}}};
    emit(report, output, quiet);
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic Cauchy-problem solver"};
    app.require_subcommand(1);

    long long flag_p = 0;
    int precision = 0, truncation = 0, degree = 0;
    long long n_max = 100;
    std::string input, output;
    bool quiet = false;

    app.add_option("--p", flag_p, "prime (overrides the problem file)");
    app.add_option("--precision", precision, "relative precision cap in base-p digits");
    app.add_option("--truncation", truncation, "number of operator powers computed");
    app.add_option("--degree", degree, "requested exact output degree (pde)");
    app.add_option("--output", output, "write the report to this path instead of stdout");
    app.add_flag("--quiet", quiet, "suppress diagnostics on stderr");

    auto* ode = app.add_subcommand("solve-ode", "solve y^(m) = Ay for a matrix A");
    ode->add_option("input", input, "problem file (JSON)")->required();
    auto* pde = app.add_subcommand("solve-pde", "solve d^m u/dt^m = sum a_beta D^beta u");
    pde->add_option("input", input, "problem file (JSON)")->required();
    auto* type = app.add_subcommand("type", "type sigma(x; A) with certificate");
    type->add_option("input", input, "problem file (JSON)")->required();
    auto* ml = app.add_subcommand("ml", "Mittag-Leffler series F_k(z; A)x");
    ml->add_option("input", input, "problem file (JSON)")->required();
    auto* verify = app.add_subcommand("verify", "re-verify a stored solution report");
    verify->add_option("input", input, "report file (JSON)")->required();
    auto* facb = app.add_subcommand("factorial-bounds", "two-sided |n!|_p estimate table");
    facb->add_option("--n-max", n_max, "largest n in the table");

    for (auto* sub : {ode, pde, type, ml, verify, facb}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ode->parsed()) return run_solve_ode(load_input(input), flag_p, precision, truncation, output, quiet);
        if (pde->parsed()) return run_solve_pde(load_input(input), flag_p, precision, truncation, degree, output, quiet);
        if (type->parsed()) return run_type(load_input(input), flag_p, output, quiet);
        if (ml->parsed()) return run_ml(load_input(input), flag_p, precision, truncation, output, quiet);
        if (verify->parsed()) return run_verify(load_input(input), output, quiet);
        if (facb->parsed()) return run_factorial_bounds(flag_p > 0 ? flag_p : 2, n_max, output, quiet);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 4;
    }
    return 4;
}
