// qexp: exponential sums over singular binary quintic forms over F_p.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace qexp;
using namespace qexp::cli;

const std::map<std::string, Format> kFormats = {{"json", Format::json}, {"csv", Format::csv}, {"md", Format::md}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential sums over singular binary quintic forms over F_p"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.budget = default_budget();
    std::string coeffs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(kFormats));
        sub->add_option("--budget", cfg.budget, "Enumeration cap (default 1e9 or QEXP_BUDGET)")
            ->check(CLI::PositiveNumber);
    };
    auto add_prime = [&](CLI::App* sub) { sub->add_option("--prime", cfg.prime, "The prime p")->required(); };

    auto* eval = app.add_subcommand("eval", "Evaluate S(w) = p^6 Phi-hat(w) for one w");
    add_prime(eval);
    eval->add_option("--coeffs", coeffs, "a0,...,a5 in the dual basis, e.g. 0,0,0,1,1,-2")->required();
    add_common(eval);

    auto* verify = app.add_subcommand("verify", "Compare the closed form with the brute-force oracle");
    add_prime(verify);
    verify->add_option("--scope", cfg.scope, "exhaustive or sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    verify->add_option("--count", cfg.count, "Sample size")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "Sampling seed");
    verify->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    add_common(verify);

    auto* examples = app.add_subcommand("examples", "Regenerate the worked examples and the family table");
    add_common(examples);

    auto* table = app.add_subcommand("table", "Regenerate the N~ summary table and the fiber table at p");
    add_prime(table);
    add_common(table);

    auto* scan = app.add_subcommand("scan", "Gather max |S| over generic w of degree n");
    add_prime(scan);
    cfg.count = 1000;
    scan->add_option("--degree", cfg.degree, "Degree n in 3..7")->check(CLI::Range(3, 7));
    scan->add_option("--count", cfg.count, "Sample size when the space is too large to sweep")
        ->check(CLI::PositiveNumber);
    scan->add_option("--seed", cfg.seed, "Sampling seed");
    add_common(scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (!coeffs.empty()) cfg.coeffs = parse_coeffs(coeffs);
        Report report;
        if (*eval) report = cmd_eval(cfg);
        else if (*verify) report = cmd_verify(cfg);
        else if (*examples) report = cmd_examples(cfg);
        else if (*table) report = cmd_table(cfg);
        else report = cmd_scan(cfg);
        std::cout << render(report, cfg.format);
        return report.exit_code();
    } catch (const BudgetExceeded& e) {
        std::cerr << "qexp: budget refusal: " << e.what() << "\n";
        return kBudget;
    } catch (const UsageError& e) {
        std::cerr << "qexp: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qexp: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "qexp: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "qexp: internal mismatch: " << e.what() << "\n";
        return kMismatch;
    }
}
