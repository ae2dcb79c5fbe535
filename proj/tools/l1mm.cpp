// Command-line harness: bounds, exact-risk, mc and reproduce subcommands.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "l1mm/l1mm.hpp"

namespace {

void add_common(CLI::App* cmd, l1mm::ExperimentSpec& spec, std::string& format) {
    cmd->add_option("--grid-H", spec.H, "entropy radii (nats)");
    cmd->add_option("--grid-n", spec.n, "sample sizes");
    cmd->add_option("--grid-S", spec.S, "support sizes");
    cmd->add_option("--grid-c", spec.c, "entropy-ball fractions in (0,1)");
    cmd->add_option("--grid-zeta", spec.zeta, "zeta values in (0,1]");
    cmd->add_option("--grid-eta", spec.eta, "threshold exponents > 1");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", spec.out, "output path (default: stdout)");
    cmd->add_option("--threads", spec.threads, "worker threads");
    cmd->add_flag("--timing", spec.timing, "record wall-clock runtime_ms per row");
}

void add_family_options(CLI::App* cmd, l1mm::ExperimentSpec& spec) {
    cmd->add_option("--estimator", spec.estimators, "empirical and/or threshold")
        ->check(CLI::IsMember({"empirical", "threshold"}));
    cmd->add_option("--family", spec.family, "uniform, entropy-ball or file:PATH");
}

void emit(const l1mm::RiskReport& report, const l1mm::ExperimentSpec& spec) {
    if (spec.out.empty()) {
        l1mm::write_report(std::cout, report, spec.format);
        return;
    }
    std::ofstream f(spec.out, std::ios::binary | std::ios::trunc);
    if (!f) throw l1mm::InputError("cannot write '" + spec.out + "'");
    l1mm::write_report(f, report, spec.format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and Monte-Carlo l1 risk of discrete distribution estimators"};
    app.require_subcommand(1);

    l1mm::ExperimentSpec spec;
    std::string format = "csv";
    std::string target;

    auto* bounds = app.add_subcommand("bounds", "evaluate every bound on the grid");
    add_common(bounds, spec, format);

    auto* exact = app.add_subcommand("exact-risk", "exact risk on a named family");
    add_common(exact, spec, format);
    add_family_options(exact, spec);

    auto* mc = app.add_subcommand("mc", "Monte-Carlo risk with 3-sigma interval");
    add_common(mc, spec, format);
    add_family_options(mc, spec);
    mc->add_option("--seed", spec.seed, "master seed");
    mc->add_option("--replicates", spec.replicates, "replicates per cell (>= 100)");

    auto* repro = app.add_subcommand("reproduce", "scripted sweep with PASS/FAIL verdict");
    add_common(repro, spec, format);
    repro->add_option("target", target, "cor2, cor3-4, cor6, cor7 or cor9")->required();
    repro->add_option("--grid-ratio", spec.ratio, "n/S ratios (cor3-4)");

    CLI11_PARSE(app, argc, argv);
    spec.format = format == "json" ? l1mm::OutputFormat::json : l1mm::OutputFormat::csv;

    try {
        if (*bounds) {
            spec.command = "bounds";
            emit(l1mm::cmd_bounds(spec), spec);
        } else if (*exact) {
            spec.command = "exact-risk";
            emit(l1mm::cmd_exact_risk(spec), spec);
        } else if (*mc) {
            spec.command = "mc";
            emit(l1mm::cmd_mc(spec), spec);
        } else if (*repro) {
            spec.command = "reproduce";
            const l1mm::ReproduceResult res = l1mm::cmd_reproduce(target, spec);
            emit(res.report, spec);
            std::ostream& verdict = spec.out.empty() ? std::cerr : std::cout;
            for (const auto& line : res.checks) verdict << line << '\n';
            verdict << (res.pass ? "PASS " : "FAIL ") << target << '\n';
            return res.pass ? 0 : 1;
        }
    } catch (const l1mm::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const l1mm::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
