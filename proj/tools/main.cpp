// Command-line front end: parse a univariate function, build and refine its
// triangle-chain relaxation, and emit constraint files, statistics, bound
// queries, or envelope plot data.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyrelax/model.hpp"
#include "polyrelax/serialization.hpp"
#include "polyrelax/simplex.hpp"

namespace {

using namespace polyrelax;

struct RunConfig {
    std::string function;
    double lower = 0.0;
    double upper = 1.0;
    std::string eps_text = "inf";
    bool eps_given = false;
    std::size_t max_parts = 100000;
    bool max_parts_given = false;
    std::string formulation = "milp";
    std::string format = "json";
    std::vector<double> breakpoints;
    bool breakpoints_given = false;
    std::size_t samples = 201;
    std::string output;
};

double parse_eps(const RunConfig& cfg) {
    if (cfg.eps_text == "inf" || cfg.eps_text == "infinity")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cfg.eps_text, &used);
    } catch (const std::exception&) {
        throw Error("--eps expects a positive real or 'inf'");
    }
    if (used != cfg.eps_text.size() || std::isnan(v) || v < 0.0)
        throw Error("--eps expects a positive real or 'inf'");
    return v;
}

struct PipelineResult {
    std::shared_ptr<const FunctionOracle> oracle;
    RefineReport report;
    TriangleChain chain;
    Partition base;
    double eps = 0.0;
};

// Shared front half of every subcommand: parse, find break points, build the
// base partition, refine, build the chain.
PipelineResult run_pipeline(const RunConfig& cfg) {
    PipelineResult out;
    const Domain dom(cfg.lower, cfg.upper);
    out.oracle = make_expr_oracle(cfg.function, dom);

    // --eps omitted while --max-parts is set selects pure budget mode.
    out.eps = parse_eps(cfg);
    if (!cfg.eps_given && cfg.max_parts_given) out.eps = 0.0;

    const std::vector<double> bps = cfg.breakpoints_given
                                        ? cfg.breakpoints
                                        : detect_breakpoints(*out.oracle, dom);
    out.base = base_partition(*out.oracle, dom, bps);
    out.report = refine(out.oracle, out.base, out.eps, cfg.max_parts);
    out.chain = build_chain(out.oracle, out.report.partition);

    if (out.report.stop_reason == StopReason::budget_exhausted && cfg.eps_given &&
        std::isfinite(out.eps) && out.report.final_bound > out.eps)
        std::cerr << "warning: budget of " << cfg.max_parts
                  << " added points exhausted before reaching eps=" << out.eps
                  << " (bound " << out.report.final_bound << ")\n";
    return out;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + cfg.output + "'");
    f << text;
}

const char* stop_text(StopReason r) {
    return r == StopReason::tolerance_met ? "tolerance-met" : "budget-exhausted";
}

int cmd_relax(const RunConfig& cfg) {
    PipelineResult pr = run_pipeline(cfg);
    const ConstraintSystem sys = cfg.formulation == "lp" ? build_lp(pr.chain)
                                                         : build_milp(pr.chain);
    write_output(cfg, cfg.format == "lpfile" ? export_lp_format(sys)
                                             : export_json(sys));
    std::printf("k=%zu bound=%.6g exact=%.6g stop=%s\n", pr.chain.size(),
                pr.report.final_bound, pr.report.final_exact,
                stop_text(pr.report.stop_reason));
    return 0;
}

int cmd_stats(const RunConfig& cfg) {
    PipelineResult pr = run_pipeline(cfg);
    std::string base_pts;
    for (std::size_t i = 0; i < pr.base.points.size(); ++i) {
        if (i) base_pts += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", pr.base.points[i]);
        base_pts += buf;
    }
    std::printf("%s\t[%.6g,%.6g]\t%s\t%zu\t%.6g\t%.6g\n", cfg.function.c_str(),
                cfg.lower, cfg.upper, base_pts.c_str(), pr.chain.size(),
                pr.report.final_bound, pr.report.final_exact);
    return 0;
}

int cmd_bound(const RunConfig& cfg, const std::string& sense_text) {
    PipelineResult pr = run_pipeline(cfg);
    const ObjSense sense =
        sense_text == "max" ? ObjSense::maximize : ObjSense::minimize;
    const YBounds yb = bound_y(pr.chain, sense);

    const ConstraintSystem lp = build_lp(pr.chain);
    const Objective obj{sense, {{"y", 1.0}}};
    const SimplexResult sr = solve_lp(lp, obj);
    if (sr.status != SimplexResult::Status::optimal)
        throw NumericError("simplex cross-check did not reach optimality");

    std::printf("milp=%.10g lp=%.10g simplex=%.10g\n", yb.milp, yb.lp,
                sr.objective);
    return 0;
}

int cmd_plotdata(const RunConfig& cfg) {
    if (cfg.samples < 2) throw Error("--samples must be at least 2");
    PipelineResult pr = run_pipeline(cfg);
    std::string csv = "x,f,under,over\n";
    char buf[160];
    for (std::size_t j = 0; j < cfg.samples; ++j) {
        const double x =
            cfg.lower + (cfg.upper - cfg.lower) * static_cast<double>(j) /
                            static_cast<double>(cfg.samples - 1);
        const double f = pr.oracle->value(x);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, f,
                      pr.chain.lower_envelope(x), pr.chain.upper_envelope(x));
        csv += buf;
    }
    write_output(cfg, csv);
    return 0;
}

void add_common_flags(CLI::App* sub, RunConfig& cfg, bool output_required) {
    sub->add_option("--function", cfg.function, "expression in x, e.g. \"x^3\"")
        ->required();
    sub->add_option("--lower", cfg.lower, "domain lower bound")->required();
    sub->add_option("--upper", cfg.upper, "domain upper bound")->required();
    sub->add_option("--eps", cfg.eps_text,
                    "refinement strength target, positive real or 'inf'");
    sub->add_option("--max-parts", cfg.max_parts,
                    "max partition points added during refinement");
    sub->add_option("--breakpoints", cfg.breakpoints,
                    "comma-separated break points, bypasses detection")
        ->delimiter(',');
    sub->add_option("--samples", cfg.samples, "sample count for plot data");
    auto* out = sub->add_option("--output,-o", cfg.output, "output file path");
    if (output_required) out->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"piecewise-polyhedral relaxations of univariate functions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string bound_sense = "min";

    CLI::App* relax_cmd = app.add_subcommand(
        "relax", "build a relaxation and export it as a constraint file");
    add_common_flags(relax_cmd, cfg, /*output_required=*/true);
    relax_cmd
        ->add_option("--formulation", cfg.formulation, "milp or lp")
        ->check(CLI::IsMember({"milp", "lp"}));
    relax_cmd->add_option("--format", cfg.format, "json or lpfile")
        ->check(CLI::IsMember({"json", "lpfile"}));

    CLI::App* stats_cmd =
        app.add_subcommand("stats", "print a partition/strength summary row");
    add_common_flags(stats_cmd, cfg, /*output_required=*/false);

    CLI::App* bound_cmd = app.add_subcommand(
        "bound", "extremal y over the relaxation, with a simplex cross-check");
    add_common_flags(bound_cmd, cfg, /*output_required=*/false);
    bound_cmd->add_option("sense", bound_sense, "min or max")
        ->required()
        ->check(CLI::IsMember({"min", "max"}));

    CLI::App* plot_cmd = app.add_subcommand(
        "plotdata", "CSV of function and envelope values on a uniform grid");
    add_common_flags(plot_cmd, cfg, /*output_required=*/false);

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : {relax_cmd, stats_cmd, bound_cmd, plot_cmd}) {
        if (sub->parsed()) {
            cfg.eps_given = sub->count("--eps") > 0;
            cfg.max_parts_given = sub->count("--max-parts") > 0;
            cfg.breakpoints_given = sub->count("--breakpoints") > 0;
        }
    }

    try {
        if (relax_cmd->parsed()) return cmd_relax(cfg);
        if (stats_cmd->parsed()) return cmd_stats(cfg);
        if (bound_cmd->parsed()) return cmd_bound(cfg, bound_sense);
        if (plot_cmd->parsed()) return cmd_plotdata(cfg);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
