// Batch front-end: list the field catalog, run verification suites, and
// estimate finite-difference convergence orders.  Exit codes: 0 when every
// selected check behaves as expected (controls are expected to fail the
// checks they violate), 1 on an unexpected outcome, 2 on configuration or
// runtime errors.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fueter/driver.hpp"

namespace {

using namespace fueter;

void parse_box_spec(const std::string& spec, Box& box) {
    // "t=a:b,r=a:b,beta=a:b"; every axis optional
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        const auto colon = part.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos)
            throw config_error("bad box spec '" + part + "' (want axis=lo:hi)");
        const std::string axis = part.substr(0, eq);
        double lo, hi;
        try {
            lo = std::stod(part.substr(eq + 1, colon - eq - 1));
            hi = std::stod(part.substr(colon + 1));
        } catch (const std::exception&) {
            throw config_error("bad box bounds in '" + part + "'");
        }
        if (axis == "t") {
            box.t_min = lo;
            box.t_max = hi;
        } else if (axis == "r") {
            box.r_min = lo;
            box.r_max = hi;
        } else if (axis == "beta") {
            box.beta_min = lo;
            box.beta_max = hi;
        } else {
            throw config_error("unknown box axis '" + axis + "'");
        }
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_atomic(out_path, content);
}

std::string render_catalog(const std::string& format) {
    const auto cat = catalog();
    if (format == "json") return catalog_to_json(cat).dump(2) + "\n";
    if (format == "csv") {
        std::string s = "name,kind,singular_loci,satisfies_condition\n";
        for (const StructuredField& f : cat) {
            if (f.kind == FieldKind::fixture) continue;
            s += csv_escape(f.name);
            s += ',';
            s += kind_name(f.kind);
            s += ',';
            s += csv_escape(f.singular_loci);
            s += ',';
            s += f.satisfies_condition ? "true" : "false";
            s += '\n';
        }
        return s;
    }
    if (format == "pretty") {
        std::string s;
        for (const StructuredField& f : cat) {
            if (f.kind == FieldKind::fixture) continue;
            s += f.name;
            s += "  [";
            s += kind_name(f.kind);
            s += f.satisfies_condition ? ", condition" : ", violates condition";
            s += "]  singular: " + f.singular_loci + "\n";
        }
        return s;
    }
    throw config_error("unknown format '" + format + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternionic field verification: structured fields, Fueter-type operators, "
                 "and residual checks of their identities"};
    app.require_subcommand(1);

    std::string format = "pretty";
    std::string out_path;

    // catalog -----------------------------------------------------------
    auto* cmd_catalog = app.add_subcommand("catalog", "List the field catalog");
    std::string cat_format = "pretty";
    std::string cat_out;
    cmd_catalog->add_option("--format", cat_format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd_catalog->add_option("--out", cat_out, "Output path (default stdout)");

    // run ----------------------------------------------------------------
    auto* cmd_run = app.add_subcommand("run", "Run verification checks");
    cmd_run->set_config("--config", "", "Flat key=value config file (flags take precedence)");
    RunConfig rc;
    std::string run_backend = "analytic";
    std::string run_mode = "random";
    std::string run_box;
    bool run_richardson = true;
    cmd_run->add_option("--suite", rc.suite, "all|positive|negative|identities")
        ->check(CLI::IsMember({"all", "positive", "negative", "identities"}));
    cmd_run->add_option("--field", rc.field_selectors, "Field name glob (repeatable)");
    cmd_run->add_option("--check", rc.check_selectors, "Check id (repeatable)");
    cmd_run->add_option("--n", rc.plan.n, "Sample count (points per axis in grid mode)");
    cmd_run->add_option("--seed", rc.plan.rng_seed, "RNG seed");
    cmd_run->add_option("--h", rc.engine.h, "FD step for fd2/fd4 backends");
    cmd_run->add_option("--backend", run_backend, "analytic|fd2|fd4")
        ->check(CLI::IsMember({"analytic", "fd2", "fd4"}));
    cmd_run->add_flag("--richardson,!--no-richardson", run_richardson,
                      "Richardson-extrapolate FD stencils (default on)");
    cmd_run->add_option("--mode", run_mode, "random|grid")
        ->check(CLI::IsMember({"random", "grid"}));
    cmd_run->add_option("--box", run_box, "Sampling box, e.g. t=-1:1,r=0.5:2,beta=0.4:2.7");
    cmd_run->add_option("--format", rc.format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd_run->add_option("--out", rc.out_path, "Report path (written atomically)");

    // converge -------------------------------------------------------------
    auto* cmd_conv = app.add_subcommand("converge", "Estimate FD convergence order of a check");
    cmd_conv->set_config("--config", "", "Flat key=value config file (flags take precedence)");
    ConvergeConfig cc;
    std::string conv_backend = "fd2";
    std::string conv_box;
    bool conv_richardson = false;
    cmd_conv->add_option("--check", cc.check, "Field check id (default condition)");
    cmd_conv->add_option("--field", cc.field, "Catalog field (default fueter:exp)");
    cmd_conv->add_option("--h0", cc.h0, "Coarsest step (default 0.1)");
    cmd_conv->add_option("--levels", cc.levels, "Number of halvings (default 4, min 3)");
    cmd_conv->add_option("--n", cc.plan.n, "Sample count");
    cmd_conv->add_option("--seed", cc.plan.rng_seed, "RNG seed");
    cmd_conv->add_option("--backend", conv_backend, "fd2|fd4|analytic")
        ->check(CLI::IsMember({"analytic", "fd2", "fd4"}));
    cmd_conv->add_flag("--richardson", conv_richardson,
                       "Extrapolate stencils (off by default: measures raw orders)");
    cmd_conv->add_option("--box", conv_box, "Sampling box override");
    cmd_conv->add_option("--format", cc.format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd_conv->add_option("--out", cc.out_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    (void)format;
    (void)out_path;
    try {
        if (cmd_catalog->parsed()) {
            emit(cat_out, render_catalog(cat_format));
            return 0;
        }
        if (cmd_run->parsed()) {
            rc.engine.backend = backend_from_name(run_backend);
            rc.engine.richardson = run_richardson;
            rc.plan.mode = run_mode == "grid" ? SampleMode::grid : SampleMode::random;
            if (!run_box.empty()) parse_box_spec(run_box, rc.plan.box);
            if (rc.engine.backend != Backend::analytic) {
                const double reach = 2.5 * rc.engine.h; // widest stencil offset incl. richardson
                if (reach >= rc.plan.box.r_min || reach >= rc.plan.box.beta_min)
                    throw config_error("FD step too large for the box: stencils would cross "
                                       "r=0 or the beta poles");
            }
            const RunOutcome out = run_checks(rc);
            emit(rc.out_path, render_run(rc, out));
            return out.all_as_expected ? 0 : 1;
        }
        // converge
        cc.engine.backend = backend_from_name(conv_backend);
        cc.engine.richardson = conv_richardson;
        if (!conv_box.empty()) parse_box_spec(conv_box, cc.plan.box);
        if (cc.engine.backend != Backend::analytic) {
            const double reach = 2.5 * cc.h0;
            if (reach >= cc.plan.box.r_min || reach >= cc.plan.box.beta_min)
                throw config_error("h0 too large for the box: stencils would cross r=0 or "
                                   "the beta poles");
        }
        const ConvergenceResult res = run_convergence(cc);
        emit(cc.out_path, render_convergence(cc, res));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
