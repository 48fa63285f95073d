#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsys/cli.hpp"

namespace {

void add_source_options(CLI::App* cmd, std::string& measure_path, std::string& model_path,
                        int& example_id, double& ell, double& mu_angle, double& rho) {
    cmd->add_option("--measure", measure_path, "measure-spec JSON file");
    cmd->add_option("--model", model_path, "model JSON file");
    cmd->add_option("--example", example_id, "closed-form family id (1..4)")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--ell", ell, "interval length for --example");
    cmd->add_option("--mu-angle", mu_angle, "phase-family parameter angle (example 3)");
    cmd->add_option("--rho", rho, "boundary parameter (example 4)");
}

bool resolve_source(const CLI::App* cmd, const std::string& measure_path,
                    const std::string& model_path, lsys::SourceKind& kind, std::string& path) {
    const bool has_measure = !measure_path.empty();
    const bool has_model = !model_path.empty();
    const bool has_example = cmd->count("--example") > 0;
    if (has_measure + has_model + has_example != 1) {
        std::cerr << "usage error: pick exactly one of --measure, --model, --example\n";
        return false;
    }
    if (has_measure) {
        kind = lsys::SourceKind::MeasureFile;
        path = measure_path;
    } else if (has_model) {
        kind = lsys::SourceKind::ModelFile;
        path = model_path;
    } else {
        kind = lsys::SourceKind::Example;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl/Livsic/transfer/impedance function calculus for conservative systems"};
    app.require_subcommand(1);

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate a function role on a grid");
    std::string eval_measure, eval_model;
    int eval_example = 1;
    double eval_ell = 1.0, eval_mu_angle = 0.0, eval_rho = 0.0;
    add_source_options(eval, eval_measure, eval_model, eval_example, eval_ell, eval_mu_angle,
                       eval_rho);
    lsys::JobSpec job;
    eval->add_option("--role", job.role, "weyl|livsic|characteristic|transfer|impedance")
        ->default_val("weyl");
    double kappa_flag = -1.0;
    eval->add_option("--kappa", kappa_flag, "extension parameter for derived roles");
    std::vector<double> grid_bounds;
    eval->add_option("--grid", grid_bounds,
                     "re_min re_max im_min im_max n_re n_im (default -5 5 0.1 10 20 20)")
        ->expected(6);
    eval->add_option("--out", job.out_path, "output file (default stdout)");
    eval->add_option("--format", job.format, "csv|json")->default_val("csv");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the identity/property suites");
    std::string suite = "all";
    verify->add_option("--suite", suite,
                       "reciprocity|cayley|donoghue|biextension|examples|all");

    // ---- model ----
    auto* model = app.add_subcommand("model", "discretize a measure into a model file");
    lsys::ModelBuildSpec build;
    model->add_option("--measure", build.measure_path, "measure-spec JSON file")->required();
    model->add_option("--kappa", build.kappa, "extension parameter")->required();
    model->add_option("--n", build.n_nodes, "node count")->required();
    model->add_option("--out", build.out_path, "output model JSON (default stdout)");

    // ---- invert ----
    auto* invert = app.add_subcommand("invert", "recover density/atoms from boundary values");
    std::string inv_measure, inv_model;
    int inv_example = 1;
    double inv_ell = 1.0, inv_mu_angle = 0.0, inv_rho = 0.0;
    add_source_options(invert, inv_measure, inv_model, inv_example, inv_ell, inv_mu_angle, inv_rho);
    lsys::InvertSpec inv;
    std::vector<double> window;
    invert->add_option("--window", window, "lo hi")->expected(2);
    invert->add_option("--grid-n", inv.grid_n, "grid points across the window");
    invert->add_option("--eps", inv.eps_ladder, "decreasing epsilon ladder");
    invert->add_option("--out", inv.out_path, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : lsys::kExitParse;
    }

    if (eval->parsed()) {
        if (!resolve_source(eval, eval_measure, eval_model, job.source, job.path)) {
            return lsys::kExitParse;
        }
        job.example_id = eval_example;
        job.ell = eval_ell;
        job.mu_angle = eval_mu_angle;
        job.rho = eval_rho;
        if (eval->count("--kappa") > 0) job.kappa = kappa_flag;
        if (!grid_bounds.empty()) {
            job.grid.re_min = grid_bounds[0];
            job.grid.re_max = grid_bounds[1];
            job.grid.im_min = grid_bounds[2];
            job.grid.im_max = grid_bounds[3];
            job.grid.n_re = static_cast<int>(grid_bounds[4]);
            job.grid.n_im = static_cast<int>(grid_bounds[5]);
        }
        return lsys::run_eval(job, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return lsys::run_verify(suite, std::cout, std::cerr);
    }
    if (model->parsed()) {
        return lsys::run_model(build, std::cout, std::cerr);
    }
    if (invert->parsed()) {
        if (!resolve_source(invert, inv_measure, inv_model, inv.source, inv.path)) {
            return lsys::kExitParse;
        }
        inv.example_id = inv_example;
        inv.ell = inv_ell;
        inv.mu_angle = inv_mu_angle;
        inv.rho = inv_rho;
        if (!window.empty()) {
            inv.window_lo = window[0];
            inv.window_hi = window[1];
        }
        return lsys::run_invert(inv, std::cout, std::cerr);
    }
    return lsys::kExitParse;
}
