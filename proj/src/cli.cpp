#include "lsys/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "lsys/calculus.hpp"
#include "lsys/donoghue.hpp"
#include "lsys/interval_operator.hpp"
#include "lsys/io.hpp"
#include "lsys/model.hpp"
#include "lsys/stieltjes.hpp"
#include "lsys/verify.hpp"

namespace lsys {

namespace {

AnalyticFn role_function_for_measure(const MeasureSpec& measure, const std::string& role,
                                     std::optional<double> kappa_flag) {
    const AnalyticFn M = AnalyticFn::weyl_of_measure(measure);
    if (role == "weyl") return M;
    if (role == "impedance") {
        // The model system built over this measure has V = M.
        return AnalyticFn(FnRole::Impedance, [M](Complex z) { return M(z); });
    }
    const AnalyticFn s = livsic_from_weyl(M);
    if (role == "livsic") return s;

    double kappa = 0.0;
    if (kappa_flag) {
        kappa = *kappa_flag;
    } else {
        // Implied parameter from the normalization integral.
        const double L = normalization(measure);
        if (!(L > 0.0 && L <= 1.0 + 1e-9)) {
            throw std::invalid_argument(
                "normalization outside (0, 1]: pass --kappa to pick the extension parameter");
        }
        kappa = std::max(0.0, (1.0 - L) / (1.0 + L));
    }
    const AnalyticFn S = char_from_livsic(s, VonNeumannKappa(kappa));
    if (role == "characteristic") return S;
    if (role == "transfer") return transfer_from_char(S, UnimodularFactor(Complex{1.0, 0.0}));
    throw std::invalid_argument("unknown role \"" + role + "\"");
}

AnalyticFn role_function_for_model(const DiscreteModel& model, const std::string& role) {
    if (role == "weyl") return model_weyl_fn(model);
    if (role == "impedance") return model_impedance_fn(model);
    if (role == "transfer") {
        return AnalyticFn(FnRole::Transfer,
                          [model](Complex z) { return model_transfer_resolvent_path(model, z); });
    }
    const AnalyticFn M0 =
        AnalyticFn(FnRole::Weyl, [model](Complex z) { return FnValue{model.weyl0(z), false}; });
    const AnalyticFn s = livsic_from_weyl(M0);
    if (role == "livsic") return s;
    if (role == "characteristic") return char_from_livsic(s, VonNeumannKappa(model.kappa()));
    throw std::invalid_argument("unknown role \"" + role + "\"");
}

AnalyticFn role_function_for_example(int id, double ell, double mu_angle, double rho,
                                     const std::string& role) {
    ExampleBundle bundle = [&] {
        switch (id) {
            case 1: return example1_functions(ell);
            case 2: return example2_functions(ell);
            case 3: return example3_functions(ell, std::polar(1.0, mu_angle));
            case 4: return example4_functions(ell, rho);
            default: throw std::invalid_argument("example id must be 1..4");
        }
    }();
    if (role == "transfer") return bundle.transfer;
    if (role == "impedance") return bundle.impedance;
    if (role == "livsic") {
        if (!bundle.livsic) throw std::invalid_argument("this example exposes no Livsic function");
        return *bundle.livsic;
    }
    if (role == "characteristic") {
        if (!bundle.characteristic) {
            throw std::invalid_argument("this example exposes no characteristic function");
        }
        return *bundle.characteristic;
    }
    if (role == "weyl") {
        if (!bundle.livsic) throw std::invalid_argument("this example exposes no Weyl function");
        return weyl_from_livsic(*bundle.livsic);
    }
    throw std::invalid_argument("unknown role \"" + role + "\"");
}

int write_output(const std::string& out_path, const std::string& payload, std::ostream& out,
                 std::ostream& err) {
    if (out_path.empty()) {
        out << payload;
        return kExitOk;
    }
    std::ofstream file(out_path);
    if (!file) {
        err << "error: cannot open " << out_path << " for writing\n";
        return kExitIo;
    }
    file << payload;
    if (!file) {
        err << "error: write failed for " << out_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int run_eval(const JobSpec& job, std::ostream& out, std::ostream& err) {
    AnalyticFn fn = AnalyticFn::constant(FnRole::Other, Complex{0.0, 0.0});
    try {
        switch (job.source) {
            case SourceKind::MeasureFile:
                fn = role_function_for_measure(load_measure(job.path), job.role, job.kappa);
                break;
            case SourceKind::ModelFile:
                fn = role_function_for_model(load_model(job.path), job.role);
                break;
            case SourceKind::Example:
                fn = role_function_for_example(job.example_id, job.ell, job.mu_angle, job.rho,
                                               job.role);
                break;
        }
        job.grid.validate();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }

    std::vector<GridRow> rows;
    int poles = 0;
    for (const Complex z : job.grid.points()) {
        GridRow row;
        row.z = z;
        const FnValue v = fn(z);
        row.f = v.value;
        row.pole = v.pole;
        poles += v.pole ? 1 : 0;
        rows.push_back(row);
    }

    const std::string payload = job.format == "json" ? rows_to_json(rows) : rows_to_csv(rows);
    const int wr = write_output(job.out_path, payload, out, err);
    if (wr != kExitOk) return wr;

    if (2 * poles > static_cast<int>(rows.size())) {
        err << "pole saturation: " << poles << " of " << rows.size()
            << " grid points are flagged poles\n";
        return kExitPoleSaturation;
    }
    return kExitOk;
}

int run_verify(const std::string& selector, std::ostream& out, std::ostream& err) {
    std::vector<SuiteReport> reports;
    try {
        reports = run_suites(selector);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }
    bool ok = true;
    for (const SuiteReport& r : reports) {
        print_report(r, out);
        ok = ok && r.ok();
    }
    out << (ok ? "verify: all suites passed\n" : "verify: FAILURES present\n");
    return ok ? kExitOk : kExitVerifyFailure;
}

int run_model(const ModelBuildSpec& spec, std::ostream& out, std::ostream& err) {
    MeasureSpec measure;
    try {
        measure = load_measure(spec.measure_path);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }

    double kappa = 0.0;
    try {
        kappa = VonNeumannKappa(spec.kappa).value();
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }

    const double L = normalization(measure);
    const double target = (1.0 - kappa) / (1.0 + kappa);
    if (std::abs(L - target) > 1e-6) {
        err << "normalization mismatch: measured " << format_real(L) << ", kappa = "
            << format_real(kappa) << " requires (1-k)/(1+k) = " << format_real(target) << "\n";
        return kExitNormalization;
    }

    try {
        const DiscreteModel model = build_model(measure, VonNeumannKappa(kappa), spec.n_nodes);
        return write_output(spec.out_path, model_to_json(model) + "\n", out, err);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }
}

int run_invert(const InvertSpec& spec, std::ostream& out, std::ostream& err) {
    AnalyticFn fn = AnalyticFn::constant(FnRole::Other, Complex{0.0, 0.0});
    try {
        switch (spec.source) {
            case SourceKind::MeasureFile:
                fn = AnalyticFn::weyl_of_measure(load_measure(spec.path));
                break;
            case SourceKind::ModelFile:
                fn = model_weyl_fn(load_model(spec.path));
                break;
            case SourceKind::Example:
                fn = role_function_for_example(spec.example_id, spec.ell, spec.mu_angle, spec.rho,
                                               "impedance");
                break;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        const StieltjesTable table =
            stieltjes_invert(fn, spec.window_lo, spec.window_hi, spec.eps_ladder, spec.grid_n);
        if (table.herglotz_violation) {
            err << "warning: negative imaginary parts encountered; input may not be Herglotz\n";
        }
        return write_output(spec.out_path, inversion_to_csv(table), out, err);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace lsys
