#include "lsys/donoghue.hpp"

#include <cmath>

namespace lsys {

ClassificationReport classify_impedance(const AnalyticFn& impedance, const GridSpec& grid, double tol) {
    if (impedance.role() != FnRole::Impedance && impedance.role() != FnRole::Weyl) {
        throw std::invalid_argument("classify_impedance expects an impedance- or weyl-role function");
    }
    const FnValue at_i = impedance(kI);
    if (at_i.pole) throw std::domain_error("impedance has a pole at z = i");

    ClassificationReport report;
    report.tol = tol;
    report.Q = at_i.value.real();
    report.L = at_i.value.imag();
    report.herglotz = herglotz_check(impedance, grid, tol);

    const bool q_small = std::abs(report.Q) <= tol;
    if (q_small && report.L > tol) {
        report.kappa_hat = std::max(0.0, (1.0 - report.L) / (1.0 + report.L));
        report.kappa_hat_valid = report.L <= 1.0 + tol;
    }
    report.in_donoghue = q_small && std::abs(report.L - 1.0) <= tol;
    report.in_generalized = q_small && report.kappa_hat_valid;
    return report;
}

QLPair ql_from_nu_kappa(UnimodularFactor nu, VonNeumannKappa kappa, double consistency_tol) {
    const Complex n = nu.value();
    const double k = kappa.value();
    if (std::abs(n + k) < 1e-12) throw std::invalid_argument("nu + kappa must be nonzero");

    const Complex L_c = (n - k * k * n) / ((n + k) * (1.0 + k * n));
    const Complex Q_c = kI * (n * (1.0 - L_c) - k * (1.0 + L_c)) / (n + k);
    QLPair out;
    out.L = L_c.real();
    out.Q = Q_c.real();
    out.imag_residual = std::max(std::abs(L_c.imag()), std::abs(Q_c.imag()));
    if (out.imag_residual > consistency_tol) {
        throw std::domain_error("Q/L algebra produced non-real values; invalid (nu, kappa) input");
    }
    return out;
}

AnalyticFn scale_between_classes(const AnalyticFn& v0, VonNeumannKappa kappa, const GridSpec& grid,
                                 double tol) {
    const ClassificationReport report = classify_impedance(v0, grid, tol);
    if (!report.in_donoghue) {
        throw std::invalid_argument("scale_between_classes requires a class-M input (Q = 0, L = 1)");
    }
    const double factor = (1.0 - kappa.value()) / (1.0 + kappa.value());
    AnalyticFn out(FnRole::Impedance, [v0, factor](Complex z) -> FnValue {
        const FnValue v = v0(z);
        if (v.pole) return v;
        return FnValue{factor * v.value, false};
    });
    return out.with_kappa(kappa.value());
}

DiscreteModel realize(const MeasureSpec& measure, VonNeumannKappa kappa, int n_nodes,
                      const QuadratureConfig& cfg) {
    return build_model(measure, kappa, n_nodes, cfg);
}

}  // namespace lsys
