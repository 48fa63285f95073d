#include "lsys/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "lsys/biextension.hpp"
#include "lsys/calculus.hpp"
#include "lsys/donoghue.hpp"
#include "lsys/interval_operator.hpp"

namespace lsys {

namespace {

CheckResult check(const std::string& name, double residual, double threshold,
                  const std::string& note = "") {
    CheckResult r{name, residual <= threshold ? CheckStatus::Pass : CheckStatus::Fail, residual,
                  threshold, note};
    return r;
}

GridSpec coarse_grid() {
    GridSpec g;
    g.n_re = 10;
    g.n_im = 10;
    return g;
}

// Closed-form comparison grid. The Moebius chain loses |e^{-i ell z}| * eps
// of absolute accuracy reconstructing a transfer function whose Livsic
// function degenerates to kappa at infinity, so pointwise 1e-12 checks cap
// the imaginary part at 3.
GridSpec pipeline_grid() {
    GridSpec g;
    g.im_max = 3.0;
    return g;
}

// Scalar reduction of the two-equation compatibility system for the operator
// parameter: treating X and conj(X) through real coordinates gives four real
// equations in (Re X, Im X), solved least-squares via normal equations.
Complex solve_parameter_system(double kappa, Complex U) {
    const Complex kt = std::conj(U) * kappa;
    const Complex ktc = std::conj(kt);
    struct Row {
        Complex coeff_conj;  // multiplies conj(X)
        Complex coeff_plain; // multiplies X
        Complex rhs;
    };
    const Row rows[2] = {
        {1.0 - ktc, kt * (kt - 1.0), kI * (kt - 1.0)},
        {ktc * (ktc - 1.0), 1.0 - kt, kI * (1.0 - ktc)},
    };
    double ata[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double atb[2] = {0.0, 0.0};
    for (const Row& row : rows) {
        // conj(X) = x - i y, X = x + i y:
        //   (a + b) x + i (b - a) y = rhs
        const Complex cx = row.coeff_conj + row.coeff_plain;
        const Complex cy = kI * (row.coeff_plain - row.coeff_conj);
        const double m[2][2] = {{cx.real(), cy.real()}, {cx.imag(), cy.imag()}};
        const double v[2] = {row.rhs.real(), row.rhs.imag()};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) ata[j][k] += m[i][j] * m[i][k];
            }
            for (int j = 0; j < 2; ++j) atb[j] += m[i][j] * v[i];
        }
    }
    const double det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
    const double x = (atb[0] * ata[1][1] - atb[1] * ata[0][1]) / det;
    const double y = (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det;
    const Complex X{x, y};
    return X * std::conj(U);  // X solves for H U
}

}  // namespace

MeasureSpec random_atom_measure(std::uint64_t seed, int n_atoms, double normalization_target) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> loc(-5.0, 5.0);
    std::uniform_real_distribution<double> wt(0.1, 1.0);
    std::vector<Atom> atoms;
    while (static_cast<int>(atoms.size()) < n_atoms) {
        const double l = loc(rng);
        bool clash = false;
        for (const Atom& a : atoms) clash = clash || std::abs(a.lambda - l) < 1e-3;
        if (!clash) atoms.push_back({l, wt(rng)});
    }
    double norm = 0.0;
    for (const Atom& a : atoms) norm += a.weight / (1.0 + a.lambda * a.lambda);
    for (Atom& a : atoms) a.weight *= normalization_target / norm;
    return MeasureSpec::from_atoms(std::move(atoms));
}

SuiteReport verify_reciprocity() {
    SuiteReport report{"reciprocity", {}};
    const GridSpec grid = coarse_grid();
    std::mt19937_64 seeds(20240901u);
    double worst = 0.0;
    int models = 0;
    for (double kappa : {0.0, 0.3, 0.7}) {
        for (int i = 0; i < 8; ++i) {
            const int n = 2 + static_cast<int>(seeds() % 9);  // 2..10 nodes
            const MeasureSpec mu =
                random_atom_measure(seeds(), n, (1.0 - kappa) / (1.0 + kappa));
            const DiscreteModel model = build_model(mu, VonNeumannKappa(kappa), n);
            worst = std::max(worst, cross_check(model, grid));
            models += 1;
        }
    }
    report.checks.push_back(check("transfer paths agree on " + std::to_string(models) +
                                      " random models (|W_resolvent - W_moebius|)",
                                  worst, 1e-10));

    // Negative control: a rotated transfer path must be caught at the size of
    // |e^{i pi/4} - 1|.
    const MeasureSpec mu = random_atom_measure(777u, 4, 1.0);
    const DiscreteModel model = build_model(mu, VonNeumannKappa(0.0), 4);
    const Complex z{0.4, 1.3};
    const Complex rotated = std::polar(1.0, std::acos(-1.0) / 4.0) *
                            model_transfer_resolvent_path(model, z).value;
    const double discrepancy = std::abs(rotated - model_transfer_mobius_path(model, z).value) /
                               std::abs(model_transfer_mobius_path(model, z).value);
    const double expected = std::abs(std::polar(1.0, std::acos(-1.0) / 4.0) - 1.0);
    report.checks.push_back(check("unimodular-factor injection is detected",
                                  std::abs(discrepancy - expected), 1e-9,
                                  "rotating one path by e^{i pi/4} shifts the match by |nu - 1|"));
    return report;
}

SuiteReport verify_cayley() {
    SuiteReport report{"cayley", {}};
    std::mt19937_64 rng(321u);
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(0.05, 8.0);
    std::uniform_real_distribution<double> kdist(0.0, 0.95);

    double worst_ms = 0.0, worst_ssk = 0.0, worst_wv = 0.0, worst_kappa = 0.0;
    for (int i = 0; i < 24; ++i) {
        const MeasureSpec mu = random_atom_measure(rng(), 3 + i % 5, 1.0);
        const AnalyticFn M = AnalyticFn::weyl_of_measure(mu);
        const AnalyticFn s = livsic_from_weyl(M);
        const AnalyticFn M2 = weyl_from_livsic(s);
        const double kappa = kdist(rng);
        const AnalyticFn S = char_from_livsic(s, VonNeumannKappa(kappa));
        const AnalyticFn s2 = livsic_from_char(S, VonNeumannKappa(kappa));
        const AnalyticFn W = transfer_from_char(S, UnimodularFactor(Complex{1.0, 0.0}));
        const AnalyticFn V = impedance_from_transfer(W);
        const AnalyticFn W2 = transfer_from_impedance(V);
        for (int p = 0; p < 24; ++p) {
            const Complex z{re(rng), im(rng)};
            const FnValue m = M(z), m2 = M2(z);
            if (!m.pole && !m2.pole) worst_ms = std::max(worst_ms, std::abs(m.value - m2.value));
            const FnValue sv = s(z), sv2 = s2(z);
            if (!sv.pole && !sv2.pole) worst_ssk = std::max(worst_ssk, std::abs(sv.value - sv2.value));
            const FnValue wv = W(z), wv2 = W2(z);
            if (!wv.pole && !wv2.pole) worst_wv = std::max(worst_wv, std::abs(wv.value - wv2.value));
        }
        const KappaExtraction ke = kappa_from_char(S);
        worst_kappa = std::max(worst_kappa, std::abs(ke.kappa.value() - kappa));
    }
    report.checks.push_back(check("M -> s -> M round trip", worst_ms, 1e-12));
    report.checks.push_back(check("s -> S -> s round trip", worst_ssk, 1e-12));
    report.checks.push_back(check("W -> V -> W round trip", worst_wv, 1e-12));
    report.checks.push_back(check("kappa recovered from S(i)", worst_kappa, 1e-12));

    // V = M when kappa = 0 and nu = 1.
    double worst_vm = 0.0;
    const MeasureSpec mu = random_atom_measure(99u, 5, 1.0);
    const AnalyticFn M = AnalyticFn::weyl_of_measure(mu);
    const AnalyticFn V = impedance_from_transfer(
        transfer_from_char(char_from_livsic(livsic_from_weyl(M), VonNeumannKappa(0.0)),
                           UnimodularFactor(Complex{1.0, 0.0})));
    for (const Complex z : coarse_grid().points()) {
        const FnValue v = V(z), m = M(z);
        if (!v.pole && !m.pole) worst_vm = std::max(worst_vm, std::abs(v.value - m.value));
    }
    report.checks.push_back(check("impedance equals Weyl function for kappa = 0", worst_vm, 1e-10));
    return report;
}

SuiteReport verify_donoghue() {
    SuiteReport report{"donoghue", {}};
    const double pi = std::acos(-1.0);

    // Closed normalization at nu = 1 for the kappa sweep.
    double worst_nu1 = 0.0;
    for (int k10 = 0; k10 <= 9; ++k10) {
        const double kappa = k10 / 10.0;
        const QLPair ql = ql_from_nu_kappa(UnimodularFactor(Complex{1.0, 0.0}), VonNeumannKappa(kappa));
        worst_nu1 = std::max({worst_nu1, std::abs(ql.Q),
                              std::abs(ql.L - (1.0 - kappa) / (1.0 + kappa))});
    }
    report.checks.push_back(check("(nu=1, kappa) gives Q = 0, L = (1-k)/(1+k)", worst_nu1, 1e-14));

    // Membership sweep over 64 unimodular nu x 10 kappa values. The cited
    // algebra makes (Q, L) = (0, 1) for every nu once kappa = 0 (the L
    // formula collapses to nu/nu), so the membership set is the kappa = 0
    // row; for kappa != 0, Q = 0 additionally forces nu = 1.
    bool kappa_row_ok = true;       // kappa != 0 never reaches (0,1)
    bool zero_row_ok = true;        // kappa = 0 always reaches (0,1)
    bool q_zero_forces_nu1 = true;  // kappa != 0 and Q = 0 happens only at nu = 1
    for (int a = 0; a < 64; ++a) {
        const Complex nu = std::polar(1.0, 2.0 * pi * a / 64.0);
        for (int k10 = 0; k10 <= 9; ++k10) {
            const double kappa = k10 / 10.0;
            if (std::abs(nu + kappa) < 1e-9) continue;
            const QLPair ql = ql_from_nu_kappa(UnimodularFactor(nu), VonNeumannKappa(kappa));
            const bool member = std::abs(ql.Q) <= 1e-12 && std::abs(ql.L - 1.0) <= 1e-12;
            if (k10 == 0 && !member) zero_row_ok = false;
            if (k10 != 0 && member) kappa_row_ok = false;
            if (k10 != 0 && a != 0 && std::abs(ql.Q) <= 1e-12) q_zero_forces_nu1 = false;
        }
    }
    report.checks.push_back(check("no (Q,L) = (0,1) for kappa != 0 over the 64 x 10 sweep",
                                  kappa_row_ok ? 0.0 : 1.0, 0.5));
    report.checks.push_back(check("kappa != 0 with Q = 0 happens only at nu = 1",
                                  q_zero_forces_nu1 ? 0.0 : 1.0, 0.5));
    // Documented discrepancy: the membership set is the whole kappa = 0 row,
    // not the single point (nu, kappa) = (1, 0); at kappa = 0 the L formula
    // cancels nu exactly.
    report.checks.push_back(CheckResult{
        "(Q,L) = (0,1) only at nu = 1 within the kappa = 0 row",
        zero_row_ok ? CheckStatus::XFail : CheckStatus::Fail, zero_row_ok ? 1.0 : 0.0, 0.0,
        "measured: every unimodular nu gives (0,1) at kappa = 0"});

    // Scaling between classes.
    const ExampleBundle e2 = example2_functions(1.0);
    const ExampleBundle e1 = example1_functions(1.0);
    const AnalyticFn scaled = scale_between_classes(e2.impedance, VonNeumannKappa(e1.kappa));
    double worst_scale = 0.0;
    for (const Complex z : coarse_grid().points()) {
        const FnValue a = scaled(z), b = e1.impedance(z);
        if (!a.pole && !b.pole) worst_scale = std::max(worst_scale, std::abs(a.value - b.value));
    }
    report.checks.push_back(check("class scaling maps one interval system onto the other",
                                  worst_scale, 1e-12));

    // realize -> classify round trip.
    double worst_rt = 0.0;
    for (double kappa : {0.0, 0.25, 0.5, 0.8}) {
        const MeasureSpec mu = random_atom_measure(1234u + static_cast<int>(kappa * 100), 6,
                                                   (1.0 - kappa) / (1.0 + kappa));
        const DiscreteModel model = realize(mu, VonNeumannKappa(kappa), 6);
        const ClassificationReport cls = classify_impedance(model_impedance_fn(model), coarse_grid());
        worst_rt = std::max(worst_rt, std::abs(cls.kappa_hat - kappa));
    }
    report.checks.push_back(check("realize/classify round trip recovers kappa", worst_rt, 1e-8));
    return report;
}

SuiteReport verify_biextension() {
    SuiteReport report{"biextension", {}};
    double worst_ones = 0.0, worst_h = 0.0, worst_sys = 0.0;
    for (int k10 = 0; k10 <= 9; ++k10) {
        const double kappa = k10 / 10.0;
        const QuasiKernelPhase trivial(0.0);
        const Complex H = h_parameter(VonNeumannKappa(kappa), trivial);
        worst_h = std::max(worst_h, std::abs(H - kI / (1.0 + kappa)));
        const auto [sa, sas] = s_matrices(VonNeumannKappa(kappa), H);
        const ChannelInfo info = imaginary_part_channel(sa, sas);
        worst_ones =
            std::max(worst_ones, std::abs(info.coefficient - (1.0 - kappa) / (2.0 + 2.0 * kappa)));
    }
    report.checks.push_back(check("rank-one channel coefficient equals (1-k)/(2+2k)", worst_ones, 1e-14));
    report.checks.push_back(check("H(kappa, U=1) = i/(1+kappa)", worst_h, 1e-14));

    const double pi = std::acos(-1.0);
    for (double kappa : {0.0, 0.3, 0.5, 0.8}) {
        for (double beta : {0.0, 0.4, pi / 2.0, 2.4}) {
            const QuasiKernelPhase phase(beta);
            const Complex closed = h_parameter(VonNeumannKappa(kappa), phase);
            const Complex brute = solve_parameter_system(kappa, phase.u());
            worst_sys = std::max(worst_sys, std::abs(closed - brute));
        }
    }
    report.checks.push_back(
        check("closed-form H solves the compatibility system (brute-force oracle)", worst_sys, 1e-12));
    return report;
}

SuiteReport verify_examples() {
    SuiteReport report{"examples", {}};
    const double ell = 1.0;
    const GridSpec grid = pipeline_grid();

    // Pipeline agreement: transforms of s reproduce S, W, V for bundles 1, 2, 4.
    double worst_pipeline = 0.0;
    for (const ExampleBundle& bundle :
         {example1_functions(ell), example2_functions(ell), example4_functions(ell, -2.0)}) {
        const AnalyticFn S = char_from_livsic(*bundle.livsic, VonNeumannKappa(bundle.kappa));
        const AnalyticFn W = transfer_from_char(S, UnimodularFactor(Complex{1.0, 0.0}));
        const AnalyticFn V = impedance_from_transfer(W);
        for (const Complex z : grid.points()) {
            const FnValue sv = S(z), sb = (*bundle.characteristic)(z);
            if (!sv.pole && !sb.pole) {
                worst_pipeline = std::max(worst_pipeline, std::abs(sv.value - sb.value));
            }
            const FnValue wv = W(z), wb = bundle.transfer(z);
            if (!wv.pole && !wb.pole) {
                worst_pipeline = std::max(worst_pipeline, std::abs(wv.value - wb.value));
            }
            const FnValue vv = V(z), vb = bundle.impedance(z);
            if (!vv.pole && !vb.pole) {
                worst_pipeline = std::max(worst_pipeline, std::abs(vv.value - vb.value));
            }
        }
    }
    report.checks.push_back(check("Moebius pipeline reproduces closed forms", worst_pipeline, 1e-12));

    // W S = 1 for bundles 1 and 4; W = -1/s for bundle 2.
    double worst_recip = 0.0;
    for (const Complex z : grid.points()) {
        const ExampleBundle b1 = example1_functions(ell);
        const FnValue w1 = b1.transfer(z), s1 = (*b1.characteristic)(z);
        if (!w1.pole && !s1.pole) {
            worst_recip = std::max(worst_recip, std::abs(w1.value * s1.value - 1.0));
        }
        const ExampleBundle b4 = example4_functions(ell, -2.0);
        const FnValue w4 = b4.transfer(z), s4 = (*b4.characteristic)(z);
        if (!w4.pole && !s4.pole) {
            worst_recip = std::max(worst_recip, std::abs(w4.value * s4.value - 1.0));
        }
        const ExampleBundle b2 = example2_functions(ell);
        const FnValue w2 = b2.transfer(z), sv = (*b2.livsic)(z);
        if (!w2.pole && !sv.pole) {
            worst_recip = std::max(worst_recip, std::abs(w2.value * sv.value + 1.0));
        }
    }
    report.checks.push_back(check("transfer/characteristic reciprocity on closed forms",
                                  worst_recip, 1e-12));

    // Normalization values at z = i.
    double worst_vi = 0.0;
    {
        const ExampleBundle b1 = example1_functions(ell);
        worst_vi = std::max(worst_vi, std::abs(b1.impedance(kI).value -
                                               kI * (1.0 - b1.kappa) / (1.0 + b1.kappa)));
        const ExampleBundle b2 = example2_functions(ell);
        worst_vi = std::max(worst_vi, std::abs(b2.impedance(kI).value - kI));
        for (int a = 0; a < 8; ++a) {
            const Complex mu = std::polar(1.0, 2.0 * std::acos(-1.0) * a / 8.0);
            if (std::abs(mu * std::exp(ell) + 1.0) < 1e-9) continue;
            const ExampleBundle b3 = example3_functions(ell, mu);
            worst_vi = std::max(worst_vi, std::abs(b3.impedance(kI).value - kI));
        }
        const ExampleBundle b4 = example4_functions(ell, -2.0);
        worst_vi = std::max(worst_vi, std::abs(b4.impedance(kI).value -
                                               kI * (1.0 - b4.kappa) / (1.0 + b4.kappa)));
    }
    report.checks.push_back(check("impedance normalization V(i) across all families", worst_vi, 1e-12));

    // Documented discrepancy: the displayed phase-family formulas at mu = -1
    // give the negative of the second family's transfer function, while the
    // text asserts the two systems coincide. Encoded as it is displayed; the
    // coincidence claim is an expected failure.
    {
        const ExampleBundle b3 = example3_functions(ell, Complex{-1.0, 0.0});
        const ExampleBundle b2 = example2_functions(ell);
        double worst_ratio = 0.0;
        double worst_match = 0.0;
        for (const Complex z : grid.points()) {
            const FnValue w3 = b3.transfer(z), w2 = b2.transfer(z);
            if (w3.pole || w2.pole) continue;
            worst_ratio = std::max(worst_ratio, std::abs(w3.value / w2.value + 1.0));
            worst_match = std::max(worst_match, std::abs(w3.value - w2.value));
        }
        report.checks.push_back(
            check("mu = -1 transfer ratio against family 2 is exactly -1", worst_ratio, 1e-12));
        CheckResult xfail{"mu = -1 system coincides with family 2 (text claim)",
                          worst_match <= 1e-12 ? CheckStatus::Pass : CheckStatus::XFail, worst_match,
                          1e-12,
                          "displayed formulas give W_3 = -W_2; recorded, not reinterpreted"};
        report.checks.push_back(xfail);
    }
    return report;
}

std::vector<SuiteReport> verify_all() {
    return {verify_reciprocity(), verify_cayley(), verify_donoghue(), verify_biextension(),
            verify_examples()};
}

std::vector<SuiteReport> run_suites(const std::string& selector) {
    if (selector == "all" || selector.empty()) return verify_all();
    if (selector == "reciprocity") return {verify_reciprocity()};
    if (selector == "cayley") return {verify_cayley()};
    if (selector == "donoghue") return {verify_donoghue()};
    if (selector == "biextension") return {verify_biextension()};
    if (selector == "examples") return {verify_examples()};
    throw std::invalid_argument("unknown suite \"" + selector +
                                "\" (use reciprocity, cayley, donoghue, biextension, examples, all)");
}

void print_report(const SuiteReport& report, std::ostream& os) {
    os << "suite " << report.suite << "\n";
    for (const CheckResult& c : report.checks) {
        const char* tag = c.status == CheckStatus::Pass   ? "PASS "
                          : c.status == CheckStatus::XFail ? "XFAIL"
                                                           : "FAIL ";
        os << "  [" << tag << "] " << c.name << "  (residual " << c.residual << ", threshold "
           << c.threshold << ")";
        if (!c.note.empty()) os << "  -- " << c.note;
        os << "\n";
    }
}

}  // namespace lsys
