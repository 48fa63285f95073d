#include "lsys/interval_operator.hpp"

#include <cmath>
#include <limits>

namespace lsys {

namespace {

constexpr double kPoleRadius = 1e-12;

Complex phase_factor(double ell, Complex z) { return std::exp(-kI * ell * z); }

FnValue guarded_ratio(Complex num, Complex den, double scale) {
    if (std::abs(den) <= kPoleRadius * scale) return FnValue::at_pole();
    return FnValue{num / den, false};
}

AnalyticFn livsic_e1(double ell) {
    const double el = std::exp(ell);
    return AnalyticFn(FnRole::Livsic, [ell, el](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        return guarded_ratio(el - E, 1.0 - el * E, 1.0 + el * std::abs(E));
    });
}

// Boundary constant of the dissipative extension; infinity encodes x(0) = 0.
double boundary_constant(const IntervalOperatorParams& p, ResolventVariant variant) {
    switch (p.variant) {
        case BoundaryVariant::DirichletT:
            return variant == ResolventVariant::Main ? std::numeric_limits<double>::infinity() : 0.0;
        case BoundaryVariant::ExpT0:
        case BoundaryVariant::PhaseFamily:
            return variant == ResolventVariant::Main ? std::exp(p.ell) : std::exp(-p.ell);
        case BoundaryVariant::RhoFamily:
            return variant == ResolventVariant::Main ? p.rho : 1.0 / p.rho;
    }
    throw std::logic_error("unreachable variant");
}

// Cumulative integral of g on a uniform grid by left/right-biased quadratic
// panels: O(h^4) local error, no even/odd sawtooth.
std::vector<Complex> cumulative_quadratic(const std::vector<Complex>& g, double h) {
    const std::size_t n = g.size();
    std::vector<Complex> c(n, Complex{0.0, 0.0});
    if (n < 2) return c;
    if (n == 2) {
        c[1] = 0.5 * h * (g[0] + g[1]);
        return c;
    }
    for (std::size_t k = 1; k < n; ++k) {
        Complex panel;
        if (k + 1 < n) {
            panel = h / 12.0 * (5.0 * g[k - 1] + 8.0 * g[k] - g[k + 1]);
        } else {
            panel = h / 12.0 * (-g[k - 2] + 8.0 * g[k - 1] + 5.0 * g[k]);
        }
        c[k] = c[k - 1] + panel;
    }
    return c;
}

}  // namespace

void IntervalOperatorParams::validate() const {
    if (!(ell > 0.0)) throw std::invalid_argument("interval length must be positive");
    switch (variant) {
        case BoundaryVariant::PhaseFamily:
            if (std::abs(std::abs(mu) - 1.0) > 1e-12) {
                throw std::invalid_argument("phase family requires |mu| = 1");
            }
            break;
        case BoundaryVariant::RhoFamily: {
            const double el = std::exp(ell);
            if (!(rho < -1.0 || rho >= el)) {
                throw std::invalid_argument(
                    "rho must lie in (-inf, -1) or [e^ell, +inf) for a dissipative extension with "
                    "0 <= kappa < 1");
            }
            break;
        }
        default:
            break;
    }
}

ExampleBundle example1_functions(double ell) {
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    const double kappa = std::exp(-ell);

    AnalyticFn S(FnRole::Characteristic,
                 [ell](Complex z) -> FnValue { return FnValue{std::exp(kI * ell * z), false}; });
    AnalyticFn W(FnRole::Transfer,
                 [ell](Complex z) -> FnValue { return FnValue{phase_factor(ell, z), false}; });
    AnalyticFn V(FnRole::Impedance, [ell](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        const FnValue r = guarded_ratio(E - 1.0, E + 1.0, 1.0 + std::abs(E));
        return r.pole ? r : FnValue{kI * r.value, false};
    });

    ExampleBundle bundle{kappa,
                         livsic_e1(ell).with_kappa(kappa),
                         S.with_kappa(kappa),
                         W.with_kappa(kappa).with_unimodular_factor(Complex{1.0, 0.0}),
                         V.with_kappa(kappa),
                         std::nullopt,
                         std::nullopt,
                         std::nullopt};
    return bundle;
}

ExampleBundle example2_functions(double ell) {
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    const double el = std::exp(ell);

    AnalyticFn s = livsic_e1(ell);
    AnalyticFn S(FnRole::Characteristic, [s](Complex z) -> FnValue {
        const FnValue v = s(z);
        return v.pole ? v : FnValue{-v.value, false};
    });
    AnalyticFn W(FnRole::Transfer, [ell, el](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        return guarded_ratio(el * E - 1.0, el - E, el + std::abs(E));
    });
    AnalyticFn V(FnRole::Impedance, [ell, el](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        const FnValue r = guarded_ratio(E - 1.0, E + 1.0, 1.0 + std::abs(E));
        return r.pole ? r : FnValue{kI * (el + 1.0) / (el - 1.0) * r.value, false};
    });

    return ExampleBundle{0.0,
                         s.with_kappa(0.0),
                         S.with_kappa(0.0),
                         W.with_kappa(0.0).with_unimodular_factor(Complex{1.0, 0.0}),
                         V.with_kappa(0.0),
                         std::nullopt,
                         std::nullopt,
                         std::nullopt};
}

ExampleBundle example3_functions(double ell, Complex mu) {
    IntervalOperatorParams params{ell, BoundaryVariant::PhaseFamily, mu, 0.0};
    params.validate();
    const double el = std::exp(ell);
    const double eml = std::exp(-ell);

    const Complex u_den = mu + el;
    if (std::abs(u_den) <= kPoleRadius * el) {
        throw std::invalid_argument("mu = -e^ell degenerates the quasi-kernel parameter");
    }
    const Complex U = -(1.0 + mu * el) / u_den;
    const double beta = QuasiKernelPhase::from_u(U).beta();
    const Complex nu =
        (2.0 * mu * eml + eml * eml + 1.0) / (mu + 2.0 * eml + mu * eml * eml);
    if (std::abs(std::abs(nu) - 1.0) > 1e-12) {
        throw std::domain_error("quasi-kernel boundary parameter failed |nu| = 1");
    }

    const Complex prefactor_num = el + mu;
    const Complex prefactor_den = mu * el + 1.0;
    const bool degenerate = std::abs(prefactor_den) <= kPoleRadius * el;
    if (degenerate) {
        throw std::invalid_argument("mu e^ell = -1 degenerates the transfer prefactor");
    }
    const Complex prefactor = prefactor_num / prefactor_den;

    AnalyticFn W(FnRole::Transfer, [ell, el, prefactor](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        const FnValue r = guarded_ratio(el * E - 1.0, el - E, el + std::abs(E));
        return r.pole ? r : FnValue{prefactor * r.value, false};
    });
    const Complex mu_bar = std::conj(mu);
    const double e2l = std::exp(2.0 * ell);
    AnalyticFn V(FnRole::Impedance, [ell, el, e2l, mu_bar](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        const Complex num = (mu_bar * E - 1.0) * (e2l + 1.0) + 2.0 * el * E - 2.0 * mu_bar * el;
        const Complex den = (mu_bar * E + 1.0) * (e2l - 1.0);
        const FnValue r = guarded_ratio(num, den, (1.0 + std::abs(E)) * (e2l - 1.0));
        return r.pole ? r : FnValue{kI * r.value, false};
    });

    return ExampleBundle{0.0,
                         std::nullopt,
                         std::nullopt,
                         W.with_kappa(0.0),
                         V.with_kappa(0.0),
                         U,
                         beta,
                         nu};
}

ExampleBundle example4_functions(double ell, double rho) {
    IntervalOperatorParams params{ell, BoundaryVariant::RhoFamily, Complex{1.0, 0.0}, rho};
    params.validate();
    const double el = std::exp(ell);
    const double kappa = (rho - el) / (rho * el - 1.0);

    AnalyticFn W(FnRole::Transfer, [ell, rho](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        return guarded_ratio(rho * E - 1.0, rho - E, std::abs(rho) + std::abs(E));
    });
    AnalyticFn V(FnRole::Impedance, [ell, rho](Complex z) -> FnValue {
        const Complex E = phase_factor(ell, z);
        const FnValue r = guarded_ratio(E - 1.0, E + 1.0, 1.0 + std::abs(E));
        return r.pole ? r : FnValue{kI * (rho + 1.0) / (rho - 1.0) * r.value, false};
    });

    AnalyticFn s = livsic_e1(ell);
    AnalyticFn S(FnRole::Characteristic, [s, kappa](Complex z) -> FnValue {
        const FnValue v = s(z);
        if (v.pole) return kappa == 0.0 ? FnValue::at_pole() : FnValue{Complex{1.0 / kappa, 0.0}, false};
        const Complex den = kappa * v.value - 1.0;
        if (std::abs(den) <= kPoleRadius * (1.0 + std::abs(v.value))) return FnValue::at_pole();
        return FnValue{(v.value - kappa) / den, false};
    });

    return ExampleBundle{kappa,
                         s.with_kappa(kappa),
                         S.with_kappa(kappa),
                         W.with_kappa(kappa).with_unimodular_factor(Complex{1.0, 0.0}),
                         V.with_kappa(kappa),
                         std::nullopt,
                         std::nullopt,
                         std::nullopt};
}

ExampleBundle example_functions(const IntervalOperatorParams& params) {
    params.validate();
    switch (params.variant) {
        case BoundaryVariant::DirichletT: return example1_functions(params.ell);
        case BoundaryVariant::ExpT0: return example2_functions(params.ell);
        case BoundaryVariant::PhaseFamily: return example3_functions(params.ell, params.mu);
        case BoundaryVariant::RhoFamily: return example4_functions(params.ell, params.rho);
    }
    throw std::logic_error("unreachable variant");
}

SampledFunction resolvent_apply(const IntervalOperatorParams& params, ResolventVariant variant,
                                Complex z, const SampledFunction& f) {
    params.validate();
    if (!(z.imag() > 0.0)) throw std::invalid_argument("resolvent evaluation requires Im z > 0");
    if (f.values.size() < 3) throw std::invalid_argument("need at least 3 samples");
    if (std::abs(f.a) > 1e-14 || std::abs(f.b - params.ell) > 1e-12) {
        throw std::invalid_argument("samples must cover [0, ell]");
    }

    const std::size_t n = f.values.size();
    const double h = f.step();
    const Complex E = phase_factor(params.ell, z);

    std::vector<Complex> g(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = f.a + h * static_cast<double>(k);
        g[k] = f.values[k] * std::exp(kI * z * t);
    }
    const std::vector<Complex> cum = cumulative_quadratic(g, h);

    const double c = boundary_constant(params, variant);
    Complex tail{0.0, 0.0};
    if (!std::isinf(c)) {
        const Complex den = c - E;
        if (std::abs(den) <= kPoleRadius * (1.0 + std::abs(c))) {
            throw std::domain_error("boundary denominator vanishes: z is a pole of this resolvent");
        }
        tail = E / den * cum.back();
    }

    SampledFunction out;
    out.a = f.a;
    out.b = f.b;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = f.a + h * static_cast<double>(k);
        out.values[k] = -kI * std::exp(-kI * z * t) * (cum[k] + tail);
    }
    return out;
}

double resolvent_ode_residual(const SampledFunction& rf, const SampledFunction& f, Complex z) {
    const std::size_t n = rf.values.size();
    if (n != f.values.size() || n < 3) throw std::invalid_argument("incompatible sample grids");
    const double h = rf.step();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Complex d;
        if (k == 0) {
            d = (-3.0 * rf.values[0] + 4.0 * rf.values[1] - rf.values[2]) / (2.0 * h);
        } else if (k + 1 == n) {
            d = (3.0 * rf.values[n - 1] - 4.0 * rf.values[n - 2] + rf.values[n - 3]) / (2.0 * h);
        } else {
            d = (rf.values[k + 1] - rf.values[k - 1]) / (2.0 * h);
        }
        const Complex r = kI * d - z * rf.values[k] - f.values[k];
        const double trapezoid = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += trapezoid * std::norm(r);
    }
    return std::sqrt(h * acc);
}

FnValue transfer_via_resolvent(const IntervalOperatorParams& params, Complex z) {
    params.validate();
    if (!(z.imag() > 0.0)) throw std::invalid_argument("transfer evaluation requires Im z > 0");
    const Complex E = phase_factor(params.ell, z);

    if (params.variant == BoundaryVariant::DirichletT) {
        // Extended-resolvent values on the two boundary functionals:
        // delta_0 maps to -i e^{-izt}, delta_ell to 0; channel (d0 - dl)/sqrt(2).
        const Complex r0 = -kI;  // coefficient of e^{-izt}
        const Complex rl{0.0, 0.0};
        const Complex rchi = (r0 - rl) / std::sqrt(2.0);
        // pairing with the channel evaluates the coefficient at t = 0 and t = ell
        const Complex pairing = rchi * (1.0 - E) / std::sqrt(2.0);
        return FnValue{1.0 - 2.0 * kI * pairing, false};
    }

    double c = 0.0;
    switch (params.variant) {
        case BoundaryVariant::ExpT0: c = std::exp(params.ell); break;
        case BoundaryVariant::RhoFamily: c = params.rho; break;
        default:
            throw std::invalid_argument(
                "transfer_via_resolvent requires the [delta(t-ell) - delta(t)] channel "
                "(dirichlet_T, exp_T0 or rho_family)");
    }
    const Complex den = E - c;
    if (std::abs(den) <= kPoleRadius * (1.0 + std::abs(c))) return FnValue::at_pole();

    // Extended-resolvent values: delta_0 -> i c/(E - c) e^{-izt},
    // delta_ell -> i/(E - c) e^{-izt}; channel sqrt((c+1)/(2(c-1))) (dl - d0).
    const double q2 = (c + 1.0) / (2.0 * (c - 1.0));
    const Complex rchi_coeff = kI * (1.0 - c) / den;  // coefficient on e^{-izt}, channel scale aside
    const Complex pairing = q2 * rchi_coeff * (E - 1.0);
    return FnValue{1.0 - 2.0 * kI * pairing, false};
}

}  // namespace lsys
