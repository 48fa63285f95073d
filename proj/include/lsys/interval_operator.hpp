#pragma once

#include <optional>
#include <vector>

#include "lsys/analytic_fn.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Closed-form corpus for the first-order differential operator i d/dt on
// [0, ell]. Dissipative extensions are cut out by a boundary condition
// x(ell) = c x(0); the four families below fix c (and with it the von Neumann
// parameter) in different ways:
//
//   DirichletT   x(0) = 0                (c = infinity, kappa = e^{-ell})
//   ExpT0        x(ell) = e^{ell} x(0)   (kappa = 0)
//   PhaseFamily  main operator of ExpT0 with a rotated reference extension,
//                parameterized by a unimodular mu
//   RhoFamily    x(ell) = rho x(0) with real rho, kappa = (rho-e^l)/(rho e^l-1)
//
// Every family's Livsic/characteristic/transfer/impedance functions are
// elementary in E(z) = e^{-i ell z}.
// ---------------------------------------------------------------------------

enum class BoundaryVariant { DirichletT, ExpT0, PhaseFamily, RhoFamily };

struct IntervalOperatorParams {
    double ell = 1.0;
    BoundaryVariant variant = BoundaryVariant::DirichletT;
    Complex mu{1.0, 0.0};  // PhaseFamily only, |mu| = 1
    double rho = 0.0;      // RhoFamily only

    void validate() const;
};

struct ExampleBundle {
    double kappa = 0.0;
    std::optional<AnalyticFn> livsic;
    std::optional<AnalyticFn> characteristic;
    AnalyticFn transfer;
    AnalyticFn impedance;
    // PhaseFamily extras
    std::optional<Complex> U;       // quasi-kernel parameter, e^{2 i beta}
    std::optional<double> beta;     // in [0, pi)
    std::optional<Complex> nu;      // boundary parameter of the quasi-kernel
};

ExampleBundle example1_functions(double ell);
ExampleBundle example2_functions(double ell);
ExampleBundle example3_functions(double ell, Complex mu);
ExampleBundle example4_functions(double ell, double rho);

ExampleBundle example_functions(const IntervalOperatorParams& params);

// ---------------------------------------------------------------------------
// Resolvents. For boundary x(ell) = c x(0) and Im z > 0,
//   (T - z)^{-1} f (t) = -i e^{-izt} [ C(t) + E/(c - E) * C(ell) ],
// with C(t) = int_0^t f(s) e^{izs} ds and E = e^{-i ell z}. The adjoint
// variant uses the reciprocal boundary constant. Quadrature is a composite
// Simpson-family rule on the uniform sample grid.
// ---------------------------------------------------------------------------

enum class ResolventVariant { Main, Adjoint };

struct SampledFunction {
    double a = 0.0;
    double b = 1.0;
    std::vector<Complex> values;  // uniform samples including both endpoints

    double step() const { return (b - a) / static_cast<double>(values.size() - 1); }
};

/// Applies the resolvent kernel by quadrature; flags the boundary pole
/// (c = E(z)) as a domain_error carrying the offending denominator.
SampledFunction resolvent_apply(const IntervalOperatorParams& params, ResolventVariant variant,
                                Complex z, const SampledFunction& f);

/// L^2 norm of i (Rf)' - z Rf - f over the sample grid (finite differences);
/// second-order accurate in the grid spacing.
double resolvent_ode_residual(const SampledFunction& rf, const SampledFunction& f, Complex z);

/// Transfer function recomputed through the extended-resolvent values on the
/// boundary functionals (never through the Moebius chain). Defined for the
/// DirichletT, ExpT0 and RhoFamily channels.
FnValue transfer_via_resolvent(const IntervalOperatorParams& params, Complex z);

}  // namespace lsys
