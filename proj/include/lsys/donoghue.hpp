#pragma once

#include "lsys/analytic_fn.hpp"
#include "lsys/calculus.hpp"
#include "lsys/measure.hpp"
#include "lsys/model.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Donoghue-class membership. An impedance function with representation
// V(z) = Q + int k_z dmu has V(i) = Q + i L where L is the normalization
// integral of mu. Membership in the class M requires (Q, L) = (0, 1); the
// generalized class M_kappa relaxes the normalization to
// L = (1 - kappa)/(1 + kappa).
// ---------------------------------------------------------------------------

struct ClassificationReport {
    double Q = 0.0;          // Re V(i)
    double L = 0.0;          // Im V(i)
    double kappa_hat = 0.0;  // implied von Neumann parameter, (1 - L)/(1 + L)
    bool kappa_hat_valid = false;
    bool in_donoghue = false;          // class M
    bool in_generalized = false;       // class M_{kappa_hat}
    HerglotzReport herglotz;
    double tol = 0.0;
};

/// Default tolerances for the two error regimes: closed-form inputs and
/// quadrature-backed inputs.
inline constexpr double kClassTolExact = 1e-9;
inline constexpr double kClassTolQuadrature = 1e-6;

ClassificationReport classify_impedance(const AnalyticFn& impedance, const GridSpec& grid,
                                        double tol = kClassTolExact);

/// The (nu, kappa) -> (Q, L) algebra of the transfer-factor analysis:
///   L = (nu - kappa^2 nu) / ((nu + kappa)(1 + kappa nu)),
///   Q = i (nu (1 - L) - kappa (1 + L)) / (nu + kappa).
/// Both come out real for unimodular nu; the imaginary residuals are checked
/// against `consistency_tol` and returned for inspection.
struct QLPair {
    double Q = 0.0;
    double L = 0.0;
    double imag_residual = 0.0;
};

QLPair ql_from_nu_kappa(UnimodularFactor nu, VonNeumannKappa kappa,
                          double consistency_tol = 1e-12);

/// Multiplies a class-M impedance by (1 - kappa)/(1 + kappa), landing it in
/// M_kappa. The precondition (membership of the input in M) is verified.
AnalyticFn scale_between_classes(const AnalyticFn& v0, VonNeumannKappa kappa,
                                 const GridSpec& grid = {}, double tol = kClassTolQuadrature);

/// Realizes a measure with normalization (1 - kappa)/(1 + kappa) as the
/// impedance of an N-node model system: the model impedance reproduces the
/// measure's Weyl-type integral on the upper half-plane.
DiscreteModel realize(const MeasureSpec& measure, VonNeumannKappa kappa, int n_nodes,
                      const QuadratureConfig& cfg = {});

}  // namespace lsys
