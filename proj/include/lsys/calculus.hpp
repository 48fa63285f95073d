#pragma once

#include <vector>

#include "lsys/analytic_fn.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// The Moebius/Cayley transform chain between the five function roles:
//
//   Weyl M  <-->  Livsic s = (M - i)/(M + i)
//   Livsic s  <-->  characteristic S = (s - kappa)/(kappa s - 1)
//   characteristic S  -->  transfer W = nu / S
//   transfer W  <-->  impedance V = i (W - 1)/(W + 1)
//
// All transforms build new evaluators; poles of the resulting function are
// returned as tagged values (FnValue::pole).
// ---------------------------------------------------------------------------

AnalyticFn livsic_from_weyl(const AnalyticFn& weyl);
AnalyticFn weyl_from_livsic(const AnalyticFn& livsic);
AnalyticFn char_from_livsic(const AnalyticFn& livsic, VonNeumannKappa kappa);
AnalyticFn livsic_from_char(const AnalyticFn& characteristic, VonNeumannKappa kappa);
AnalyticFn transfer_from_char(const AnalyticFn& characteristic, UnimodularFactor nu);
AnalyticFn impedance_from_transfer(const AnalyticFn& transfer);
AnalyticFn transfer_from_impedance(const AnalyticFn& impedance);

/// Reads the von Neumann parameter off a characteristic function as S(i).
/// A non-negligible imaginary part signals that the deficiency basis was not
/// aligned with the reference extension.
struct KappaExtraction {
    VonNeumannKappa kappa;
    double imaginary_residual = 0.0;
    bool basis_aligned = true;
};

KappaExtraction kappa_from_char(const AnalyticFn& characteristic, double tol = 1e-9);

/// Sampled diagnostic for membership in the Livsic class: s(i) = 0 together
/// with unbounded growth of z (s(z) - e^{2 i alpha}) along the imaginary
/// axis. A finite procedure cannot decide the limit, so the report carries
/// raw samples and a monotonicity verdict, never a pass/fail gate.
struct LivsicClassReport {
    Complex s_at_i{0.0, 0.0};
    bool vanishes_at_i = false;
    std::vector<double> alphas;
    std::vector<double> radii;
    // growth[a][r] = |z (s(z) - e^{2 i alpha_a})| at z = i * radii[r]
    std::vector<std::vector<double>> growth;
    std::vector<bool> growth_consistent;  // per alpha: samples strictly increase
};

LivsicClassReport livsic_class_check(const AnalyticFn& livsic, const std::vector<double>& ray_radii,
                                     const std::vector<double>& alphas, double tol = 1e-10);

/// Moves the Weyl function to the one attached to a rotated self-adjoint
/// reference extension:
///   M_alpha = (cos(a) M - sin(a)) / (cos(a) + sin(a) M),  a in [0, pi).
AnalyticFn weyl_extension_transform(const AnalyticFn& weyl, double alpha);

/// Herglotz sanity gate over a grid: minimum of Im f and the worst reflection
/// residual |f(conj z) - conj(f(z))|.
struct HerglotzReport {
    double min_imag = 0.0;
    double max_symmetry_residual = 0.0;
    int poles_seen = 0;
    bool pass = false;
};

HerglotzReport herglotz_check(const AnalyticFn& fn, const GridSpec& grid, double abs_tol = 1e-9);

}  // namespace lsys
