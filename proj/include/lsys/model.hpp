#pragma once

#include <span>
#include <vector>

#include "lsys/analytic_fn.hpp"
#include "lsys/measure.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Finite discretization of the functional-model triple on L^2(R; dmu): the
// self-adjoint part acts as multiplication by the node values, its symmetric
// restriction lives on vectors with vanishing mu-mean, and the dissipative
// extension differs from the self-adjoint resolvent by a rank-one term along
// the deficiency vector g_z = 1/(lambda - z).
//
// Node weights carry the impedance normalization
//     sum_j w_j / (1 + lambda_j^2) = (1 - kappa)/(1 + kappa),
// while the model's own function space uses the rescaled weights
// c * w_j with c = (1 + kappa)/(1 - kappa), whose Weyl function M0 satisfies
// M0(i) = i. All rank-one pairings against the channel use the regularized
// value M0(z), which keeps the transfer-function identities exact at finite N.
// ---------------------------------------------------------------------------

class DiscreteModel {
  public:
    DiscreteModel(std::vector<double> nodes, std::vector<double> weights, VonNeumannKappa kappa,
                  double normalization_tol = 1e-6);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double kappa() const { return kappa_; }
    std::size_t size() const { return nodes_.size(); }

    /// Impedance-normalized Weyl function  M(z) = sum w_j k_z(lambda_j).
    Complex weyl(Complex z) const;

    /// Model-space Weyl function M0 = c * M with M0(i) = i.
    Complex weyl0(Complex z) const;

    double normalization() const;

    /// Weighted inner product (f, g) = sum w_j f_j conj(g_j).
    Complex inner(std::span<const Complex> f, std::span<const Complex> g) const;

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double kappa_;
};

/// Discretizes a measure into an N-node model. Atoms are copied verbatim;
/// density mass goes to Gauss-Legendre nodes under the arctangent substitution
/// (which integrates the normalization kernel exactly), truncated at
/// cfg.tail_cutoff with each unbounded tail lumped into one node that
/// preserves the tail's normalization mass.
DiscreteModel build_model(const MeasureSpec& measure, VonNeumannKappa kappa, int n_nodes,
                          const QuadratureConfig& cfg = {});

/// Resolvent of the self-adjoint part: componentwise f_j / (lambda_j - z).
/// Throws std::domain_error naming the node if z collides with one.
std::vector<Complex> resolvent_B(const DiscreteModel& model, Complex z, std::span<const Complex> f);

/// Resolvent of the dissipative extension:
///   (T - z)^{-1} f = (B - z)^{-1} f - p(z) (f, g_conj(z)) g_z,
/// with p(z) = (M0(z) + i (kappa+1)/(kappa-1))^{-1}; the kappa = 0 branch uses
/// p(z) = (M0(z) - i)^{-1} directly. Throws std::domain_error at a p-pole.
std::vector<Complex> resolvent_T(const DiscreteModel& model, Complex z, std::span<const Complex> f);

/// Scalar factor of the rank-one resolvent correction; tagged pole when the
/// denominator degenerates (spectrum-adjacent z).
FnValue resolvent_correction_factor(const DiscreteModel& model, Complex z);

/// Impedance of the model system, V(z) = weyl(z).
Complex model_impedance(const DiscreteModel& model, Complex z);

/// Transfer function computed through the rank-one resolvent only:
///   W(z) = 1 - 2 i s_k (M0 - p M0^2),  s_k = (1 - kappa)/(1 + kappa).
FnValue model_transfer_resolvent_path(const DiscreteModel& model, Complex z);

/// Transfer function through the Moebius chain M -> s -> S -> 1/S.
FnValue model_transfer_mobius_path(const DiscreteModel& model, Complex z);

/// Max discrepancy |W_resolvent - W_moebius| over grid points where neither
/// path is at a pole. Throws std::domain_error if every point is excluded.
double cross_check(const DiscreteModel& model, const GridSpec& grid);

AnalyticFn model_impedance_fn(const DiscreteModel& model);
AnalyticFn model_weyl_fn(const DiscreteModel& model);

}  // namespace lsys
