#pragma once

#include <array>

#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Scalar (deficiency (1,1)) parametrization of quasi-self-adjoint
// bi-extensions. The operator parameter H is determined by the extension
// parameter kappa and the quasi-kernel phase U; the two 2x2 matrices encode
// the extension and its adjoint in the deficiency-plane coordinates, and
// their imaginary part is rank one with channel coefficient
// (1 - kappa)/(2 + 2 kappa) when U = 1.
// ---------------------------------------------------------------------------

struct Mat2 {
    // row-major entries
    Complex a{0.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{0.0, 0.0};

    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(Complex s) const { return {a * s, b * s, c * s, d * s}; }
};

struct ScalarBiExtension {
    VonNeumannKappa kappa;
    QuasiKernelPhase phase;
    Complex H{0.0, 0.0};
    Mat2 S_A;
    Mat2 S_Astar;
};

/// Operator parameter of the unique compatible bi-extension:
///   H = i (1 - k^2)^{-1} [ (1 - k U)(1 - conj(U) k)^{-1} - k U ] conj(U).
/// For U = 1 this collapses to H = i/(1 + k).
Complex h_parameter(VonNeumannKappa kappa, const QuasiKernelPhase& phase);

/// Builds S_A and S_Astar from (kappa, H):
///   S_A     = [ -H k,            H       ]
///             [ k (H k - i),     i - k H ]
///   S_Astar = [ -k conj(H) - i,  (k conj(H) + i) k ]
///             [ conj(H),         -conj(H) k        ]
std::pair<Mat2, Mat2> s_matrices(VonNeumannKappa kappa, Complex H);

ScalarBiExtension make_bi_extension(VonNeumannKappa kappa, const QuasiKernelPhase& phase);

/// Verifies that (S_A - S_Astar)/(2i) is the rank-one all-ones pattern and
/// returns its scalar coefficient together with the channel normalization
/// sqrt(2 * coefficient). Throws on pattern mismatch (convention violation).
struct ChannelInfo {
    int rank = 0;
    double coefficient = 0.0;
    double channel_norm = 0.0;  // sqrt((1 - k)/(1 + k)) when U = 1
};

ChannelInfo imaginary_part_channel(const Mat2& S_A, const Mat2& S_Astar, double tol = 1e-14);

}  // namespace lsys
