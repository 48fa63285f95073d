#include "lsys/biextension.hpp"

#include <cmath>

namespace lsys {

Complex h_parameter(VonNeumannKappa kappa, const QuasiKernelPhase& phase) {
    const double k = kappa.value();
    const Complex u = phase.u();
    const Complex ubar = std::conj(u);
    // (1 - k U)(1 - conj(U) k)^{-1}: both factors invertible for k < 1.
    const Complex core = (1.0 - k * u) / (1.0 - ubar * k) - k * u;
    return kI / (1.0 - k * k) * core * ubar;
}

std::pair<Mat2, Mat2> s_matrices(VonNeumannKappa kappa, Complex H) {
    const double k = kappa.value();
    const Complex Hb = std::conj(H);
    Mat2 sa{-H * k, H, k * (H * k - kI), kI - k * H};
    Mat2 sas{-k * Hb - kI, (k * Hb + kI) * k, Hb, -Hb * k};
    return {sa, sas};
}

ScalarBiExtension make_bi_extension(VonNeumannKappa kappa, const QuasiKernelPhase& phase) {
    const Complex H = h_parameter(kappa, phase);
    auto [sa, sas] = s_matrices(kappa, H);
    return ScalarBiExtension{kappa, phase, H, sa, sas};
}

ChannelInfo imaginary_part_channel(const Mat2& S_A, const Mat2& S_Astar, double tol) {
    const Mat2 diff = (S_A - S_Astar) * (1.0 / (2.0 * kI));
    const Complex entries[4] = {diff.a, diff.b, diff.c, diff.d};
    const double coeff = diff.a.real();
    for (const Complex& e : entries) {
        if (std::abs(e.imag()) > tol || std::abs(e.real() - coeff) > tol) {
            throw std::domain_error(
                "imaginary part is not the rank-one all-ones pattern; basis convention violated");
        }
    }
    ChannelInfo info;
    info.rank = coeff > tol ? 1 : 0;
    info.coefficient = coeff;
    info.channel_norm = std::sqrt(std::max(0.0, 2.0 * coeff));
    return info;
}

}  // namespace lsys
