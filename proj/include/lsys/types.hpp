#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsys {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Result of evaluating an analytic function at one point. Transform chains
/// report poles as tagged values instead of throwing: zeros of a
/// characteristic function are spectral data, not failures.
struct FnValue {
    Complex value{0.0, 0.0};
    bool pole = false;

    static FnValue at_pole() { return FnValue{Complex{0.0, 0.0}, true}; }
};

/// von Neumann extension parameter, normalized real with 0 <= kappa < 1.
class VonNeumannKappa {
  public:
    explicit VonNeumannKappa(double kappa) : kappa_(kappa) {
        if (!(kappa >= 0.0 && kappa < 1.0)) {
            throw std::invalid_argument("von Neumann parameter must satisfy 0 <= kappa < 1, got " +
                                        std::to_string(kappa));
        }
    }

    double value() const { return kappa_; }

  private:
    double kappa_;
};

/// Unimodular factor relating transfer and characteristic functions.
class UnimodularFactor {
  public:
    explicit UnimodularFactor(Complex nu) : nu_(nu) {
        if (std::abs(std::abs(nu) - 1.0) > 1e-14) {
            throw std::invalid_argument("factor must be unimodular to 1e-14");
        }
    }

    static UnimodularFactor from_angle(double phi) { return UnimodularFactor(std::polar(1.0, phi)); }

    Complex value() const { return nu_; }

  private:
    Complex nu_;
};

/// Phase U = e^{2 i beta}, beta in [0, pi), selecting the self-adjoint
/// reference extension inside the deficiency plane.
class QuasiKernelPhase {
  public:
    explicit QuasiKernelPhase(double beta) : beta_(beta) {
        if (!(beta >= 0.0 && beta < std::acos(-1.0))) {
            throw std::invalid_argument("quasi-kernel phase requires beta in [0, pi)");
        }
    }

    static QuasiKernelPhase from_u(Complex u) {
        if (std::abs(std::abs(u) - 1.0) > 1e-14) {
            throw std::invalid_argument("quasi-kernel parameter U must be unimodular");
        }
        const double pi = std::acos(-1.0);
        double beta = 0.5 * std::arg(u);  // arg in (-pi, pi] -> beta in (-pi/2, pi/2]
        if (beta < 0.0) beta += pi;
        if (beta >= pi) beta -= pi;
        return QuasiKernelPhase(beta);
    }

    double beta() const { return beta_; }
    Complex u() const { return std::polar(1.0, 2.0 * beta_); }

  private:
    double beta_;
};

/// Rectangular evaluation grid in the upper half-plane. Real parts are spaced
/// linearly, imaginary parts geometrically (im_min > 0 guarantees that the
/// geometric ladder is well defined).
struct GridSpec {
    double re_min = -5.0;
    double re_max = 5.0;
    double im_min = 0.1;
    double im_max = 10.0;
    int n_re = 20;
    int n_im = 20;

    void validate() const {
        if (!(im_min > 0.0)) throw std::invalid_argument("grid requires im_min > 0");
        if (n_re < 1 || n_im < 1) throw std::invalid_argument("grid requires n_re, n_im >= 1");
        if (re_max < re_min || im_max < im_min) throw std::invalid_argument("bad grid bounds");
    }

    /// Row-major point list: outer loop over Re, inner loop over Im.
    std::vector<Complex> points() const {
        validate();
        std::vector<Complex> out;
        out.reserve(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
        for (int j = 0; j < n_re; ++j) {
            const double re =
                (n_re == 1) ? re_min : re_min + (re_max - re_min) * static_cast<double>(j) / (n_re - 1);
            for (int k = 0; k < n_im; ++k) {
                const double im =
                    (n_im == 1) ? im_min
                                : im_min * std::pow(im_max / im_min, static_cast<double>(k) / (n_im - 1));
                out.emplace_back(re, im);
            }
        }
        return out;
    }
};

/// Thrown when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_error(achieved) {}

    double achieved_error;
};

}  // namespace lsys
