#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Borel measures on the real line, represented as point masses plus density
// pieces from a small registry. Every piece knows how to integrate itself
// against the Herglotz kernel
//
//     k_z(t) = 1/(t - z) - t/(1 + t^2)
//
// and against the normalization kernel 1/(1 + t^2). Unbounded supports are
// admitted only for kinds whose integrals have closed forms, so an infinite
// total measure never meets naive quadrature.
// ---------------------------------------------------------------------------

struct Atom {
    double lambda = 0.0;
    double weight = 0.0;
};

enum class DensityKind {
    Constant,      // params: {value}; support may be unbounded
    CauchyProfile, // params: {mass, center, gamma}; support is the whole line
    CompactTable,  // params: uniformly spaced samples on a bounded support
};

struct DensityPiece {
    DensityKind kind = DensityKind::Constant;
    std::vector<double> params;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double tail_cutoff = 50.0;  // half-width beyond which analytic tails take over

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("tolerances must be > 0");
        if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
        if (!(tail_cutoff > 0.0)) throw std::invalid_argument("tail_cutoff must be > 0");
    }
};

class MeasureSpec {
  public:
    MeasureSpec() = default;
    MeasureSpec(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityPiece>& densities() const { return pieces_; }
    bool empty() const { return atoms_.empty() && pieces_.empty(); }

    static MeasureSpec from_atoms(std::vector<Atom> atoms) { return MeasureSpec(std::move(atoms), {}); }

    /// Lebesgue measure scaled by 1/pi; its Weyl-Titchmarsh function is the
    /// constant i on the upper half-plane.
    static MeasureSpec lebesgue_over_pi();

  private:
    std::vector<Atom> atoms_;
    std::vector<DensityPiece> pieces_;
};

/// Weyl-Titchmarsh function M(z) = int k_z(t) dmu(t) for Im z != 0.
/// Lower half-plane values come from the reflection M(z) = conj(M(conj z)).
Complex eval_weyl(const MeasureSpec& measure, Complex z, const QuadratureConfig& cfg = {});

/// Normalization integral int dmu(t)/(1+t^2); equals Im M(i).
double normalization(const MeasureSpec& measure, const QuadratureConfig& cfg = {});

// Per-piece integrals, exposed for discretization and diagnostics.
Complex density_weyl_integral(const DensityPiece& piece, Complex z, const QuadratureConfig& cfg);
double density_normalization(const DensityPiece& piece, const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Adaptive quadrature (Simpson with recursive bisection) for the compact
// pieces. Complex-valued integrands; error control on |estimate difference|.
// ---------------------------------------------------------------------------

struct QuadResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

QuadResult adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                            const QuadratureConfig& cfg);

}  // namespace lsys
