#include "lsys/measure.hpp"

#include <algorithm>
#include <cmath>

namespace lsys {

namespace {

bool is_bounded(const DensityPiece& p) {
    return std::isfinite(p.support_lo) && std::isfinite(p.support_hi);
}

void validate_piece(const DensityPiece& p) {
    switch (p.kind) {
        case DensityKind::Constant:
            if (p.params.size() != 1 || !(p.params[0] > 0.0)) {
                throw std::invalid_argument("constant density needs a single positive value");
            }
            if (p.support_lo >= p.support_hi) throw std::invalid_argument("empty density support");
            break;
        case DensityKind::CauchyProfile:
            if (p.params.size() != 3 || !(p.params[0] > 0.0) || !(p.params[2] > 0.0)) {
                throw std::invalid_argument("cauchy_profile needs {mass>0, center, gamma>0}");
            }
            if (is_bounded(p)) {
                throw std::invalid_argument("cauchy_profile is defined on the whole line");
            }
            break;
        case DensityKind::CompactTable:
            if (!is_bounded(p)) {
                throw std::invalid_argument("compact_table requires bounded support");
            }
            if (p.support_lo >= p.support_hi) throw std::invalid_argument("empty density support");
            if (p.params.size() < 2) throw std::invalid_argument("compact_table needs >= 2 samples");
            for (double v : p.params) {
                if (!(v >= 0.0)) throw std::invalid_argument("compact_table samples must be >= 0");
            }
            break;
    }
}

double table_value(const DensityPiece& p, double t) {
    const double a = p.support_lo, b = p.support_hi;
    if (t < a || t > b) return 0.0;
    const std::size_t n = p.params.size();
    const double x = (t - a) / (b - a) * static_cast<double>(n - 1);
    const auto k = static_cast<std::size_t>(std::min(x, static_cast<double>(n - 2)));
    const double frac = x - static_cast<double>(k);
    return p.params[k] * (1.0 - frac) + p.params[k + 1] * frac;
}

Complex herglotz_kernel(double t, Complex z) {
    return 1.0 / (t - z) - t / (1.0 + t * t);
}

// Antiderivative of k_z against a unit constant density: log(t-z) stays in the
// lower half-plane for real t and Im z > 0, so the principal branch is
// continuous along the path of integration.
Complex constant_antiderivative(double t, Complex z) {
    return std::log(t - z) - 0.5 * std::log(1.0 + t * t);
}

// Limits of the antiderivative: 0 at +inf, -i*pi at -inf (Im z > 0).
Complex constant_weyl(double c, double lo, double hi, Complex z) {
    const double pi = std::acos(-1.0);
    const Complex upper = std::isfinite(hi) ? constant_antiderivative(hi, z) : Complex{0.0, 0.0};
    const Complex lower = std::isfinite(lo) ? constant_antiderivative(lo, z) : Complex{0.0, -pi};
    return c * (upper - lower);
}

double atan_extended(double t) {
    if (std::isinf(t)) return std::copysign(std::acos(-1.0) / 2.0, t);
    return std::atan(t);
}

struct SimpsonState {
    const std::function<Complex(double)>* f;
    const QuadratureConfig* cfg;
    int used = 0;
    double worst_error = 0.0;
};

Complex simpson_panel(const std::function<Complex(double)>& f, double a, double m, double b, Complex fa,
                      Complex fm, Complex fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

Complex adaptive_step(SimpsonState& st, double a, double b, Complex fa, Complex fm, Complex fb,
                      Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = (*st.f)(lm);
    const Complex frm = (*st.f)(rm);
    const Complex left = simpson_panel(*st.f, a, lm, m, fa, flm, fm);
    const Complex right = simpson_panel(*st.f, m, rm, b, fm, frm, fb);
    const double err = std::abs(left + right - whole) / 15.0;
    if (err <= tol || st.used >= st.cfg->max_subdivisions || depth > 48) {
        if (err > tol) st.worst_error = std::max(st.worst_error, err);
        return left + right + (left + right - whole) / 15.0;
    }
    st.used += 1;
    return adaptive_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

MeasureSpec::MeasureSpec(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    for (const Atom& a : atoms_) {
        if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
        if (!std::isfinite(a.lambda)) throw std::invalid_argument("atom locations must be finite");
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& x, const Atom& y) { return x.lambda < y.lambda; });
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
        if (!(atoms_[i - 1].lambda < atoms_[i].lambda)) {
            throw std::invalid_argument("atom locations must be strictly increasing");
        }
    }
    for (const DensityPiece& p : pieces_) validate_piece(p);
}

MeasureSpec MeasureSpec::lebesgue_over_pi() {
    DensityPiece p;
    p.kind = DensityKind::Constant;
    p.params = {1.0 / std::acos(-1.0)};
    return MeasureSpec({}, {p});
}

QuadResult adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                            const QuadratureConfig& cfg) {
    cfg.validate();
    SimpsonState st{&f, &cfg};
    const double m = 0.5 * (a + b);
    const Complex fa = f(a), fm = f(m), fb = f(b);
    const Complex whole = simpson_panel(f, a, m, b, fa, fm, fb);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
    const Complex value = adaptive_step(st, a, b, fa, fm, fb, whole, tol, 0);
    if (st.worst_error > 0.0) {
        throw QuadratureError("adaptive quadrature did not converge within max_subdivisions",
                              st.worst_error);
    }
    return QuadResult{value, tol, st.used};
}

Complex density_weyl_integral(const DensityPiece& piece, Complex z, const QuadratureConfig& cfg) {
    switch (piece.kind) {
        case DensityKind::Constant:
            return constant_weyl(piece.params[0], piece.support_lo, piece.support_hi, z);
        case DensityKind::CauchyProfile: {
            const double mass = piece.params[0], x0 = piece.params[1], gamma = piece.params[2];
            // Cauchy transform of the Poisson profile plus its (real)
            // regularizer value.
            const Complex cauchy = 1.0 / (Complex{x0, -gamma} - z);
            const double reg = x0 / (x0 * x0 + (gamma + 1.0) * (gamma + 1.0));
            return mass * (cauchy - reg);
        }
        case DensityKind::CompactTable: {
            auto f = [&](double t) { return table_value(piece, t) * herglotz_kernel(t, z); };
            return adaptive_simpson(f, piece.support_lo, piece.support_hi, cfg).value;
        }
    }
    throw std::logic_error("unreachable density kind");
}

double density_normalization(const DensityPiece& piece, const QuadratureConfig& cfg) {
    switch (piece.kind) {
        case DensityKind::Constant:
            return piece.params[0] * (atan_extended(piece.support_hi) - atan_extended(piece.support_lo));
        case DensityKind::CauchyProfile: {
            const double mass = piece.params[0], x0 = piece.params[1], gamma = piece.params[2];
            return mass * (gamma + 1.0) / (x0 * x0 + (gamma + 1.0) * (gamma + 1.0));
        }
        case DensityKind::CompactTable: {
            auto f = [&](double t) { return Complex{table_value(piece, t) / (1.0 + t * t), 0.0}; };
            return adaptive_simpson(f, piece.support_lo, piece.support_hi, cfg).value.real();
        }
    }
    throw std::logic_error("unreachable density kind");
}

Complex eval_weyl(const MeasureSpec& measure, Complex z, const QuadratureConfig& cfg) {
    if (z.imag() == 0.0) throw std::invalid_argument("Weyl function requires Im z != 0");
    if (z.imag() < 0.0) return std::conj(eval_weyl(measure, std::conj(z), cfg));

    Complex sum{0.0, 0.0};
    for (const Atom& a : measure.atoms()) sum += a.weight * herglotz_kernel(a.lambda, z);
    for (const DensityPiece& p : measure.densities()) sum += density_weyl_integral(p, z, cfg);
    return sum;
}

double normalization(const MeasureSpec& measure, const QuadratureConfig& cfg) {
    double sum = 0.0;
    for (const Atom& a : measure.atoms()) sum += a.weight / (1.0 + a.lambda * a.lambda);
    for (const DensityPiece& p : measure.densities()) sum += density_normalization(p, cfg);
    return sum;
}

}  // namespace lsys
