#include "lsys/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lsys {

namespace {

constexpr double kPoleRadius = 1e-12;

void require_role(const AnalyticFn& fn, FnRole expected, const char* op) {
    if (fn.role() != expected) {
        throw std::invalid_argument(std::string(op) + " expects a " + to_string(expected) +
                                    "-role function, got " + to_string(fn.role()));
    }
}

bool near_zero(Complex denom, double scale) { return std::abs(denom) <= kPoleRadius * scale; }

}  // namespace

AnalyticFn livsic_from_weyl(const AnalyticFn& weyl) {
    require_role(weyl, FnRole::Weyl, "livsic_from_weyl");
    AnalyticFn out(FnRole::Livsic, [weyl](Complex z) -> FnValue {
        const FnValue m = weyl(z);
        if (m.pole) return FnValue{Complex{1.0, 0.0}, false};  // M -> inf gives s -> 1
        const Complex den = m.value + kI;
        if (near_zero(den, 1.0 + std::abs(m.value))) return FnValue::at_pole();
        return FnValue{(m.value - kI) / den, false};
    });
    return out;
}

AnalyticFn weyl_from_livsic(const AnalyticFn& livsic) {
    require_role(livsic, FnRole::Livsic, "weyl_from_livsic");
    return AnalyticFn(FnRole::Weyl, [livsic](Complex z) -> FnValue {
        const FnValue s = livsic(z);
        if (s.pole) return FnValue{-kI, false};  // s -> inf gives M -> -i
        const Complex den = s.value - 1.0;
        if (near_zero(den, 1.0 + std::abs(s.value))) return FnValue::at_pole();
        return FnValue{(s.value + 1.0) / (kI * den), false};
    });
}

AnalyticFn char_from_livsic(const AnalyticFn& livsic, VonNeumannKappa kappa) {
    require_role(livsic, FnRole::Livsic, "char_from_livsic");
    const double k = kappa.value();
    AnalyticFn out(FnRole::Characteristic, [livsic, k](Complex z) -> FnValue {
        const FnValue s = livsic(z);
        if (s.pole) return k == 0.0 ? FnValue::at_pole() : FnValue{Complex{1.0 / k, 0.0}, false};
        const Complex den = k * s.value - 1.0;
        if (near_zero(den, 1.0 + std::abs(s.value))) return FnValue::at_pole();
        return FnValue{(s.value - k) / den, false};
    });
    return out.with_kappa(k);
}

AnalyticFn livsic_from_char(const AnalyticFn& characteristic, VonNeumannKappa kappa) {
    require_role(characteristic, FnRole::Characteristic, "livsic_from_char");
    const double k = kappa.value();
    return AnalyticFn(FnRole::Livsic, [characteristic, k](Complex z) -> FnValue {
        const FnValue S = characteristic(z);
        if (S.pole) return k == 0.0 ? FnValue::at_pole() : FnValue{Complex{1.0 / k, 0.0}, false};
        const Complex den = k * S.value - 1.0;
        if (near_zero(den, 1.0 + std::abs(S.value))) return FnValue::at_pole();
        return FnValue{(S.value - k) / den, false};
    });
}

AnalyticFn transfer_from_char(const AnalyticFn& characteristic, UnimodularFactor nu) {
    require_role(characteristic, FnRole::Characteristic, "transfer_from_char");
    const Complex factor = nu.value();
    AnalyticFn out(FnRole::Transfer, [characteristic, factor](Complex z) -> FnValue {
        const FnValue S = characteristic(z);
        if (S.pole || near_zero(S.value, 1.0)) return FnValue::at_pole();
        return FnValue{factor / S.value, false};
    });
    out = out.with_unimodular_factor(factor);
    if (characteristic.kappa()) out = out.with_kappa(*characteristic.kappa());
    return out;
}

AnalyticFn impedance_from_transfer(const AnalyticFn& transfer) {
    require_role(transfer, FnRole::Transfer, "impedance_from_transfer");
    AnalyticFn out(FnRole::Impedance, [transfer](Complex z) -> FnValue {
        const FnValue w = transfer(z);
        if (w.pole) return FnValue{kI, false};  // W -> inf gives V -> i
        const Complex den = w.value + 1.0;
        if (near_zero(den, 1.0 + std::abs(w.value))) return FnValue::at_pole();
        return FnValue{kI * (w.value - 1.0) / den, false};
    });
    if (transfer.kappa()) out = out.with_kappa(*transfer.kappa());
    return out;
}

AnalyticFn transfer_from_impedance(const AnalyticFn& impedance) {
    require_role(impedance, FnRole::Impedance, "transfer_from_impedance");
    AnalyticFn out(FnRole::Transfer, [impedance](Complex z) -> FnValue {
        const FnValue v = impedance(z);
        if (v.pole) return FnValue{Complex{-1.0, 0.0}, false};  // V -> inf gives W -> -1
        const Complex den = 1.0 + kI * v.value;
        if (near_zero(den, 1.0 + std::abs(v.value))) return FnValue::at_pole();
        return FnValue{(1.0 - kI * v.value) / den, false};
    });
    if (impedance.kappa()) out = out.with_kappa(*impedance.kappa());
    return out;
}

KappaExtraction kappa_from_char(const AnalyticFn& characteristic, double tol) {
    require_role(characteristic, FnRole::Characteristic, "kappa_from_char");
    const FnValue at_i = characteristic(kI);
    if (at_i.pole) throw std::domain_error("characteristic function has a pole at z = i");
    const double im = std::abs(at_i.value.imag());
    const double re = at_i.value.real();
    KappaExtraction out{VonNeumannKappa(std::clamp(re, 0.0, std::nextafter(1.0, 0.0))), im, im <= tol};
    return out;
}

LivsicClassReport livsic_class_check(const AnalyticFn& livsic, const std::vector<double>& ray_radii,
                                     const std::vector<double>& alphas, double tol) {
    require_role(livsic, FnRole::Livsic, "livsic_class_check");
    LivsicClassReport report;
    report.alphas = alphas;
    report.radii = ray_radii;
    const FnValue si = livsic(kI);
    report.s_at_i = si.pole ? Complex{0.0, 0.0} : si.value;
    report.vanishes_at_i = !si.pole && std::abs(si.value) <= tol;

    report.growth.resize(alphas.size());
    report.growth_consistent.resize(alphas.size(), true);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const Complex target = std::polar(1.0, 2.0 * alphas[a]);
        report.growth[a].reserve(ray_radii.size());
        double prev = -1.0;
        bool increasing = true;
        for (double r : ray_radii) {
            const Complex z{0.0, r};
            const FnValue s = livsic(z);
            const double g = s.pole ? std::numeric_limits<double>::infinity()
                                    : std::abs(z * (s.value - target));
            report.growth[a].push_back(g);
            if (prev >= 0.0 && !(g > prev)) increasing = false;
            prev = g;
        }
        report.growth_consistent[a] = increasing;
    }
    return report;
}

AnalyticFn weyl_extension_transform(const AnalyticFn& weyl, double alpha) {
    require_role(weyl, FnRole::Weyl, "weyl_extension_transform");
    const double pi = std::acos(-1.0);
    if (!(alpha >= 0.0 && alpha < pi)) throw std::invalid_argument("alpha must lie in [0, pi)");
    const double c = std::cos(alpha), s = std::sin(alpha);
    return AnalyticFn(FnRole::Weyl, [weyl, c, s](Complex z) -> FnValue {
        const FnValue m = weyl(z);
        if (m.pole) {
            // M -> inf maps to cot-type limit c/s; a pole survives only when
            // sin(alpha) = 0, i.e. the identity transform.
            if (std::abs(s) < 1e-300) return FnValue::at_pole();
            return FnValue{Complex{c / s, 0.0}, false};
        }
        const Complex den = c + s * m.value;
        if (near_zero(den, 1.0 + std::abs(m.value))) return FnValue::at_pole();
        return FnValue{(c * m.value - s) / den, false};
    });
}

HerglotzReport herglotz_check(const AnalyticFn& fn, const GridSpec& grid, double abs_tol) {
    HerglotzReport report;
    report.min_imag = std::numeric_limits<double>::infinity();
    for (const Complex z : grid.points()) {
        const FnValue up = fn(z);
        const FnValue down = fn(std::conj(z));
        if (up.pole || down.pole) {
            report.poles_seen += 1;
            continue;
        }
        report.min_imag = std::min(report.min_imag, up.value.imag());
        report.max_symmetry_residual =
            std::max(report.max_symmetry_residual, std::abs(down.value - std::conj(up.value)));
    }
    report.pass = report.min_imag >= -abs_tol && report.max_symmetry_residual <= abs_tol;
    return report;
}

}  // namespace lsys
