#include "lsys/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lsys {

namespace {

// Atoms are declared where e * Im f stabilizes across the last two ladder
// rungs; 1% is the standard Stieltjes-Perron heuristic.
constexpr double kStabilization = 0.01;
constexpr double kWeightFloor = 1e-10;

double imag_at(const AnalyticFn& fn, double t, double eps, bool* violation) {
    const FnValue v = fn(Complex{t, eps});
    if (v.pole) return std::numeric_limits<double>::infinity();
    if (v.value.imag() < -1e-9) *violation = true;
    return v.value.imag();
}

// Vertex of the parabola through (x0,y0),(x1,y1),(x2,y2) on a uniform grid.
// For an isolated atom 1/Im f(t + i e) is exactly quadratic in t, so the
// vertex recovers the location to far better than grid spacing.
double parabola_vertex(double x1, double h, double y0, double y1, double y2) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return x1;
    double shift = 0.5 * h * (y0 - y2) / denom;
    shift = std::clamp(shift, -h, h);
    return x1 + shift;
}

}  // namespace

StieltjesTable stieltjes_invert(const AnalyticFn& fn, double window_lo, double window_hi,
                                std::vector<double> eps_ladder, int grid_n) {
    if (!(window_lo < window_hi)) throw std::invalid_argument("empty inversion window");
    if (grid_n < 3) throw std::invalid_argument("need at least 3 grid points");
    if (eps_ladder.size() < 2) throw std::invalid_argument("epsilon ladder needs >= 2 rungs");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0)) throw std::invalid_argument("epsilon ladder must be positive");
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])) {
            throw std::invalid_argument("epsilon ladder must be strictly decreasing");
        }
    }

    StieltjesTable table;
    table.eps_ladder = eps_ladder;
    table.grid.resize(grid_n);
    const double h = (window_hi - window_lo) / (grid_n - 1);
    for (int k = 0; k < grid_n; ++k) table.grid[k] = window_lo + h * k;

    const double pi = std::acos(-1.0);
    table.density_by_eps.assign(eps_ladder.size(), std::vector<double>(grid_n, 0.0));
    std::vector<std::vector<double>> im_f(eps_ladder.size(), std::vector<double>(grid_n, 0.0));
    for (std::size_t e = 0; e < eps_ladder.size(); ++e) {
        for (int k = 0; k < grid_n; ++k) {
            im_f[e][k] = imag_at(fn, table.grid[k], eps_ladder[e], &table.herglotz_violation);
            table.density_by_eps[e][k] = im_f[e][k] / pi;
        }
    }

    // Linear-in-epsilon Richardson step from the last two rungs.
    const std::size_t last = eps_ladder.size() - 1;
    const double e1 = eps_ladder[last - 1], e2 = eps_ladder[last];
    table.density.resize(grid_n);
    for (int k = 0; k < grid_n; ++k) {
        const double d1 = table.density_by_eps[last - 1][k];
        const double d2 = table.density_by_eps[last][k];
        table.density[k] = (e1 * d2 - e2 * d1) / (e1 - e2);
    }

    // Atom sweep: local maxima of e * Im f that are stable across the last two
    // rungs. Locations are refined from the reciprocal-parabola vertex, then
    // weights re-evaluated at the refined point and extrapolated in 1/e^2.
    for (int k = 1; k + 1 < grid_n; ++k) {
        const double a_here = e2 * im_f[last][k];
        if (!(a_here > kWeightFloor)) continue;
        if (!(im_f[last][k] >= im_f[last][k - 1] && im_f[last][k] >= im_f[last][k + 1])) continue;
        const double a_prev = e1 * im_f[last - 1][k];
        if (std::abs(a_here - a_prev) > kStabilization * std::abs(a_here)) continue;

        const double y0 = 1.0 / std::max(im_f[last][k - 1], 1e-300);
        const double y1 = 1.0 / std::max(im_f[last][k], 1e-300);
        const double y2 = 1.0 / std::max(im_f[last][k + 1], 1e-300);
        const double loc = parabola_vertex(table.grid[k], h, y0, y1, y2);

        bool ignored = false;
        const double b1 = e1 * imag_at(fn, loc, e1, &ignored);
        const double b2 = e2 * imag_at(fn, loc, e2, &ignored);
        // a(e) = w e^2/(d^2+e^2)  =>  1/a affine in 1/e^2; extrapolate to 0.
        const double x1 = 1.0 / (e1 * e1), x2 = 1.0 / (e2 * e2);
        const double yy1 = 1.0 / b1, yy2 = 1.0 / b2;
        const double intercept = yy1 - (yy2 - yy1) / (x2 - x1) * x1;
        const double weight = intercept > 0.0 ? 1.0 / intercept : b2;

        if (!table.atoms.empty() && std::abs(table.atoms.back().location - loc) < 1.5 * h) {
            if (weight > table.atoms.back().weight) table.atoms.back() = {loc, weight};
            continue;
        }
        table.atoms.push_back({loc, weight});
    }
    return table;
}

}  // namespace lsys
