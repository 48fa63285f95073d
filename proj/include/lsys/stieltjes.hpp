#pragma once

#include <vector>

#include "lsys/analytic_fn.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Stieltjes inversion: recover the representing measure of a Herglotz
// function from its boundary values,
//
//   density(t)  = lim_{e->0} (1/pi) Im f(t + i e),
//   atom weight = lim_{e->0}  e     Im f(t + i e).
//
// The limits are approached along a decreasing epsilon ladder; densities are
// Richardson-extrapolated linearly in epsilon, atom weights in 1/epsilon^2.
// ---------------------------------------------------------------------------

struct AtomEstimate {
    double location = 0.0;
    double weight = 0.0;
};

struct StieltjesTable {
    std::vector<double> grid;              // evaluation abscissas
    std::vector<double> eps_ladder;        // as supplied, strictly decreasing
    std::vector<std::vector<double>> density_by_eps;  // [eps index][grid index]
    std::vector<double> density;           // extrapolated density estimate
    std::vector<AtomEstimate> atoms;
    bool herglotz_violation = false;       // negative Im f encountered
};

StieltjesTable stieltjes_invert(const AnalyticFn& fn, double window_lo, double window_hi,
                                std::vector<double> eps_ladder, int grid_n);

}  // namespace lsys
