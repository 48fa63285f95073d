#include "lsys/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lsys {

namespace {

constexpr double kPoleRadius = 1e-12;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct NodeList {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Discretize one density piece into `count` interior nodes (plus tail lumps
// for unbounded reaches). The lambda = tan(theta) substitution turns the
// normalization kernel into the constant 1, so Gauss-Legendre in theta keeps
// sum w_j/(1+lambda_j^2) exact for constant pieces.
NodeList discretize_piece(const DensityPiece& piece, int count, const QuadratureConfig& cfg) {
    NodeList out;
    const double pi = std::acos(-1.0);

    auto lump_tail = [&](double theta_lo, double theta_hi, double norm_mass) {
        const double theta_mid = 0.5 * (theta_lo + theta_hi);
        const double lambda = std::tan(theta_mid);
        out.nodes.push_back(lambda);
        out.weights.push_back(norm_mass * (1.0 + lambda * lambda));
    };

    switch (piece.kind) {
        case DensityKind::Constant: {
            const double c = piece.params[0];
            const double lo = std::max(piece.support_lo, -cfg.tail_cutoff);
            const double hi = std::min(piece.support_hi, cfg.tail_cutoff);
            const double th_lo = std::atan(lo), th_hi = std::atan(hi);
            std::vector<double> gx, gw;
            int interior = count;
            const bool tail_left = piece.support_lo < -cfg.tail_cutoff;
            const bool tail_right = piece.support_hi > cfg.tail_cutoff;
            interior -= (tail_left ? 1 : 0) + (tail_right ? 1 : 0);
            if (interior < 1) throw std::invalid_argument("node budget too small for density piece");
            gauss_legendre(interior, gx, gw);
            if (tail_left) {
                const double th_inf = -pi / 2.0;
                lump_tail(th_inf, th_lo, c * (th_lo - th_inf));
            }
            for (int i = 0; i < interior; ++i) {
                const double theta = 0.5 * (th_lo + th_hi) + 0.5 * (th_hi - th_lo) * gx[i];
                const double lambda = std::tan(theta);
                const double sec2 = 1.0 + lambda * lambda;
                out.nodes.push_back(lambda);
                out.weights.push_back(c * 0.5 * (th_hi - th_lo) * gw[i] * sec2);
            }
            if (tail_right) {
                const double th_inf = pi / 2.0;
                lump_tail(th_hi, th_inf, c * (th_inf - th_hi));
            }
            break;
        }
        case DensityKind::CauchyProfile: {
            const double mass = piece.params[0], x0 = piece.params[1], gamma = piece.params[2];
            // lambda = x0 + gamma tan(phi): the profile becomes mass/pi d(phi).
            const double reach = cfg.tail_cutoff * std::max(1.0, gamma);
            const double phi_max = std::atan(reach / gamma);
            int interior = count - 2;
            if (interior < 1) throw std::invalid_argument("node budget too small for density piece");
            std::vector<double> gx, gw;
            gauss_legendre(interior, gx, gw);
            auto tail_norm = [&](double phi_lo, double phi_hi) {
                // integral of 1/(1+lambda^2) dmu over the phi-range, by
                // fine midpoint sampling (tails are tiny by construction)
                const int m = 64;
                double acc = 0.0;
                for (int i = 0; i < m; ++i) {
                    const double phi = phi_lo + (phi_hi - phi_lo) * (i + 0.5) / m;
                    const double lambda = x0 + gamma * std::tan(phi);
                    acc += 1.0 / (1.0 + lambda * lambda);
                }
                return mass / pi * (phi_hi - phi_lo) * acc / m;
            };
            {
                const double nm = tail_norm(-pi / 2.0 + 1e-9, -phi_max);
                const double lambda = x0 - reach * 2.0;
                out.nodes.push_back(lambda);
                out.weights.push_back(nm * (1.0 + lambda * lambda));
            }
            for (int i = 0; i < interior; ++i) {
                const double phi = phi_max * gx[i];
                const double lambda = x0 + gamma * std::tan(phi);
                out.nodes.push_back(lambda);
                out.weights.push_back(mass / pi * phi_max * gw[i]);
            }
            {
                const double nm = tail_norm(phi_max, pi / 2.0 - 1e-9);
                const double lambda = x0 + reach * 2.0;
                out.nodes.push_back(lambda);
                out.weights.push_back(nm * (1.0 + lambda * lambda));
            }
            break;
        }
        case DensityKind::CompactTable: {
            std::vector<double> gx, gw;
            if (count < 1) throw std::invalid_argument("node budget too small for density piece");
            gauss_legendre(count, gx, gw);
            const double a = piece.support_lo, b = piece.support_hi;
            const std::size_t n = piece.params.size();
            auto value = [&](double t) {
                const double x = (t - a) / (b - a) * static_cast<double>(n - 1);
                const auto k = static_cast<std::size_t>(std::min(x, static_cast<double>(n - 2)));
                const double frac = x - static_cast<double>(k);
                return piece.params[k] * (1.0 - frac) + piece.params[k + 1] * frac;
            };
            for (int i = 0; i < count; ++i) {
                const double t = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
                out.nodes.push_back(t);
                out.weights.push_back(0.5 * (b - a) * gw[i] * value(t));
            }
            break;
        }
    }
    return out;
}

}  // namespace

DiscreteModel::DiscreteModel(std::vector<double> nodes, std::vector<double> weights,
                             VonNeumannKappa kappa, double normalization_tol)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), kappa_(kappa.value()) {
    if (nodes_.empty() || nodes_.size() != weights_.size()) {
        throw std::invalid_argument("model needs matching nonempty node/weight lists");
    }
    std::vector<std::size_t> order(nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nodes_[a] < nodes_[b]; });
    std::vector<double> n2(nodes_.size()), w2(nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        n2[i] = nodes_[order[i]];
        w2[i] = weights_[order[i]];
    }
    nodes_ = std::move(n2);
    weights_ = std::move(w2);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(weights_[i] > 0.0)) throw std::invalid_argument("model weights must be positive");
        if (i > 0 && !(nodes_[i - 1] < nodes_[i])) {
            throw std::invalid_argument("model nodes must be strictly increasing");
        }
    }
    const double target = (1.0 - kappa_) / (1.0 + kappa_);
    const double got = normalization();
    if (std::abs(got - target) > normalization_tol) {
        throw std::invalid_argument("model normalization " + std::to_string(got) +
                                    " does not match (1-k)/(1+k) = " + std::to_string(target));
    }
}

Complex DiscreteModel::weyl(Complex z) const {
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const double l = nodes_[j];
        sum += weights_[j] * (1.0 / (l - z) - l / (1.0 + l * l));
    }
    return sum;
}

Complex DiscreteModel::weyl0(Complex z) const {
    return (1.0 + kappa_) / (1.0 - kappa_) * weyl(z);
}

double DiscreteModel::normalization() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        sum += weights_[j] / (1.0 + nodes_[j] * nodes_[j]);
    }
    return sum;
}

Complex DiscreteModel::inner(std::span<const Complex> f, std::span<const Complex> g) const {
    if (f.size() != nodes_.size() || g.size() != nodes_.size()) {
        throw std::invalid_argument("vector length does not match model size");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        sum += weights_[j] * f[j] * std::conj(g[j]);
    }
    return sum;
}

DiscreteModel build_model(const MeasureSpec& measure, VonNeumannKappa kappa, int n_nodes,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    const double target = (1.0 - kappa.value()) / (1.0 + kappa.value());
    const double got = normalization(measure, cfg);
    if (std::abs(got - target) > 1e-6) {
        throw std::invalid_argument("measure normalization " + std::to_string(got) +
                                    " does not match (1-k)/(1+k) = " + std::to_string(target));
    }
    const auto n_atoms = static_cast<int>(measure.atoms().size());
    if (n_nodes < n_atoms) throw std::invalid_argument("n_nodes smaller than the atom count");
    if (measure.densities().empty() && n_nodes > n_atoms) n_nodes = n_atoms;

    std::vector<double> nodes, weights;
    for (const Atom& a : measure.atoms()) {
        nodes.push_back(a.lambda);
        weights.push_back(a.weight);
    }

    if (!measure.densities().empty()) {
        int budget = n_nodes - n_atoms;
        if (budget < static_cast<int>(measure.densities().size())) {
            throw std::invalid_argument("n_nodes leaves no budget for density pieces");
        }
        // Split the budget proportionally to each piece's normalization mass.
        std::vector<double> masses;
        double total = 0.0;
        for (const DensityPiece& p : measure.densities()) {
            masses.push_back(density_normalization(p, cfg));
            total += masses.back();
        }
        std::vector<int> counts(masses.size(), 1);
        int assigned = static_cast<int>(masses.size());
        for (std::size_t i = 0; i + 1 < masses.size(); ++i) {
            const int extra = static_cast<int>(std::floor((budget - static_cast<int>(masses.size())) *
                                                          masses[i] / total));
            counts[i] += extra;
            assigned += extra;
        }
        counts.back() += budget - assigned;
        for (std::size_t i = 0; i < masses.size(); ++i) {
            const NodeList part = discretize_piece(measure.densities()[i], counts[i], cfg);
            nodes.insert(nodes.end(), part.nodes.begin(), part.nodes.end());
            weights.insert(weights.end(), part.weights.begin(), part.weights.end());
        }
    }

    // Merge any node collisions (an atom can coincide with a quadrature node).
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    std::vector<double> mn, mw;
    for (std::size_t idx : order) {
        if (!mn.empty() && nodes[idx] - mn.back() < 1e-12) {
            mw.back() += weights[idx];
        } else {
            mn.push_back(nodes[idx]);
            mw.push_back(weights[idx]);
        }
    }
    return DiscreteModel(std::move(mn), std::move(mw), kappa, 1e-6);
}

std::vector<Complex> resolvent_B(const DiscreteModel& model, Complex z, std::span<const Complex> f) {
    if (f.size() != model.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<Complex> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        const Complex den = model.nodes()[j] - z;
        if (std::abs(den) <= kPoleRadius * (1.0 + std::abs(model.nodes()[j]))) {
            throw std::domain_error("resolvent pole: z hits model node " + std::to_string(j) +
                                    " at lambda = " + std::to_string(model.nodes()[j]));
        }
        out[j] = f[j] / den;
    }
    return out;
}

FnValue resolvent_correction_factor(const DiscreteModel& model, Complex z) {
    const Complex m0 = model.weyl0(z);
    const double k = model.kappa();
    const Complex den = (k == 0.0) ? m0 - kI : m0 + kI * (k + 1.0) / (k - 1.0);
    if (std::abs(den) <= kPoleRadius * (1.0 + std::norm(m0))) return FnValue::at_pole();
    return FnValue{1.0 / den, false};
}

std::vector<Complex> resolvent_T(const DiscreteModel& model, Complex z, std::span<const Complex> f) {
    const FnValue p = resolvent_correction_factor(model, z);
    if (p.pole) {
        throw std::domain_error("dissipative resolvent degenerates at this z (spectrum-adjacent)");
    }
    std::vector<Complex> out = resolvent_B(model, z, f);
    std::vector<Complex> g_zbar(model.size());
    for (std::size_t j = 0; j < model.size(); ++j) {
        g_zbar[j] = 1.0 / (model.nodes()[j] - std::conj(z));
    }
    // The model space carries the rescaled weights c w_j, so the rank-one
    // pairing is c times the plain weighted product.
    const double c = (1.0 + model.kappa()) / (1.0 - model.kappa());
    const Complex pairing = c * model.inner(f, g_zbar);
    for (std::size_t j = 0; j < model.size(); ++j) {
        out[j] -= p.value * pairing / (model.nodes()[j] - z);
    }
    return out;
}

Complex model_impedance(const DiscreteModel& model, Complex z) {
    if (z.imag() == 0.0) throw std::invalid_argument("impedance requires Im z != 0");
    return model.weyl(z);
}

FnValue model_transfer_resolvent_path(const DiscreteModel& model, Complex z) {
    const FnValue p = resolvent_correction_factor(model, z);
    if (p.pole) return FnValue::at_pole();
    const Complex m0 = model.weyl0(z);
    const double sk = (1.0 - model.kappa()) / (1.0 + model.kappa());
    return FnValue{1.0 - 2.0 * kI * sk * (m0 - p.value * m0 * m0), false};
}

FnValue model_transfer_mobius_path(const DiscreteModel& model, Complex z) {
    const Complex m0 = model.weyl0(z);
    const Complex s = (m0 - kI) / (m0 + kI);
    const double k = model.kappa();
    const Complex S = (s - k) / (k * s - 1.0);
    if (std::abs(S) <= kPoleRadius) return FnValue::at_pole();
    return FnValue{1.0 / S, false};
}

double cross_check(const DiscreteModel& model, const GridSpec& grid) {
    double worst = 0.0;
    int usable = 0;
    for (const Complex z : grid.points()) {
        const FnValue a = model_transfer_resolvent_path(model, z);
        const FnValue b = model_transfer_mobius_path(model, z);
        if (a.pole || b.pole) continue;
        usable += 1;
        worst = std::max(worst, std::abs(a.value - b.value));
    }
    if (usable == 0) throw std::domain_error("no grid points clear of transfer-function poles");
    return worst;
}

AnalyticFn model_impedance_fn(const DiscreteModel& model) {
    AnalyticFn out(FnRole::Impedance,
                   [model](Complex z) { return FnValue{model_impedance(model, z), false}; });
    return out.with_kappa(model.kappa());
}

AnalyticFn model_weyl_fn(const DiscreteModel& model) {
    return AnalyticFn(FnRole::Weyl, [model](Complex z) { return FnValue{model.weyl(z), false}; });
}

}  // namespace lsys
