#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "lsys/measure.hpp"
#include "lsys/types.hpp"

namespace lsys {

/// Role a function plays in the transform chain M -> s -> S -> W -> V.
enum class FnRole {
    Weyl,
    Livsic,
    Characteristic,
    Transfer,
    Impedance,
    Other,
};

const char* to_string(FnRole role);

/// An evaluable analytic function on { Im z != 0 } tagged with its role.
/// Values are immutable once constructed; evaluation is pure, so instances
/// may be shared freely across threads.
class AnalyticFn {
  public:
    using Evaluator = std::function<FnValue(Complex)>;

    AnalyticFn(FnRole role, Evaluator eval) : role_(role), eval_(std::move(eval)) {}

    FnValue operator()(Complex z) const { return eval_(z); }

    FnRole role() const { return role_; }
    const std::optional<double>& kappa() const { return kappa_; }
    const std::optional<Complex>& unimodular_factor() const { return nu_; }

    AnalyticFn with_kappa(double kappa) const {
        AnalyticFn out = *this;
        out.kappa_ = kappa;
        return out;
    }

    AnalyticFn with_unimodular_factor(Complex nu) const {
        AnalyticFn out = *this;
        out.nu_ = nu;
        return out;
    }

    /// Weyl-Titchmarsh function of a measure. The measure is captured by
    /// shared ownership so the function stays valid independently of the
    /// caller's copy.
    static AnalyticFn weyl_of_measure(MeasureSpec measure, QuadratureConfig cfg = {});

    static AnalyticFn constant(FnRole role, Complex value);

  private:
    FnRole role_;
    Evaluator eval_;
    std::optional<double> kappa_;
    std::optional<Complex> nu_;
};

inline AnalyticFn AnalyticFn::weyl_of_measure(MeasureSpec measure, QuadratureConfig cfg) {
    auto shared = std::make_shared<const MeasureSpec>(std::move(measure));
    return AnalyticFn(FnRole::Weyl, [shared, cfg](Complex z) {
        return FnValue{eval_weyl(*shared, z, cfg), false};
    });
}

inline AnalyticFn AnalyticFn::constant(FnRole role, Complex value) {
    return AnalyticFn(role, [value](Complex) { return FnValue{value, false}; });
}

inline const char* to_string(FnRole role) {
    switch (role) {
        case FnRole::Weyl: return "weyl";
        case FnRole::Livsic: return "livsic";
        case FnRole::Characteristic: return "characteristic";
        case FnRole::Transfer: return "transfer";
        case FnRole::Impedance: return "impedance";
        case FnRole::Other: return "other";
    }
    return "?";
}

}  // namespace lsys
