#pragma once

#include <string>
#include <vector>

#include "lsys/measure.hpp"
#include "lsys/model.hpp"
#include "lsys/stieltjes.hpp"
#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// File formats (all JSON carries "schema": 1):
//
// measure:  {"schema":1,
//            "atoms":[{"lambda":-1.0,"weight":1.0}, ...],
//            "density":[{"kind":"constant","value":0.3183,
//                        "support":[-1.0,1.0]},              // optional, default R
//                       {"kind":"cauchy_profile","mass":1.0,
//                        "center":0.0,"gamma":1.0},
//                       {"kind":"compact_table","support":[a,b],
//                        "values":[...]}]}
//
// model:    {"schema":1,"nodes":[...],"weights":[...],"kappa":0.5}
//
// CSV rows: re_z, im_z, re_f, im_f, pole_flag with 17 significant digits,
// '.' decimal point regardless of locale, row-major grid order.
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

MeasureSpec load_measure(const std::string& path);
MeasureSpec parse_measure_json(const std::string& text);
std::string measure_to_json(const MeasureSpec& measure);
void save_measure(const MeasureSpec& measure, const std::string& path);

DiscreteModel load_model(const std::string& path);
DiscreteModel parse_model_json(const std::string& text);
std::string model_to_json(const DiscreteModel& model);
void save_model(const DiscreteModel& model, const std::string& path);

struct GridRow {
    Complex z{0.0, 0.0};
    Complex f{0.0, 0.0};
    bool pole = false;
};

std::string rows_to_csv(const std::vector<GridRow>& rows);
std::string rows_to_json(const std::vector<GridRow>& rows);

std::string inversion_to_csv(const StieltjesTable& table);

/// Locale-independent shortest-roundtrip formatting with 17 significant digits.
std::string format_real(double x);

}  // namespace lsys
