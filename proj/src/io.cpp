#include "lsys/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lsys {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

void check_schema(const json& j, const char* what) {
    if (j.contains("schema") && j["schema"].get<int>() != 1) {
        throw ParseError(std::string(what) + ": unsupported schema version");
    }
}

double support_bound(const json& v, double fallback) {
    if (v.is_null()) return fallback;
    return v.get<double>();
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

MeasureSpec parse_measure_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("measure: ") + e.what());
    }
    check_schema(j, "measure");

    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        for (const auto& a : j["atoms"]) {
            if (!a.contains("lambda") || !a.contains("weight")) {
                throw ParseError("measure atom needs \"lambda\" and \"weight\"");
            }
            atoms.push_back({a["lambda"].get<double>(), a["weight"].get<double>()});
        }
    }
    std::vector<DensityPiece> pieces;
    if (j.contains("density")) {
        for (const auto& d : j["density"]) {
            if (!d.contains("kind")) throw ParseError("density piece needs \"kind\"");
            const std::string kind = d["kind"].get<std::string>();
            DensityPiece piece;
            if (d.contains("support")) {
                const auto& s = d["support"];
                if (!s.is_array() || s.size() != 2) throw ParseError("support must be [lo, hi]");
                piece.support_lo = support_bound(s[0], piece.support_lo);
                piece.support_hi = support_bound(s[1], piece.support_hi);
            }
            if (kind == "constant") {
                piece.kind = DensityKind::Constant;
                if (!d.contains("value")) throw ParseError("constant density needs \"value\"");
                piece.params = {d["value"].get<double>()};
            } else if (kind == "cauchy_profile") {
                piece.kind = DensityKind::CauchyProfile;
                for (const char* key : {"mass", "center", "gamma"}) {
                    if (!d.contains(key)) {
                        throw ParseError("cauchy_profile needs \"mass\", \"center\", \"gamma\"");
                    }
                }
                piece.params = {d["mass"].get<double>(), d["center"].get<double>(),
                                d["gamma"].get<double>()};
            } else if (kind == "compact_table") {
                piece.kind = DensityKind::CompactTable;
                if (!d.contains("values") || !d.contains("support")) {
                    throw ParseError("compact_table needs \"support\" and \"values\"");
                }
                piece.params = d["values"].get<std::vector<double>>();
            } else {
                throw ParseError("unknown density kind \"" + kind + "\"");
            }
            pieces.push_back(std::move(piece));
        }
    }
    try {
        return MeasureSpec(std::move(atoms), std::move(pieces));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("measure: ") + e.what());
    }
}

MeasureSpec load_measure(const std::string& path) { return parse_measure_json(read_json_file(path).dump()); }

std::string measure_to_json(const MeasureSpec& measure) {
    json j;
    j["schema"] = 1;
    j["atoms"] = json::array();
    for (const Atom& a : measure.atoms()) {
        j["atoms"].push_back({{"lambda", a.lambda}, {"weight", a.weight}});
    }
    j["density"] = json::array();
    for (const DensityPiece& p : measure.densities()) {
        json d;
        switch (p.kind) {
            case DensityKind::Constant:
                d["kind"] = "constant";
                d["value"] = p.params[0];
                break;
            case DensityKind::CauchyProfile:
                d["kind"] = "cauchy_profile";
                d["mass"] = p.params[0];
                d["center"] = p.params[1];
                d["gamma"] = p.params[2];
                break;
            case DensityKind::CompactTable:
                d["kind"] = "compact_table";
                d["values"] = p.params;
                break;
        }
        if (std::isfinite(p.support_lo) || std::isfinite(p.support_hi)) {
            d["support"] = json::array();
            d["support"].push_back(std::isfinite(p.support_lo) ? json(p.support_lo) : json(nullptr));
            d["support"].push_back(std::isfinite(p.support_hi) ? json(p.support_hi) : json(nullptr));
        }
        j["density"].push_back(std::move(d));
    }
    return j.dump(2);
}

void save_measure(const MeasureSpec& measure, const std::string& path) {
    write_text_file(path, measure_to_json(measure));
}

DiscreteModel parse_model_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
    check_schema(j, "model");
    for (const char* key : {"nodes", "weights", "kappa"}) {
        if (!j.contains(key)) throw ParseError("model needs \"nodes\", \"weights\", \"kappa\"");
    }
    try {
        return DiscreteModel(j["nodes"].get<std::vector<double>>(),
                             j["weights"].get<std::vector<double>>(),
                             VonNeumannKappa(j["kappa"].get<double>()));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
}

DiscreteModel load_model(const std::string& path) { return parse_model_json(read_json_file(path).dump()); }

std::string model_to_json(const DiscreteModel& model) {
    json j;
    j["schema"] = 1;
    j["nodes"] = model.nodes();
    j["weights"] = model.weights();
    j["kappa"] = model.kappa();
    return j.dump(2);
}

void save_model(const DiscreteModel& model, const std::string& path) {
    write_text_file(path, model_to_json(model));
}

std::string rows_to_csv(const std::vector<GridRow>& rows) {
    std::string out = "re_z,im_z,re_f,im_f,pole_flag\n";
    for (const GridRow& r : rows) {
        out += format_real(r.z.real());
        out += ',';
        out += format_real(r.z.imag());
        out += ',';
        out += format_real(r.f.real());
        out += ',';
        out += format_real(r.f.imag());
        out += ',';
        out += r.pole ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<GridRow>& rows) {
    json j = json::array();
    for (const GridRow& r : rows) {
        j.push_back({{"re_z", r.z.real()},
                     {"im_z", r.z.imag()},
                     {"re_f", r.f.real()},
                     {"im_f", r.f.imag()},
                     {"pole_flag", r.pole ? 1 : 0}});
    }
    return j.dump(2);
}

std::string inversion_to_csv(const StieltjesTable& table) {
    std::string out = "lambda,density";
    for (double e : table.eps_ladder) out += ",density_eps_" + format_real(e);
    out += "\n";
    for (std::size_t k = 0; k < table.grid.size(); ++k) {
        out += format_real(table.grid[k]);
        out += ',';
        out += format_real(table.density[k]);
        for (std::size_t e = 0; e < table.eps_ladder.size(); ++e) {
            out += ',';
            out += format_real(table.density_by_eps[e][k]);
        }
        out += '\n';
    }
    out += "# atoms: location,weight\n";
    for (const AtomEstimate& a : table.atoms) {
        out += "atom," + format_real(a.location) + ',' + format_real(a.weight) + '\n';
    }
    return out;
}

}  // namespace lsys
