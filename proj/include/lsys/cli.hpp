#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsys/types.hpp"

namespace lsys {

// ---------------------------------------------------------------------------
// Command-line surface. Exit codes are stable API:
//   0 success, 1 verification failure, 2 parse/usage error,
//   3 pole saturation (> 50% of grid rows), 4 I/O failure,
//   5 normalization mismatch.
// ---------------------------------------------------------------------------

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailure = 1,
    kExitParse = 2,
    kExitPoleSaturation = 3,
    kExitIo = 4,
    kExitNormalization = 5,
};

enum class SourceKind { MeasureFile, ModelFile, Example };

struct JobSpec {
    SourceKind source = SourceKind::MeasureFile;
    std::string path;              // measure/model file
    int example_id = 1;            // 1..4
    double ell = 1.0;
    double mu_angle = 0.0;         // phase family parameter as an angle
    double rho = 0.0;
    std::optional<double> kappa;   // for derived roles on measure sources
    std::string role = "weyl";
    GridSpec grid;
    std::string out_path;          // empty = stdout
    std::string format = "csv";    // csv | json
};

struct InvertSpec {
    SourceKind source = SourceKind::MeasureFile;
    std::string path;
    int example_id = 1;
    double ell = 1.0;
    double mu_angle = 0.0;
    double rho = 0.0;
    double window_lo = -2.0;
    double window_hi = 2.0;
    int grid_n = 401;
    std::vector<double> eps_ladder = {1e-2, 5e-3, 2.5e-3};
    std::string out_path;
};

struct ModelBuildSpec {
    std::string measure_path;
    double kappa = 0.0;
    int n_nodes = 16;
    std::string out_path;
};

int run_eval(const JobSpec& job, std::ostream& out, std::ostream& err);
int run_verify(const std::string& selector, std::ostream& out, std::ostream& err);
int run_model(const ModelBuildSpec& spec, std::ostream& out, std::ostream& err);
int run_invert(const InvertSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace lsys
