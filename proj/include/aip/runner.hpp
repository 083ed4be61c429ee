#pragma once

// Batch runner behind the command-line tool: JSON configs in, a JSON report
// and CSV evaluation grids out.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "aip/colligation.hpp"
#include "aip/parametrization.hpp"
#include "aip/problems.hpp"

namespace aip::io {

using nlohmann::json;

/// [re, im] or a bare real number.
Complex complex_from_json(const json& j);
json complex_to_json(Complex z);
/// Array of rows of complex entries.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

/// "type" is optional and inferred from the keys when absent
/// (nodes → np, t0 → boundary, zeros → sarason, D → raw).
AipProblem problem_from_json(const json& j);
std::string problem_type(const AipProblem& p);

/// Pretty-printed JSON with every floating-point number written with 17
/// significant digits; non-finite numbers become the strings "inf", "-inf", "nan".
std::string dump_stable(const json& j);

/// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::filesystem::path& file, const std::string& contents);

struct GridSpec {
    std::size_t disk_points = 200;
    std::size_t circle_points = 512;
    double radius = 0.99;
    bool write_csv = true;
};

struct Tolerances {
    double interp = 1e-7;
    double boundary_interp = 1e-6;
    double contractivity = 1e-9;
    double norm_equality = 5e-3;
    double hardy = 1e-6;
    double data_identity = 1e-8;
    double defect_psd = 1e-6;
    double property_2prime = 1e-6;
    double rank = 1e-6;
    double inner = 1e-7;
    double angular = 1e-2;
    double sarason_mass = 1e-6;
    double theta_division = 1e-6;
    double outer = 1e-3;
    double criterion = 1e-3;
    double denseness = 2e-3;

    json to_json() const;
};

inline const std::vector<std::string> kAnalyses{"solve",    "verify",     "boundary",
                                                "residual", "properties", "sarason"};

struct RunConfig {
    json problem;
    std::vector<json> parameters;
    std::vector<std::string> analyses{"solve", "verify"};
    GridSpec grid;
    Tolerances tol;
    std::size_t quad_n = 4096;
    std::uint64_t seed = 0;
    std::filesystem::path output = "aip_out";
};

/// A relative "problem" path is resolved against base_dir.
RunConfig parse_config(const json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& file);

/// Expands parameter specs (zero, constant, blaschke, realized, random) for
/// the given coefficient matrix. Random constants are drawn from a
/// mt19937_64 stream seeded with `seed`.
std::vector<std::pair<json, SchurParameter>> make_parameters(const std::vector<json>& specs,
                                                             const CoefficientMatrix& cm,
                                                             std::uint64_t seed);

struct RunOutcome {
    int exit_code = 0; // 0 pass, 1 check failure, 2 invalid input
    json report;
    std::string s_grid_csv; // empty when not produced
    std::string w_grid_csv;
};

/// Runs the analyses without touching the file system.
RunOutcome execute(const RunConfig& cfg);

/// execute() plus report.json, S_grid.csv and w_grid.csv in cfg.output.
RunOutcome run(const RunConfig& cfg);

/// Report for input that could not be parsed or built (exit code 2).
json error_report(const std::string& kind, const std::string& message);

} // namespace aip::io
