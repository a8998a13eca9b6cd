#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "spectra/cert/stabcert.hpp"
#include "spectra/prox/proxdecay.hpp"
#include "spectra/walk/measure.hpp"

namespace spectra::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string command;
  Json params = Json::object();  // command parameters, seed included
  std::string out_path;          // empty: stdout
  std::string format = "json";   // json | csv
  bool timings = false;
};

struct Report {
  Json document;   // full schema-versioned report
  int exit_code = 0;
};

/// Parses a measure file against the normative schema:
/// {group: "SO3"|"SU2", atoms: [{quaternion|matrix, weight}], symmetric}.
/// Entries are "p/q" strings or {rat:[p,q], quad:{d,p2,q2}}. Throws
/// InvalidMeasureFile / ParseError / NotProbability / NotSymmetric.
walk::MeasureSpec load_measure(const std::string& path);
walk::MeasureSpec parse_measure(const Json& doc);

/// {field: "R" | {"p": prime}, matrices: [[["p/q",..],..],..], weights: [..]}
prox::ProductEnsemble load_ensemble(const std::string& path);

/// {matrices: [...]} with QuadExt entries; symmetric closure not implied.
std::vector<cert::MatQ> load_generators(const std::string& path);

/// {basis: [[entries..], ..]}
SubspaceModel<QuadExt> load_subspace(const std::string& path);

/// Dispatches to the owning module and wraps the result into a report.
/// Domain errors are embedded with module/code and exit code 2.
Report run(const ExperimentConfig& config);

/// Flat projection of the results array for the csv format.
std::string to_csv(const Json& results);

std::string render(const Report& report, const std::string& format);

}  // namespace spectra::cli
