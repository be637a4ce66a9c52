#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stcga/json_io.hpp"

namespace stcga::scenario {

enum class ModelKind { cga5, cga7 };
enum class OutputFormat { json, csv };

const char* to_string(ModelKind m);
OutputFormat parse_format(const std::string& name);

/// Declarative description of one run: a model, named objects, an ordered
/// query list and an output sink. Files are strict JSON with a top-level
/// "version": 1; unknown fields are rejected.
struct Scenario {
  ModelKind model = ModelKind::cga5;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::json;
  std::string output_path;  // empty: write to stdout
  io::json objects;         // validated array
  io::json queries;         // validated array
};

Scenario parse_scenario(const io::json& doc);
Scenario load_scenario(const std::string& path);

struct ScenarioOutput {
  io::json document;     // result document (always built)
  std::string rendered;  // serialized per the effective format
  std::string path;      // target file name; empty means stdout
};

/// Executes every query in order. ValidationError for structural problems,
/// DegeneracyError (prefixed with the offending query) for numerical
/// degeneracies.
ScenarioOutput run_scenario(const Scenario& sc,
                            std::optional<OutputFormat> format_override = std::nullopt);

/// Full CLI path: load, run, write to out_dir (or stream to stdout when the
/// scenario names no path). Returns the process exit code: 0 success,
/// 1 validation error, 2 numerical degeneracy.
int run_scenario_file(const std::string& scenario_path, const std::string& out_dir,
                      const std::string& format_flag, std::ostream& out, std::ostream& err);

}  // namespace stcga::scenario
