#pragma once

#include <string>

#include <json.hpp>

#include "dualmink/convex_body.hpp"
#include "dualmink/estimates.hpp"
#include "dualmink/measures.hpp"
#include "dualmink/solver.hpp"

namespace dualmink {

// JSON file formats.
//
// Body:     {"type":"ellipsoid","axes":[...],"rotation":[[...]]}
//           {"type":"polytope","vertices":[[...]]}
//           {"type":"ball","radius":r,"center":[...]}
//           {"type":"support_field","L":32,"values":[...],"n":3}
// Problem:  {"n":3,"p":0.0,"q":3.0,
//            "f":{"constant":1.0,"harmonics":[{"k":2,"m":0,"coef":0.01}]}}
//           where "f" may also be a number or {"values":[...]}.
//
// Keys serialize alphabetically and numbers round-trip exactly, so identical
// invocations write byte-identical files.

/// Parses a body spec; field-carried bodies live on `grid` when provided,
/// otherwise on the default grid for their dimension (or the file's "L").
ConvexBody parse_body(const nlohmann::json& j, GridPtr grid = nullptr);
ConvexBody load_body(const std::string& path, GridPtr grid = nullptr);

ProblemSpec parse_problem(const nlohmann::json& j);
ProblemSpec load_problem(const std::string& path);

nlohmann::json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

nlohmann::json solution_to_json(const Solution& sol, const ProblemSpec& spec);
nlohmann::json probe_to_json(const ProbeReport& report);

/// One row per node: index, direction components, value.
std::string field_to_csv(const ScalarField& field);

nlohmann::json density_summary(const DensityMeasure& m);
nlohmann::json atoms_summary(const AtomicMeasure& m);
std::string atoms_to_csv(const AtomicMeasure& m);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json(const std::string& path);

}  // namespace dualmink
