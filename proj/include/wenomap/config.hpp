#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "wenomap/harness.hpp"

namespace wenomap {

/// Fully resolved run configuration.
///
/// Documents are JSON objects with the blocks "problem", "scheme",
/// "integrator", "euler", "reference" and "output". A top-level "extends"
/// names a base document (path relative to the including file) that is
/// merged underneath; objects merge key by key, other values replace.
struct RunConfig {
  std::string name;
  CaseSpec base;                  // problem, strategy, integrator, gas, reference
  std::vector<std::size_t> grids;  // one entry: single run; several: convergence study
  std::string mapping_name;       // preset or family name, informational
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;        // empty: <out-dir>/<name>.csv
  bool deterministic = false;
};

/// Parses an already merged document. Throws ConfigError whose message
/// starts with the offending key path, e.g. "scheme.mapping.right.c1: ...".
RunConfig parse_config(const nlohmann::json& doc);

/// Reads a file, resolves the "extends" chain and parses the result.
RunConfig load_config(const std::string& path);

/// Reads a file and resolves "extends" without parsing.
nlohmann::json load_document(const std::string& path);

/// Explicit document equivalent to `cfg`: no "extends", mappings written out
/// per sub-stencil. parse_config(effective_config(c)) reproduces c.
nlohmann::json effective_config(const RunConfig& cfg);

/// Per-k mapping specs from a "scheme.mapping" value: a preset name, one
/// family object applied to every linear weight, or an array of objects.
std::vector<MappingSpec> parse_mapping(const nlohmann::json& v, int r, const std::string& key);
/// One stand-alone mapping object with an explicit "dk".
MappingSpec parse_mapping_spec(const nlohmann::json& obj, const std::string& key);
nlohmann::json mapping_to_json(const MappingSpec& s);

/// Cases a config expands to: one per grid.
std::vector<CaseSpec> expand_cases(const RunConfig& cfg);

}  // namespace wenomap
