#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bochnerlab/manifold.hpp"

namespace bochnerlab::cli {

inline constexpr const char* kToolName = "bochnerlab";
inline constexpr const char* kToolVersion = "0.1.0";

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One batch request.  The mode decides which fields matter: analyze and scan
// need a chart (zoo name or config path), synthetic only needs seeds and n,
// proofcheck takes either a chart or falls back to the synthetic oracle.
struct RunConfig {
  std::string mode;         // analyze | proofcheck | scan | synthetic
  std::string zoo;          // zoo chart name, empty when a config file is used
  std::string config_path;  // manifold config JSON, empty when a zoo is used
  int n = 3;
  std::vector<double> point;  // chart coordinates; empty means default point
  double tol = 1e-8;
  int seeds = 100;
  std::uint64_t seed = 1;
  double radius = 0.5;
  int grid = 3;
  std::string out_path;  // report destination; empty means standard output
};

// Loads {"dim": d, "metric": [[expr]], "J": [[expr]]} or
// {"zoo": name, "params": {...}}.  The metric upper triangle is
// authoritative; a differing lower entry is replaced and reported through
// `warnings`.  Throws CliError with the offending field path on bad input.
manifold::ChartManifold load_manifold(const std::string& path,
                                      std::vector<std::string>* warnings = nullptr);

// Runs one mode and returns the JSON report text.  Top level keys are always
// structure, curvature, bochner, frame, proof, verdict, timings; blocks that
// a mode does not produce are null.  Throws on input errors.
std::string run(const RunConfig& cfg);

// exit code recorded in the report verdict: 0 consistent or not-applicable,
// 2 violation-candidate
int exit_code_for(const std::string& report_json);

// short plain-text digest of a report for terminals
std::string summary_text(const std::string& report_json);

// argv front end: parses flags, runs, writes the report (file or stdout) and
// the summary, maps errors to exit code 1
int main_entry(int argc, const char* const* argv);

}  // namespace bochnerlab::cli
