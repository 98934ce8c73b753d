#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dsing/outer_newton.hpp"
#include "dsing/structure.hpp"

namespace dsing {

/// One solver input: the matrix-valued function, the admissible perturbation
/// structure and per-problem option overrides.
struct Problem {
  std::string name;
  MatrixValuedFunction function;
  StructureSpec structure;
  OuterOptions options;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);
std::string serialize_problem(const Problem& problem);

/// Report serialization round-trips losslessly apart from the timing field.
struct ReportFile {
  DistanceReport report;
  std::string tool_version;
  Real wall_seconds = 0.0;
};

std::string serialize_report(const ReportFile& report);
ReportFile parse_report(const std::string& text);
ReportFile load_report(const std::filesystem::path& path);

extern const char* const kToolVersion;

}  // namespace dsing
