#pragma once

#include <string>

#include "jetvar/models.hpp"

namespace jetvar {

// Version string embedded in machine-readable reports.
inline const char* engine_version() { return "0.1.0"; }

// Machine-readable verification report:
// {"model": ..., "checks": [{"name", "status": "pass"|"fail",
//  "residual": string|null, "millis": int}, ...], "engine-version": ...}
std::string report_json(const ModelReport& r);

// One aligned line per check, residual excerpts on failures.
std::string report_text(const ModelReport& r);

// The same table as a LaTeX tabular environment.
std::string report_latex(const ModelReport& r);

// Machine-readable error wrapper: {"error": {"code", "message"}}.
std::string error_json(const std::string& code, const std::string& message);

}  // namespace jetvar
