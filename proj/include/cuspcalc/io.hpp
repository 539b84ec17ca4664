#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuspcalc/element.hpp"

namespace cuspcalc {

using nlohmann::ordered_json;

// Element files.
//   RF      {"num": [c0, c1, ...], "den": [{"at": c, "mult": m}, ...]}, coefficients as scalar strings
//   entry   a scalar string, an RF, or {"r0": RF, "r1": RF} meaning r0 + r1 (1 + v^2)^(-1/2)
//   matrix  N x N array of rows of entries (a bare entry is accepted when N = 1)
//   element {"dim": N, "trunc": {"jmin": j, "K": K}, "valid": {"jlo": j, "khi": k},
//            "sigma": [{"j": j, "plus": matrix, "minus": matrix}],
//            "ends": {"plus": [{"k": k, "family": matrix}], "minus": [...]}}
// "valid" is optional and defaults to the truncation.
ordered_json to_json(const RatFunc& r);
ordered_json to_json(const SFunc& f);
ordered_json to_json(const SMat& m);
ordered_json to_json(const CuspElement& a);

RatFunc ratfunc_from_json(const ordered_json& j);
SFunc sfunc_from_json(const ordered_json& j);
SMat smat_from_json(const ordered_json& j, int n);
/// Throws SchemaError on malformed input. Compatibility of the layers is checked separately.
CuspElement element_from_json(const ordered_json& j);

/// Reads and validates an element file: SchemaError, then CompatibilityError naming (j, k, e).
CuspElement parse_element(const std::string& path);
std::string emit_element(const CuspElement& a);

struct IdentityResult {
  std::string name;
  std::string anchor;  // what the identity asserts
  long samples = 0;
  long failures = 0;
  std::optional<std::string> counterexample;  // first failing sample
};

struct Report {
  std::string suite;
  unsigned long seed = 0;
  std::vector<IdentityResult> results;
  long failures() const;
};

ordered_json to_json(const Report& r);
std::string emit_report_json(const Report& r);
/// One row per identity: name,anchor,samples,failures.
std::string emit_report_csv(const Report& r);
/// Writes the report to path ("-" for stdout) in the given format ("json" or "csv").
void emit_report(const Report& r, const std::string& format, const std::string& path);

/// Schemas shipped with the project, as JSON Schema documents.
const ordered_json& element_schema();
const ordered_json& report_schema();

}  // namespace cuspcalc
