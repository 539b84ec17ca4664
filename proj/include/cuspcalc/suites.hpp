#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspcalc/io.hpp"
#include "cuspcalc/oracle.hpp"
#include "cuspcalc/random.hpp"
#include "cuspcalc/traces.hpp"

namespace cuspcalc {

struct SuiteConfig {
  unsigned long seed = 20240611;
  std::map<std::string, long> counts;  // per identity; missing entries use the identity's default
  Trunc trunc{-6, 6};
  Trunc chain_trunc{-4, 4};  // letters of Hochschild chains
  int dim_max = 2;
  std::vector<std::string> suites = {"algebra", "traces", "hochschild", "index"};
  CalibrationConstants constants = CalibrationConstants::defaults();
  SuspendedConventions conventions;
  DiscretizationSpec oracle;
  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;
};

using SampleCheck = std::function<std::optional<std::string>(Rng& g, const SuiteConfig& cfg, long sample)>;

struct Identity {
  std::string suite;
  std::string name;
  std::string anchor;
  long default_count = 1;
  SampleCheck check;  // nullopt on success, otherwise a description of the failure
};

const std::vector<Identity>& identities();
const Identity& find_identity(const std::string& name);

/// Runs one identity on its samples. Sample k draws from its own generator seeded by
/// (seed, name, k), so results do not depend on which other identities run.
IdentityResult run_identity(const Identity& id, const SuiteConfig& cfg, std::optional<long> count = std::nullopt);
Report run_suite(const SuiteConfig& cfg);

}  // namespace cuspcalc
