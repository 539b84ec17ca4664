#pragma once

#include <stdexcept>
#include <string>

namespace cuspcalc {

struct UnsupportedPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvertible : std::runtime_error {
  explicit NotInvertible(const std::string& what, std::string witness_ = {})
      : std::runtime_error(what), witness(std::move(witness_)) {}
  std::string witness;
};

struct NotFullyElliptic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SharedPrincipalRequired : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CalibrationInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompatibilityError : std::runtime_error {
  CompatibilityError(const std::string& what, int j_, int k_, int end_)
      : std::runtime_error(what), j(j_), k(k_), end(end_) {}
  int j, k, end;
};

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GapTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cuspcalc
