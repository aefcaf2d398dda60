#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nambu/polynomial.hpp"

namespace nambu {

/// Outcome of one exact identity check. A failing report carries the first
/// violation in enumeration order: an index witness (0-based), observable
/// names, or both, and the nonzero residual polynomial found there.
struct VerificationReport {
  VerificationReport() = default;
  explicit VerificationReport(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  std::vector<std::size_t> witness;
  std::vector<std::string> witness_observables;
  std::optional<Polynomial> residual;
  std::size_t examined = 0;
  // Names for variables the residual carries beyond the phase space (the
  // pencil parameter of a compatibility check).
  std::vector<std::string> extra_variables;

  void fail(std::vector<std::size_t> at, Polynomial value) {
    passed = false;
    witness = std::move(at);
    residual = std::move(value);
  }
};

struct AdmissibilityReport {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  std::size_t casimirs = 0;  // N - rank
  bool admissible = false;   // rank == 2, i.e. N = K + 2
  bool rank_parity_ok = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

std::string to_text(const VerificationReport& report, std::span<const std::string> names);
std::string to_text(const AdmissibilityReport& report);

nlohmann::ordered_json to_json(const VerificationReport& report,
                               std::span<const std::string> names);
nlohmann::ordered_json to_json(const AdmissibilityReport& report);

}  // namespace nambu
