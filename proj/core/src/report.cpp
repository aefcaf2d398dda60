#include "nambu/report.hpp"

#include <sstream>

namespace nambu {

namespace {

std::vector<std::string> residual_names(const VerificationReport& r,
                                        std::span<const std::string> names) {
  std::vector<std::string> all(names.begin(), names.end());
  all.insert(all.end(), r.extra_variables.begin(), r.extra_variables.end());
  return all;
}

std::string witness_text(const std::vector<std::size_t>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i] + 1);
  }
  return s + ")";
}

}  // namespace

std::string to_text(const VerificationReport& report, std::span<const std::string> names) {
  std::ostringstream out;
  out << report.check << ": " << (report.passed ? "PASS" : "FAIL") << " (" << report.examined
      << " cases examined)\n";
  if (!report.witness.empty()) out << "  witness: " << witness_text(report.witness) << "\n";
  if (!report.witness_observables.empty()) {
    out << "  observables:";
    for (const auto& n : report.witness_observables) out << " " << n;
    out << "\n";
  }
  if (report.residual) {
    out << "  residual: " << render(*report.residual, residual_names(report, names)) << "\n";
  }
  return out.str();
}

std::string to_text(const AdmissibilityReport& report) {
  std::ostringstream out;
  out << "dimension N: " << report.dimension << "\n"
      << "generic rank: " << report.rank << "\n"
      << "casimir count K: " << report.casimirs << "\n"
      << "admissible: " << (report.admissible ? "yes" : "no") << " (N = K + 2 "
      << (report.admissible ? "holds" : "fails") << ")\n"
      << "samples: " << report.samples << " (seed " << report.seed << ")\n";
  if (!report.rank_parity_ok) {
    out << "warning: odd rank; an antisymmetric matrix must have even rank, so N - K is "
           "inconsistent (input is not antisymmetric or has further Casimirs)\n";
  }
  return out.str();
}

nlohmann::ordered_json to_json(const VerificationReport& report,
                               std::span<const std::string> names) {
  nlohmann::ordered_json j;
  j["check"] = report.check;
  j["passed"] = report.passed;
  if (report.witness.empty()) {
    j["witness"] = nullptr;
  } else {
    auto w = nlohmann::ordered_json::array();
    for (auto i : report.witness) w.push_back(i + 1);
    j["witness"] = w;
  }
  if (report.witness_observables.empty()) {
    j["witness_observables"] = nullptr;
  } else {
    j["witness_observables"] = report.witness_observables;
  }
  j["residual"] = report.residual
                      ? nlohmann::ordered_json(render(*report.residual, residual_names(report, names)))
                      : nlohmann::ordered_json(nullptr);
  j["examined"] = report.examined;
  return j;
}

nlohmann::ordered_json to_json(const AdmissibilityReport& report) {
  nlohmann::ordered_json j;
  j["dimension"] = report.dimension;
  j["rank"] = report.rank;
  j["casimirs"] = report.casimirs;
  j["admissible"] = report.admissible;
  j["rank_parity_ok"] = report.rank_parity_ok;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  return j;
}

}  // namespace nambu
