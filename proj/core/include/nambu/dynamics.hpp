#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nambu/polynomial.hpp"
#include "nambu/verify.hpp"

namespace nambu {

/// A polynomial compiled once for repeated floating-point evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& p);

  // `powers[v][k]` must hold point[v]^k for k up to max_exponent().
  double operator()(const std::vector<std::vector<double>>& powers) const;
  double operator()(std::span<const double> point) const;
  std::uint32_t max_exponent() const { return max_exponent_; }
  std::size_t dimension() const { return dimension_; }

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exponent;
  };
  struct Term {
    double coefficient;
    std::vector<Factor> factors;
  };
  std::size_t dimension_;
  std::uint32_t max_exponent_ = 0;
  std::vector<Term> terms_;
};

class FlowError : public std::runtime_error {
 public:
  FlowError(const std::string& message, std::size_t step)
      : std::runtime_error(message), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct FlowProblem {
  std::vector<Polynomial> field;
  std::vector<double> initial_state;
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<NamedPolynomial> invariants;

  // Throws std::invalid_argument unless 0 < dt < horizon, both finite, and
  // field, state and invariants share one dimension.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::string> invariant_names;
  std::vector<std::vector<double>> invariant_series;  // [invariant][step]

  std::size_t size() const { return times.size(); }
};

/// Number of RK4 steps covering the horizon, ceil(T / dt) with a relative
/// tolerance so that e.g. T = 100, dt = 1e-3 gives exactly 100000 steps.
std::size_t step_count(double dt, double horizon);

/// Classical fixed-step fourth-order Runge-Kutta; invariants are sampled at
/// every step, including t = 0.
Trajectory integrate_rk4(const FlowProblem& problem);

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_drift = 0.0;  // max |I(t) - I(0)| / max(1, |I(0)|)
  bool exceeded = false;
};

struct ConservationReport {
  double tolerance = 0.0;
  std::vector<DriftEntry> entries;
  bool all_within() const;
};

ConservationReport conservation_report(const Trajectory& trajectory, double tolerance);

/// CSV with header `t,z1,...,zN,<invariant names>`, one row per step, 17
/// significant digits per value.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace nambu
