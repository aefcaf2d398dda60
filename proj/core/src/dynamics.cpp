#include "nambu/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace nambu {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : dimension_(p.dimension()) {
  terms_.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    Term t{c.get_d(), {}};
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      t.factors.push_back({static_cast<std::uint32_t>(v), e[v]});
      max_exponent_ = std::max(max_exponent_, e[v]);
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledPolynomial::operator()(const std::vector<std::vector<double>>& powers) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (const auto& f : t.factors) v *= powers[f.var][f.exponent];
    sum += v;
  }
  return sum;
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (const auto& f : t.factors) {
      for (std::uint32_t k = 0; k < f.exponent; ++k) v *= point[f.var];
    }
    sum += v;
  }
  return sum;
}

void FlowProblem::validate() const {
  const auto n = field.size();
  if (n == 0) throw std::invalid_argument("flow: empty vector field");
  if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("flow: dt must be > 0");
  if (!(std::isfinite(horizon) && horizon > dt)) {
    throw std::invalid_argument("flow: horizon T must be finite and exceed dt");
  }
  if (initial_state.size() != n) {
    throw DimensionError("flow: initial state has " + std::to_string(initial_state.size()) +
                         " components, field has " + std::to_string(n));
  }
  for (const auto& f : field) {
    if (f.dimension() != n) throw DimensionError("flow: field component dimension mismatch");
  }
  for (const auto& inv : invariants) {
    if (inv.poly.dimension() != n) {
      throw DimensionError("flow: invariant '" + inv.name + "' dimension mismatch");
    }
  }
  for (double x : initial_state) {
    if (!std::isfinite(x)) throw std::invalid_argument("flow: non-finite initial state");
  }
}

std::size_t step_count(double dt, double horizon) {
  const double ratio = horizon / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

namespace {

class FieldEvaluator {
 public:
  explicit FieldEvaluator(const std::vector<Polynomial>& field) : n_(field.size()) {
    std::uint32_t max_exp = 1;
    for (const auto& f : field) {
      compiled_.emplace_back(f);
      max_exp = std::max(max_exp, compiled_.back().max_exponent());
    }
    powers_.assign(n_, std::vector<double>(max_exp + 1, 1.0));
  }

  void operator()(const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t v = 0; v < n_; ++v) {
      auto& row = powers_[v];
      for (std::size_t k = 1; k < row.size(); ++k) row[k] = row[k - 1] * x[v];
    }
    for (std::size_t i = 0; i < n_; ++i) out[i] = compiled_[i](powers_);
  }

 private:
  std::size_t n_;
  std::vector<CompiledPolynomial> compiled_;
  std::vector<std::vector<double>> powers_;
};

}  // namespace

Trajectory integrate_rk4(const FlowProblem& problem) {
  problem.validate();
  const auto n = problem.field.size();
  const auto steps = step_count(problem.dt, problem.horizon);
  const double h = problem.dt;

  FieldEvaluator f(problem.field);
  std::vector<CompiledPolynomial> invariants;
  Trajectory traj;
  for (const auto& inv : problem.invariants) {
    invariants.emplace_back(inv.poly);
    traj.invariant_names.push_back(inv.name);
  }
  traj.invariant_series.assign(invariants.size(), {});
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  for (auto& s : traj.invariant_series) s.reserve(steps + 1);

  auto record = [&](std::size_t step, const std::vector<double>& x) {
    traj.times.push_back(static_cast<double>(step) * h);
    traj.states.push_back(x);
    for (std::size_t k = 0; k < invariants.size(); ++k) {
      traj.invariant_series[k].push_back(invariants[k](x));
    }
  };

  std::vector<double> x = problem.initial_state;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  record(0, x);
  for (std::size_t step = 1; step <= steps; ++step) {
    f(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(x[i])) {
        throw FlowError("non-finite state at step " + std::to_string(step), step);
      }
    }
    record(step, x);
  }
  return traj;
}

bool ConservationReport::all_within() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const DriftEntry& e) { return e.exceeded; });
}

ConservationReport conservation_report(const Trajectory& trajectory, double tolerance) {
  ConservationReport report;
  report.tolerance = tolerance;
  for (std::size_t k = 0; k < trajectory.invariant_names.size(); ++k) {
    const auto& series = trajectory.invariant_series[k];
    DriftEntry e{trajectory.invariant_names[k]};
    if (!series.empty()) {
      e.initial = series.front();
      const double scale = std::max(1.0, std::abs(e.initial));
      for (double v : series) e.max_drift = std::max(e.max_drift, std::abs(v - e.initial) / scale);
    }
    e.exceeded = !(e.max_drift <= tolerance);
    report.entries.push_back(std::move(e));
  }
  return report;
}

void write_csv(std::ostream& out, const Trajectory& trajectory) {
  const std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",z" << i;
  for (const auto& name : trajectory.invariant_names) out << ',' << name;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    out << trajectory.times[s];
    for (double v : trajectory.states[s]) out << ',' << v;
    for (const auto& series : trajectory.invariant_series) out << ',' << series[s];
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace nambu
