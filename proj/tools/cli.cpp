#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nambu/brackets.hpp"
#include "nambu/dynamics.hpp"
#include "nambu/system.hpp"
#include "nambu/transform.hpp"
#include "nambu/verify.hpp"

namespace nambu::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string file;
  std::string format = "text";
};

struct ObjectOptions {
  std::string tensor;
  std::string matrix;
};

struct VerifyOptions {
  ObjectOptions object;
  bool cond1 = false;
  bool cond2 = false;
  bool jacobi = false;
  bool fi = false;
  unsigned degree = 2;
  std::vector<std::string> fi_observables;
  std::vector<std::string> fi_tuples;
  std::vector<std::string> casimirs;
  std::string compatible;
};

struct AdmissibleOptions {
  std::string matrix;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
};

struct TransformOptions {
  ObjectOptions object;
  std::string map;
  bool inverse = false;
  std::size_t canonical = 0;
};

struct SimulateOptions {
  ObjectOptions object;
  std::vector<std::string> generators;
  std::vector<std::string> monitors;
  std::string z0;
  double dt = 1e-3;
  double horizon = 10.0;
  double tolerance = 1e-7;
  std::string csv;
};

struct DeriveOptions {
  std::string tensor;
  std::vector<std::string> casimirs;
  std::string name = "J";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

const AntisymTensor& lookup(const std::map<std::string, AntisymTensor>& table,
                            const std::string& name, const char* kind) {
  const auto it = table.find(name);
  if (it == table.end()) throw UsageError(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

// A matrix selector may be omitted when the file declares a single matrix or
// one named J.
std::string default_matrix(const SystemSpec& spec, const std::string& requested) {
  if (!requested.empty()) return requested;
  if (spec.matrices.size() == 1) return spec.matrices.begin()->first;
  if (spec.matrices.count("J")) return "J";
  throw UsageError("no matrix selected; pass --matrix NAME");
}

struct SelectedObject {
  std::string name;
  const AntisymTensor* tensor;
  bool is_matrix;
};

SelectedObject select_object(const SystemSpec& spec, const ObjectOptions& o) {
  if (!o.tensor.empty() && !o.matrix.empty()) {
    throw UsageError("select either --tensor or --matrix, not both");
  }
  if (!o.tensor.empty()) return {o.tensor, &lookup(spec.tensors, o.tensor, "tensor"), false};
  if (!o.matrix.empty()) return {o.matrix, &lookup(spec.matrices, o.matrix, "matrix"), true};
  throw UsageError("select an object with --tensor NAME or --matrix NAME");
}

// Observable selector: a declared observable name, otherwise an expression
// over the system variables (e.g. a coordinate such as "q").
NamedPolynomial resolve_observable(const SystemSpec& spec, const std::string& selector) {
  const auto it = spec.observables.find(selector);
  if (it != spec.observables.end()) return {selector, it->second};
  try {
    return {selector, parse_expr(selector, spec.variables)};
  } catch (const ParseError& e) {
    throw UsageError("'" + selector + "' is neither an observable nor a valid expression (" +
                     e.detail() + ")");
  }
}

std::vector<double> parse_state(const std::string& text, std::size_t n) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw UsageError("invalid --z0 component '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.size() != n) {
    throw UsageError("--z0 has " + std::to_string(out.size()) + " components, system has " +
                     std::to_string(n));
  }
  return out;
}

Json tensor_json(const std::string& name, const AntisymTensor& t,
                 std::span<const std::string> names) {
  Json j;
  j["name"] = name;
  j["kind"] = t.rank() == 2 ? "matrix" : "tensor";
  j["rank"] = t.rank();
  j["variables"] = std::vector<std::string>(names.begin(), names.end());
  auto entries = Json::array();
  for (const auto& [idx, value] : t.entries()) {
    auto index = Json::array();
    for (auto i : idx) index.push_back(i + 1);
    entries.push_back(Json{{"index", index}, {"value", render(value, names)}});
  }
  j["entries"] = entries;
  return j;
}

void emit_object(std::ostream& out, const std::string& format, const std::string& name,
                 const AntisymTensor& t, std::span<const std::string> names) {
  if (format == "json") {
    out << tensor_json(name, t, names).dump(2) << "\n";
  } else {
    out << render_object_file(name, t, names);
  }
}

int cmd_verify(const CommonOptions& common, const VerifyOptions& o, std::ostream& out) {
  const auto spec = load_system(common.file);
  const auto& names = spec.variables.names();
  std::vector<VerificationReport> reports;

  const bool any_check = o.cond1 || o.cond2 || o.jacobi || o.fi || !o.fi_observables.empty() ||
                         !o.fi_tuples.empty() || !o.casimirs.empty() || !o.compatible.empty();
  ObjectOptions object = o.object;
  if (object.tensor.empty() && object.matrix.empty() &&
      (!o.casimirs.empty() || o.jacobi || !o.compatible.empty())) {
    object.matrix = default_matrix(spec, "");
  }
  const auto selected = select_object(spec, object);
  const AntisymTensor& t = *selected.tensor;

  const bool cond1 = o.cond1 || (!any_check && t.rank() == 3);
  const bool cond2 = o.cond2 || (!any_check && t.rank() == 3);
  const bool jacobi = o.jacobi || (!any_check && t.rank() == 2);

  if ((cond1 || cond2) && t.rank() != 3) {
    throw UsageError("--cond1/--cond2 need a rank-3 tensor; '" + selected.name + "' has rank " +
                     std::to_string(t.rank()));
  }
  if ((jacobi || !o.casimirs.empty() || !o.compatible.empty()) && t.rank() != 2) {
    throw UsageError("--jacobi/--casimir/--compatible need a matrix");
  }

  if (cond1) reports.push_back(check_cond_algebraic(t));
  if (cond2) reports.push_back(check_cond_differential(t));
  if (jacobi) reports.push_back(check_jacobi(t));
  for (const auto& c : o.casimirs) {
    auto r = check_casimir(t, resolve_observable(spec, c).poly);
    r.check = "casimir " + c;
    reports.push_back(std::move(r));
  }
  if (!o.compatible.empty()) {
    auto r = check_compatibility(t, lookup(spec.matrices, o.compatible, "matrix"));
    r.check = "compatibility " + selected.name + " + t*" + o.compatible;
    reports.push_back(std::move(r));
  }
  if (o.fi || !o.fi_observables.empty()) {
    std::vector<NamedPolynomial> family;
    if (!o.fi_observables.empty()) {
      for (const auto& s : o.fi_observables) family.push_back(resolve_observable(spec, s));
    } else {
      family = monomial_basis(spec.dimension(), o.degree, names);
    }
    if (family.size() < 2 * t.rank() - 1) {
      throw UsageError("fundamental identity needs at least " + std::to_string(2 * t.rank() - 1) +
                       " observables");
    }
    auto r = check_fundamental_identity(t, family);
    if (o.fi_observables.empty()) r.check += " (monomials up to degree " + std::to_string(o.degree) + ")";
    reports.push_back(std::move(r));
  }
  if (!o.fi_tuples.empty()) {
    std::vector<NamedPolynomial> family;
    std::vector<FiSelection> selections;
    for (const auto& tuple : o.fi_tuples) {
      const auto groups = split(tuple, ';');
      if (groups.size() != 2) throw UsageError("--fi-tuple expects 'A,B,...;D,E,...'");
      FiSelection sel;
      for (int g = 0; g < 2; ++g) {
        for (const auto& s : split(groups[g], ',')) {
          family.push_back(resolve_observable(spec, s));
          (g == 0 ? sel.first : sel.second).push_back(family.size() - 1);
        }
      }
      if (sel.first.size() != t.rank() || sel.second.size() + 1 != t.rank()) {
        throw UsageError("--fi-tuple '" + tuple + "' needs " + std::to_string(t.rank()) + " and " +
                         std::to_string(t.rank() - 1) + " observables");
      }
      selections.push_back(std::move(sel));
    }
    auto r = check_fundamental_identity(t, family, selections);
    r.check += " (designated)";
    reports.push_back(std::move(r));
  }

  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;

  if (common.format == "json") {
    Json j;
    j["file"] = common.file;
    j["object"] = selected.name;
    auto arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, names));
    j["reports"] = arr;
    j["passed"] = all_passed;
    out << j.dump(2) << "\n";
  } else {
    out << (selected.is_matrix ? "matrix " : "tensor ") << selected.name << "\n";
    for (const auto& r : reports) out << to_text(r, names);
    out << "overall: " << (all_passed ? "PASS" : "FAIL") << "\n";
  }
  return all_passed ? kExitOk : kExitViolation;
}

int cmd_admissible(const CommonOptions& common, const AdmissibleOptions& o, std::ostream& out) {
  const auto spec = load_system(common.file);
  const auto name = default_matrix(spec, o.matrix);
  const auto report = generic_rank(lookup(spec.matrices, name, "matrix"), o.samples, o.seed);
  if (common.format == "json") {
    Json j;
    j["file"] = common.file;
    j["matrix"] = name;
    j["report"] = to_json(report);
    out << j.dump(2) << "\n";
  } else {
    out << "matrix " << name << "\n" << to_text(report);
  }
  return report.rank_parity_ok ? kExitOk : kExitViolation;
}

int cmd_transform(const CommonOptions& common, const TransformOptions& o, std::ostream& out) {
  const auto spec = load_system(common.file);
  const auto it = spec.maps.find(o.map);
  if (it == spec.maps.end()) throw UsageError("unknown map '" + o.map + "'");
  const CoordinateMap map = o.inverse ? it->second.inverted() : it->second;
  const auto n = spec.dimension();

  if (o.canonical != 0) {
    if (!o.object.tensor.empty() || !o.object.matrix.empty()) {
      throw UsageError("--canonical does not take an object selector");
    }
    if (o.canonical < 3 || o.canonical > n) {
      throw UsageError("--canonical rank must lie in 3.." + std::to_string(n));
    }
    // The pulled-back tensor lives in the source variables of the map.
    const auto names = o.inverse ? target_names(n) : spec.variables.names();
    emit_object(out, common.format, "CANONICAL", pullback_canonical(map, o.canonical), names);
    return kExitOk;
  }

  const auto selected = select_object(spec, o.object);
  const auto result = transform_tensor(*selected.tensor, map);
  const auto names = o.inverse ? spec.variables.names() : target_names(n);
  emit_object(out, common.format, selected.name, result, names);
  return kExitOk;
}

int cmd_simulate(const CommonOptions& common, const SimulateOptions& o, std::ostream& out,
                 std::ostream& err) {
  if (!(o.dt > 0.0) || !std::isfinite(o.dt)) throw UsageError("--dt must be positive");
  if (!(o.horizon > o.dt) || !std::isfinite(o.horizon)) throw UsageError("--T must exceed --dt");
  if (!(o.tolerance > 0.0)) throw UsageError("--tol must be positive");
  const auto spec = load_system(common.file);
  const auto selected = select_object(spec, o.object);
  const AntisymTensor& t = *selected.tensor;
  if (o.generators.size() + 1 != t.rank()) {
    throw UsageError("a rank-" + std::to_string(t.rank()) + " bracket needs " +
                     std::to_string(t.rank() - 1) + " --gen selectors");
  }
  std::vector<NamedPolynomial> gens;
  std::vector<Polynomial> gen_polys;
  for (const auto& g : o.generators) {
    gens.push_back(resolve_observable(spec, g));
    gen_polys.push_back(gens.back().poly);
  }

  // Each generator is conserved by its own flow: {G_j, G_1, ..., G_{r-1}} = 0.
  bool symbolic_ok = true;
  std::vector<Polynomial> args(t.rank(), Polynomial(spec.dimension()));
  std::copy(gen_polys.begin(), gen_polys.end(), args.begin() + 1);
  for (const auto& g : gen_polys) {
    args[0] = g;
    symbolic_ok = symbolic_ok && nambu_bracket(t, args).is_zero();
  }

  FlowProblem problem;
  problem.field = hamiltonian_vector_field(t, gen_polys);
  problem.initial_state = parse_state(o.z0, spec.dimension());
  problem.dt = o.dt;
  problem.horizon = o.horizon;
  problem.invariants = gens;
  if (!o.monitors.empty()) {
    problem.invariants.clear();
    for (const auto& m : o.monitors) problem.invariants.push_back(resolve_observable(spec, m));
  }

  Trajectory traj;
  std::string flow_error;
  try {
    traj = integrate_rk4(problem);
  } catch (const FlowError& e) {
    flow_error = e.what();
  }

  const bool csv_to_stdout = o.csv == "-" || (o.csv.empty() && common.format == "csv");
  std::ostream& summary = csv_to_stdout ? err : out;
  if (!flow_error.empty()) {
    summary << "error: " << flow_error << "\n";
    return kExitViolation;
  }
  if (csv_to_stdout) {
    write_csv(out, traj);
  } else if (!o.csv.empty()) {
    std::ofstream file(o.csv);
    if (!file) throw UsageError("cannot write CSV file '" + o.csv + "'");
    write_csv(file, traj);
  }

  const auto report = conservation_report(traj, o.tolerance);
  const bool ok = report.all_within() && symbolic_ok;
  if (common.format == "json") {
    Json j;
    j["file"] = common.file;
    j["object"] = selected.name;
    j["generators"] = o.generators;
    j["steps"] = traj.size() - 1;
    j["dt"] = o.dt;
    j["T"] = o.horizon;
    j["tolerance"] = o.tolerance;
    j["generators_conserved_exactly"] = symbolic_ok;
    auto drift = Json::array();
    for (const auto& e : report.entries) {
      drift.push_back(Json{{"name", e.name},
                           {"initial", e.initial},
                           {"max_drift", e.max_drift},
                           {"exceeded", e.exceeded}});
    }
    j["drift"] = drift;
    j["passed"] = ok;
    summary << j.dump(2) << "\n";
  } else {
    summary << "flow of " << selected.name << " generated by " << join(o.generators, ", ") << "\n"
            << "steps: " << traj.size() - 1 << " (dt " << o.dt << ", T " << o.horizon << ")\n"
            << "generators conserved exactly: " << (symbolic_ok ? "yes" : "no") << "\n";
    const auto precision = summary.precision(3);
    summary << std::scientific;
    for (const auto& e : report.entries) {
      summary << "drift " << e.name << ": " << e.max_drift << (e.exceeded ? "  EXCEEDS " : "  within ")
              << o.tolerance << "\n";
    }
    summary << std::defaultfloat;
    summary.precision(precision);
    summary << "overall: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_derive(const CommonOptions& common, const DeriveOptions& o, std::ostream& out) {
  const auto spec = load_system(common.file);
  if (o.tensor.empty()) throw UsageError("select a tensor with --tensor NAME");
  const auto& t = lookup(spec.tensors, o.tensor, "tensor");
  if (o.casimirs.size() + 2 != t.rank()) {
    throw UsageError("a rank-" + std::to_string(t.rank()) + " tensor needs " +
                     std::to_string(t.rank() - 2) + " --casimir selectors, got " +
                     std::to_string(o.casimirs.size()));
  }
  std::vector<Polynomial> casimirs;
  for (const auto& c : o.casimirs) casimirs.push_back(resolve_observable(spec, c).poly);
  if (!is_identifier(o.name)) throw UsageError("invalid output name '" + o.name + "'");
  emit_object(out, common.format, o.name, derived_poisson(t, casimirs), spec.variables.names());
  return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& common, bool allow_csv = false) {
  sub->add_option("file", common.file, "System file")->required();
  std::vector<std::string> formats{"text", "json"};
  if (allow_csv) formats.push_back("csv");
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember(formats));
}

void add_object(CLI::App* sub, ObjectOptions& o) {
  sub->add_option("--tensor", o.tensor, "Tensor selector");
  sub->add_option("--matrix", o.matrix, "Matrix selector");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification and simulation of Nambu and Poisson brackets", "nambu"};
  app.require_subcommand(1);

  CommonOptions common;
  VerifyOptions verify;
  AdmissibleOptions admissible;
  TransformOptions transform;
  SimulateOptions simulate;
  DeriveOptions derive;

  auto* v = app.add_subcommand("verify", "Check tensor constraints, Jacobi, Casimirs, compatibility, fundamental identity");
  add_common(v, common);
  add_object(v, verify.object);
  v->add_flag("--cond1", verify.cond1, "Algebraic (quadratic) constraint on a rank-3 tensor");
  v->add_flag("--cond2", verify.cond2, "Differential constraint on a rank-3 tensor");
  v->add_flag("--jacobi", verify.jacobi, "Jacobi identity of a matrix");
  v->add_flag("--fi", verify.fi, "Fundamental identity on the monomial basis");
  v->add_option("--degree", verify.degree, "Maximal monomial degree for --fi")
      ->check(CLI::Range(1U, 6U));
  v->add_option("--fi-observables", verify.fi_observables,
                "Fundamental identity over these observables (exhaustive)")
      ->delimiter(',');
  v->add_option("--fi-tuple", verify.fi_tuples, "Designated selection 'A,B,C;D,E'");
  v->add_option("--casimir", verify.casimirs, "Casimir candidate (observable or expression)");
  v->add_option("--compatible", verify.compatible, "Second matrix for the pencil check");

  auto* a = app.add_subcommand("admissible", "Generic rank, Casimir count and N = K + 2 verdict");
  add_common(a, common);
  a->add_option("--matrix", admissible.matrix, "Matrix selector");
  a->add_option("--samples", admissible.samples, "Random sample points")->check(CLI::PositiveNumber);
  a->add_option("--seed", admissible.seed, "Sampling seed");

  auto* t = app.add_subcommand("transform", "Apply a coordinate map to a tensor or matrix");
  add_common(t, common);
  add_object(t, transform.object);
  t->add_option("--map", transform.map, "Map selector")->required();
  t->add_flag("--inverse", transform.inverse, "Use the inverse of the map");
  t->add_option("--canonical", transform.canonical,
                "Pull the rank-r Levi-Civita tensor of the target coordinates back");

  auto* s = app.add_subcommand("simulate", "Integrate a bracket-generated flow with RK4");
  add_common(s, common, true);
  add_object(s, simulate.object);
  s->add_option("--gen", simulate.generators, "Generator (observable or expression)");
  s->add_option("--monitor", simulate.monitors, "Invariant to monitor (default: generators)");
  s->add_option("--z0", simulate.z0, "Initial state, comma separated")->required();
  s->add_option("--dt", simulate.dt, "Step size");
  s->add_option("--T", simulate.horizon, "Time horizon");
  s->add_option("--tol", simulate.tolerance, "Relative drift tolerance");
  s->add_option("--csv", simulate.csv, "Trajectory CSV path ('-' for stdout)");

  auto* d = app.add_subcommand("derive", "Poisson matrix {z_i, z_j, C_1, ...} of a Nambu tensor");
  add_common(d, common);
  d->add_option("--tensor", derive.tensor, "Tensor selector");
  d->add_option("--casimir", derive.casimirs, "Casimir generator (observable or expression)");
  d->add_option("--name", derive.name, "Name of the derived matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*v) return cmd_verify(common, verify, out);
    if (*a) return cmd_admissible(common, admissible, out);
    if (*t) return cmd_transform(common, transform, out);
    if (*s) return cmd_simulate(common, simulate, out, err);
    if (*d) return cmd_derive(common, derive, out);
  } catch (const ParseError& e) {
    err << common.file << ":" << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace nambu::cli
