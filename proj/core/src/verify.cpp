#include "nambu/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "nambu/brackets.hpp"

namespace nambu {

namespace {

void require_rank(const AntisymTensor& t, std::size_t rank, const char* check) {
  if (t.rank() != rank) {
    throw TensorError(std::string(check) + ": tensor rank " + std::to_string(t.rank()) +
                      ", expected " + std::to_string(rank));
  }
}

// Dense N^3 view of a rank-3 tensor, and optionally its first derivatives.
class DenseRank3 {
 public:
  explicit DenseRank3(const AntisymTensor& t, bool with_derivatives = false)
      : n_(t.dimension()), values_(n_ * n_ * n_, Polynomial(n_)) {
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        for (std::size_t c = 0; c < n_; ++c) values_[flat(a, b, c)] = t.get({a, b, c});
      }
    }
    if (with_derivatives) {
      derivs_.reserve(values_.size() * n_);
      for (const auto& v : values_) {
        for (std::size_t i = 0; i < n_; ++i) derivs_.push_back(partial(v, i));
      }
    }
  }

  const Polynomial& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return values_[flat(a, b, c)];
  }
  // d/dz_i of entry (a,b,c).
  const Polynomial& d(std::size_t i, std::size_t a, std::size_t b, std::size_t c) const {
    return derivs_[flat(a, b, c) * n_ + i];
  }
  std::size_t dimension() const { return n_; }

 private:
  std::size_t flat(std::size_t a, std::size_t b, std::size_t c) const {
    return (a * n_ + b) * n_ + c;
  }

  std::size_t n_;
  std::vector<Polynomial> values_;
  std::vector<Polynomial> derivs_;
};

void add_product(Polynomial& acc, const Polynomial& a, const Polynomial& b, int sign = 1) {
  if (a.is_zero() || b.is_zero()) return;
  if (sign > 0) {
    acc += a * b;
  } else {
    acc -= a * b;
  }
}

Polynomial algebraic_at(const DenseRank3& l, std::size_t n, std::size_t m, std::size_t i,
                        std::size_t j, std::size_t k, std::size_t p) {
  Polynomial s(l.dimension());
  add_product(s, l(n, i, j), l(m, k, p));
  add_product(s, l(n, j, k), l(m, i, p));
  add_product(s, l(n, k, i), l(m, j, p));
  add_product(s, l(m, i, j), l(n, k, p));
  add_product(s, l(m, j, k), l(n, i, p));
  add_product(s, l(m, k, i), l(n, j, p));
  return s;
}

Polynomial differential_at(const DenseRank3& l, std::size_t j, std::size_t k, std::size_t m,
                           std::size_t n, std::size_t p) {
  Polynomial s(l.dimension());
  for (std::size_t i = 0; i < l.dimension(); ++i) {
    add_product(s, l(i, j, k), l.d(i, m, n, p));
    add_product(s, l(i, n, p), l.d(i, m, j, k), -1);
    add_product(s, l(i, p, m), l.d(i, n, j, k), -1);
    add_product(s, l(i, m, n), l.d(i, p, j, k), -1);
  }
  return s;
}

VerificationReport first_violation(const char* check, const std::vector<Violation>& found,
                                   std::size_t examined) {
  VerificationReport report{check};
  report.examined = examined;
  if (!found.empty()) report.fail(found.front().tuple, found.front().residual);
  return report;
}

}  // namespace

Polynomial algebraic_residual(const AntisymTensor& t, std::span<const std::size_t> x) {
  require_rank(t, 3, "algebraic_residual");
  if (x.size() != 6) throw std::invalid_argument("algebraic_residual: need 6 indices");
  const auto g = [&](std::size_t a, std::size_t b, std::size_t c) { return t.get({a, b, c}); };
  const auto [n, m, i, j, k, p] = std::array{x[0], x[1], x[2], x[3], x[4], x[5]};
  return g(n, i, j) * g(m, k, p) + g(n, j, k) * g(m, i, p) + g(n, k, i) * g(m, j, p) +
         g(m, i, j) * g(n, k, p) + g(m, j, k) * g(n, i, p) + g(m, k, i) * g(n, j, p);
}

Polynomial differential_residual(const AntisymTensor& t, std::span<const std::size_t> x) {
  require_rank(t, 3, "differential_residual");
  if (x.size() != 5) throw std::invalid_argument("differential_residual: need 5 indices");
  return differential_at(DenseRank3(t, true), x[0], x[1], x[2], x[3], x[4]);
}

std::vector<Violation> algebraic_violations(const AntisymTensor& t) {
  require_rank(t, 3, "check_cond_algebraic");
  const DenseRank3 l(t);
  const auto N = t.dimension();
  std::vector<Violation> out;
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t m = n; m < N; ++m)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
          for (std::size_t k = j + 1; k < N; ++k)
            for (std::size_t p = 0; p < N; ++p) {
              Polynomial s = algebraic_at(l, n, m, i, j, k, p);
              if (!s.is_zero()) out.push_back({{n, m, i, j, k, p}, std::move(s)});
            }
  return out;
}

std::vector<Violation> expand_algebraic_orbits(std::span<const Violation> reps) {
  std::map<IndexTuple, Polynomial> all;
  for (const auto& [tuple, residual] : reps) {
    const auto n = tuple[0], m = tuple[1];
    IndexTuple ijk{tuple[2], tuple[3], tuple[4]};
    std::sort(ijk.begin(), ijk.end());
    do {
      const int sign = permutation_sign(ijk);
      for (const auto& [a, b] : {std::pair{n, m}, std::pair{m, n}}) {
        all.emplace(IndexTuple{a, b, ijk[0], ijk[1], ijk[2], tuple[5]},
                    sign > 0 ? residual : -residual);
      }
    } while (std::next_permutation(ijk.begin(), ijk.end()));
  }
  std::vector<Violation> out;
  out.reserve(all.size());
  for (auto& [tuple, residual] : all) out.push_back({tuple, residual});
  return out;
}

std::vector<Violation> differential_violations(const AntisymTensor& t) {
  require_rank(t, 3, "check_cond_differential");
  const DenseRank3 l(t, true);
  const auto N = t.dimension();
  std::vector<Violation> out;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = j + 1; k < N; ++k)
      for (std::size_t m = 0; m < N; ++m)
        for (std::size_t n = m + 1; n < N; ++n)
          for (std::size_t p = n + 1; p < N; ++p) {
            Polynomial s = differential_at(l, j, k, m, n, p);
            if (!s.is_zero()) out.push_back({{j, k, m, n, p}, std::move(s)});
          }
  return out;
}

VerificationReport check_cond_algebraic(const AntisymTensor& t) {
  const auto N = t.dimension();
  const std::size_t examined = N * (N + 1) / 2 * (N * (N - 1) * (N - 2) / 6) * N;
  return first_violation("cond_algebraic", algebraic_violations(t), examined);
}

VerificationReport check_cond_differential(const AntisymTensor& t) {
  const auto N = t.dimension();
  const std::size_t examined = N * (N - 1) / 2 * (N * (N - 1) * (N - 2) / 6);
  return first_violation("cond_differential", differential_violations(t), examined);
}

Polynomial jacobi_residual(const PolyMatrix& J, std::size_t i, std::size_t j, std::size_t k,
                           std::size_t geometric_dimension) {
  Polynomial s(J[0][0].dimension());
  for (std::size_t l = 0; l < geometric_dimension; ++l) {
    add_product(s, J[i][l], partial(J[j][k], l));
    add_product(s, J[k][l], partial(J[i][j], l));
    add_product(s, J[j][l], partial(J[k][i], l));
  }
  return s;
}

namespace {

VerificationReport jacobi_report(const char* name, const PolyMatrix& J, std::size_t n) {
  VerificationReport report{name};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++report.examined;
        Polynomial s = jacobi_residual(J, i, j, k, n);
        if (!s.is_zero() && report.passed) report.fail({i, j, k}, std::move(s));
      }
  return report;
}

}  // namespace

VerificationReport check_jacobi(const AntisymTensor& poisson) {
  require_rank(poisson, 2, "check_jacobi");
  return jacobi_report("jacobi", as_matrix(poisson), poisson.dimension());
}

VerificationReport check_casimir(const AntisymTensor& poisson, const Polynomial& candidate) {
  require_rank(poisson, 2, "check_casimir");
  if (candidate.dimension() != poisson.dimension()) {
    throw DimensionError("check_casimir: candidate dimension mismatch");
  }
  const auto J = as_matrix(poisson);
  const auto grad = gradient(candidate);
  VerificationReport report{"casimir"};
  for (std::size_t i = 0; i < poisson.dimension(); ++i) {
    ++report.examined;
    Polynomial s(poisson.dimension());
    for (std::size_t j = 0; j < poisson.dimension(); ++j) add_product(s, J[i][j], grad[j]);
    if (!s.is_zero() && report.passed) report.fail({i}, std::move(s));
  }
  return report;
}

VerificationReport check_compatibility(const AntisymTensor& j1, const AntisymTensor& j2) {
  require_rank(j1, 2, "check_compatibility");
  require_rank(j2, 2, "check_compatibility");
  if (j1.dimension() != j2.dimension()) {
    throw DimensionError("check_compatibility: dimension mismatch");
  }
  const auto n = j1.dimension();
  const auto a = as_matrix(j1);
  const auto b = as_matrix(j2);
  const Polynomial t = Polynomial::variable(n + 1, n);
  PolyMatrix pencil(n, std::vector<Polynomial>(n, Polynomial(n + 1)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pencil[i][j] = extend_dimension(a[i][j], n + 1) + t * extend_dimension(b[i][j], n + 1);
    }
  }
  auto report = jacobi_report("compatibility", pencil, n);
  report.extra_variables = {"t"};
  return report;
}

std::size_t exact_rank(const std::vector<std::vector<Rational>>& m) {
  if (m.empty()) return 0;
  const auto rows = m.size();
  const auto cols = m[0].size();
  // Clear denominators row by row; rank is unchanged.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) throw DimensionError("exact_rank: ragged matrix");
    mpz_class l = 1;
    for (const auto& v : m[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m[r][c].get_num() * (l / m[r][c].get_den());
  }

  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = a[r][c] * a[rank][col] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

AdmissibilityReport generic_rank(const AntisymTensor& poisson, std::size_t samples,
                                 std::uint64_t seed) {
  require_rank(poisson, 2, "generic_rank");
  const auto n = poisson.dimension();
  const auto J = as_matrix(poisson);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coordinate(kSampleMin, kSampleMax);

  AdmissibilityReport report;
  report.dimension = n;
  report.samples = samples;
  report.seed = seed;
  constexpr int kMaxRedraws = 64;
  std::vector<Rational> point(n);
  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < samples; ++s) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      for (auto& x : point) x = coordinate(rng);
      bool any_nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          values[i][j] = eval_rational(J[i][j], point);
          any_nonzero = any_nonzero || values[i][j] != 0;
        }
      }
      if (any_nonzero || poisson.is_zero()) break;
    }
    report.rank = std::max(report.rank, exact_rank(values));
  }
  report.casimirs = n - report.rank;
  report.rank_parity_ok = report.rank % 2 == 0;
  report.admissible = report.rank == 2;
  return report;
}

Polynomial fi_residual(const AntisymTensor& t, std::span<const Polynomial> first,
                       std::span<const Polynomial> second) {
  const auto r = t.rank();
  if (first.size() != r || second.size() + 1 != r) {
    throw std::invalid_argument("fi_residual: expected " + std::to_string(r) + " and " +
                                std::to_string(r - 1) + " observables");
  }
  auto derive = [&](const Polynomial& x) {
    std::vector<Polynomial> args{x};
    args.insert(args.end(), second.begin(), second.end());
    return nambu_bracket(t, args);
  };
  Polynomial residual = derive(nambu_bracket(t, first));
  std::vector<Polynomial> args(first.begin(), first.end());
  for (std::size_t s = 0; s < r; ++s) {
    args[s] = derive(first[s]);
    residual -= nambu_bracket(t, args);
    args[s] = first[s];
  }
  return residual;
}

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t count, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& c : increasing_tuples(count, k)) out.push_back(std::move(c));
  return out;
}

const Polynomial& observable_at(std::span<const NamedPolynomial> obs, std::size_t i) {
  if (i >= obs.size()) throw std::out_of_range("fundamental identity: observable index out of range");
  return obs[i].poly;
}

void record_fi_failure(VerificationReport& report, std::span<const NamedPolynomial> obs,
                       const FiSelection& sel, Polynomial residual) {
  report.passed = false;
  for (auto i : sel.first) report.witness_observables.push_back(obs[i].name);
  for (auto i : sel.second) report.witness_observables.push_back(obs[i].name);
  report.residual = std::move(residual);
}

}  // namespace

VerificationReport check_fundamental_identity(const AntisymTensor& t,
                                              std::span<const NamedPolynomial> observables) {
  const auto r = t.rank();
  if (observables.size() < 2 * r - 1) {
    throw std::invalid_argument("fundamental identity: exhaustive mode needs at least " +
                                std::to_string(2 * r - 1) + " observables, got " +
                                std::to_string(observables.size()));
  }
  for (const auto& o : observables) {
    if (o.poly.dimension() != t.dimension()) {
      throw DimensionError("fundamental identity: observable '" + o.name +
                           "' has the wrong dimension");
    }
  }
  using Grad = std::vector<Polynomial>;
  std::vector<Grad> grads;
  for (const auto& o : observables) grads.push_back(gradient(o.poly));

  const auto outer = combinations(observables.size(), r);
  const auto inner = combinations(observables.size(), r - 1);

  // delta[c][x] = gradient of {X_x, D, E_1, ...} for the inner selection c.
  std::vector<std::vector<Grad>> delta(inner.size());
  std::vector<Grad> args(r);
  for (std::size_t c = 0; c < inner.size(); ++c) {
    for (std::size_t s = 0; s + 1 < r; ++s) args[s + 1] = grads[inner[c][s]];
    delta[c].reserve(observables.size());
    for (std::size_t x = 0; x < observables.size(); ++x) {
      args[0] = grads[x];
      delta[c].push_back(gradient(bracket_of_gradients(t, args)));
    }
  }

  VerificationReport report{"fundamental_identity"};
  std::vector<Grad> slot_args(r);
  for (const auto& o : outer) {
    for (std::size_t s = 0; s < r; ++s) args[s] = grads[o[s]];
    const Grad bracket_grad = gradient(bracket_of_gradients(t, args));
    for (std::size_t c = 0; c < inner.size(); ++c) {
      ++report.examined;
      slot_args[0] = bracket_grad;
      for (std::size_t s = 0; s + 1 < r; ++s) slot_args[s + 1] = grads[inner[c][s]];
      Polynomial residual = bracket_of_gradients(t, slot_args);
      for (std::size_t s = 0; s < r; ++s) {
        args[s] = delta[c][o[s]];
        residual -= bracket_of_gradients(t, args);
        args[s] = grads[o[s]];
      }
      if (!residual.is_zero()) {
        record_fi_failure(report, observables, {o, inner[c]}, std::move(residual));
        return report;
      }
    }
  }
  return report;
}

VerificationReport check_fundamental_identity(const AntisymTensor& t,
                                              std::span<const NamedPolynomial> observables,
                                              std::span<const FiSelection> selections) {
  VerificationReport report{"fundamental_identity"};
  std::vector<Polynomial> first;
  std::vector<Polynomial> second;
  for (const auto& sel : selections) {
    first.clear();
    second.clear();
    for (auto i : sel.first) first.push_back(observable_at(observables, i));
    for (auto i : sel.second) second.push_back(observable_at(observables, i));
    ++report.examined;
    Polynomial residual = fi_residual(t, first, second);
    if (!residual.is_zero()) {
      record_fi_failure(report, observables, sel, std::move(residual));
      return report;
    }
  }
  return report;
}

std::vector<NamedPolynomial> monomial_basis(std::size_t dimension, std::uint32_t max_degree,
                                            std::span<const std::string> names) {
  std::vector<NamedPolynomial> out;
  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    // Exponent vectors of total degree d, largest-first in lex order.
    std::vector<Exponents> level;
    Exponents e(dimension, 0);
    auto fill = [&](auto&& self, std::size_t var, std::uint32_t remaining) -> void {
      if (var + 1 == dimension) {
        e[var] = remaining;
        level.push_back(e);
        return;
      }
      for (std::uint32_t k = remaining + 1; k-- > 0;) {
        e[var] = k;
        self(self, var + 1, remaining - k);
      }
    };
    fill(fill, 0, d);
    for (auto& x : level) {
      Polynomial p = Polynomial::term(x, Rational(1));
      out.push_back({render(p, names), std::move(p)});
    }
  }
  return out;
}

}  // namespace nambu
