#include "nambu/brackets.hpp"

#include <string>

namespace nambu {

BracketContext::BracketContext(AntisymTensor tensor, std::vector<std::string> names)
    : tensor_(std::move(tensor)), names_(std::move(names)) {
  if (names_.size() != tensor_.dimension()) {
    throw DimensionError("bracket context: " + std::to_string(names_.size()) +
                         " variable names for a tensor of dimension " +
                         std::to_string(tensor_.dimension()));
  }
}

BracketContext::BracketContext(AntisymTensor tensor)
    : BracketContext(tensor, default_names(tensor.dimension())) {}

namespace {

Polynomial minor_determinant(const PolyMatrix& m, std::size_t row, std::vector<bool>& used) {
  const auto n = m.size();
  const auto dim = m[0][0].dimension();
  if (row == n) return Polynomial::constant(dim, Rational(1));
  Polynomial sum(dim);
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    if (used[col]) continue;  // sign alternates over remaining columns only
    if (!m[row][col].is_zero()) {
      used[col] = true;
      Polynomial sub = minor_determinant(m, row + 1, used);
      used[col] = false;
      if (!sub.is_zero()) {
        Polynomial term = m[row][col] * sub;
        if (sign > 0) {
          sum += term;
        } else {
          sum -= term;
        }
      }
    }
    sign = -sign;
  }
  return sum;
}

void require_arity(const AntisymTensor& tensor, std::size_t count, const char* what) {
  if (count != tensor.rank()) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(tensor.rank()) + " arguments, got " +
                                std::to_string(count));
  }
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.empty()) throw std::invalid_argument("determinant of an empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw DimensionError("determinant: matrix is not square");
  }
  std::vector<bool> used(m.size(), false);
  return minor_determinant(m, 0, used);
}

Polynomial bracket_of_gradients(const AntisymTensor& tensor,
                                std::span<const std::vector<Polynomial>> gradients) {
  require_arity(tensor, gradients.size(), "nambu_bracket");
  const auto r = tensor.rank();
  Polynomial result(tensor.dimension());
  PolyMatrix jac(r, std::vector<Polynomial>(r));
  for (const auto& [idx, entry] : tensor.entries()) {
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) jac[a][b] = gradients[a][idx[b]];
    }
    const Polynomial det = determinant(jac);
    if (!det.is_zero()) result += entry * det;
  }
  return result;
}

Polynomial nambu_bracket(const AntisymTensor& tensor, std::span<const Polynomial> args) {
  require_arity(tensor, args.size(), "nambu_bracket");
  std::vector<std::vector<Polynomial>> grads;
  grads.reserve(args.size());
  for (const auto& a : args) {
    if (a.dimension() != tensor.dimension()) {
      throw DimensionError("nambu_bracket: argument dimension " + std::to_string(a.dimension()) +
                           " does not match tensor dimension " +
                           std::to_string(tensor.dimension()));
    }
    grads.push_back(gradient(a));
  }
  return bracket_of_gradients(tensor, grads);
}

Polynomial nambu_bracket(const BracketContext& ctx, std::span<const Polynomial> args) {
  return nambu_bracket(ctx.tensor(), args);
}

Polynomial poisson_bracket(const AntisymTensor& poisson, const Polynomial& a,
                           const Polynomial& b) {
  if (poisson.rank() != 2) {
    throw TensorError("poisson_bracket: tensor rank " + std::to_string(poisson.rank()) +
                      ", expected 2");
  }
  const Polynomial args[] = {a, b};
  return nambu_bracket(poisson, args);
}

AntisymTensor derived_poisson(const AntisymTensor& tensor, std::span<const Polynomial> casimirs) {
  if (casimirs.size() + 2 != tensor.rank()) {
    throw std::invalid_argument("derived_poisson: rank-" + std::to_string(tensor.rank()) +
                                " tensor needs " + std::to_string(tensor.rank() - 2) +
                                " Casimirs, got " + std::to_string(casimirs.size()));
  }
  const auto n = tensor.dimension();
  const auto z = coordinates(n);
  std::vector<Polynomial> args(tensor.rank(), Polynomial(n));
  for (std::size_t k = 0; k < casimirs.size(); ++k) args[k + 2] = casimirs[k];
  TensorBuilder b(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      args[0] = z[i];
      args[1] = z[j];
      b.set({i, j}, nambu_bracket(tensor, args));
    }
  }
  return b.build();
}

std::vector<Polynomial> hamiltonian_vector_field(const AntisymTensor& tensor,
                                                 std::span<const Polynomial> generators) {
  if (generators.size() + 1 != tensor.rank()) {
    throw std::invalid_argument("hamiltonian_vector_field: rank-" +
                                std::to_string(tensor.rank()) + " tensor needs " +
                                std::to_string(tensor.rank() - 1) + " generators, got " +
                                std::to_string(generators.size()));
  }
  const auto n = tensor.dimension();
  std::vector<Polynomial> args(tensor.rank(), Polynomial(n));
  std::copy(generators.begin(), generators.end(), args.begin() + 1);
  std::vector<Polynomial> field;
  field.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    args[0] = Polynomial::variable(n, i);
    field.push_back(nambu_bracket(tensor, args));
  }
  return field;
}

}  // namespace nambu
