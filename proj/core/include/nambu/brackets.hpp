#pragma once

#include <span>
#include <string>
#include <vector>

#include "nambu/polynomial.hpp"
#include "nambu/tensor.hpp"

namespace nambu {

/// A bracket tensor together with the names of the phase-space variables it
/// acts on. Rank 2 gives a Poisson bracket, rank r >= 3 an r-linear Nambu
/// bracket.
class BracketContext {
 public:
  BracketContext(AntisymTensor tensor, std::vector<std::string> names);
  explicit BracketContext(AntisymTensor tensor);

  const AntisymTensor& tensor() const { return tensor_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t dimension() const { return tensor_.dimension(); }
  std::size_t rank() const { return tensor_.rank(); }

 private:
  AntisymTensor tensor_;
  std::vector<std::string> names_;
};

/// Determinant of a square polynomial matrix by cofactor expansion.
Polynomial determinant(const PolyMatrix& m);

/// {A_1, ..., A_r} = lambda_{i_1...i_r} dA_1/dz_{i_1} ... dA_r/dz_{i_r}.
/// Evaluated per stored canonical tuple as entry * det(dA_a/dz_{tuple_b}).
Polynomial nambu_bracket(const AntisymTensor& tensor, std::span<const Polynomial> args);
Polynomial nambu_bracket(const BracketContext& ctx, std::span<const Polynomial> args);

/// Same as nambu_bracket but takes precomputed gradients of the arguments.
Polynomial bracket_of_gradients(const AntisymTensor& tensor,
                                std::span<const std::vector<Polynomial>> gradients);

Polynomial poisson_bracket(const AntisymTensor& poisson, const Polynomial& a, const Polynomial& b);

/// Rank-2 tensor J_ij = {z_i, z_j, C_1, ..., C_{r-2}}.
AntisymTensor derived_poisson(const AntisymTensor& tensor, std::span<const Polynomial> casimirs);

/// Component i is {z_i, G_1, ..., G_{r-1}}.
std::vector<Polynomial> hamiltonian_vector_field(const AntisymTensor& tensor,
                                                 std::span<const Polynomial> generators);

}  // namespace nambu
