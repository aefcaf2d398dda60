#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/parser.hpp"
#include "nambu/polynomial.hpp"
#include "nambu/tensor.hpp"
#include "nambu/transform.hpp"

namespace nambu {

/// Everything declared in one system file. All objects live over the same
/// variable table.
struct SystemSpec {
  VariableTable variables;
  std::map<std::string, AntisymTensor> tensors;
  std::map<std::string, AntisymTensor> matrices;
  std::map<std::string, Polynomial> observables;
  std::map<std::string, CoordinateMap> maps;

  std::size_t dimension() const { return variables.dimension(); }
};

/// Parses the line-oriented system file format:
///
///   vars: q p u
///   param alpha = 1/2
///   tensor L rank 3        (followed by "i j k : expr" lines)
///   matrix J               (followed by "i j : expr" lines)
///   obs H = p^2/2 + alpha*u
///   map PHI forward = q, p, u - q^2 inverse = x1, x2, x3 + x1^2
///
/// '#' starts a comment. Indices are 1-based. Errors carry line and column.
SystemSpec parse_system(std::string_view contents);
SystemSpec load_system(const std::string& path);

/// Target-variable names x1 ... xN used by map inverses.
std::vector<std::string> target_names(std::size_t dimension);

/// Section text re-parseable by parse_system (entry lines use 1-based
/// canonical tuples; zero entries are omitted).
std::string render_tensor_section(const std::string& name, const AntisymTensor& tensor,
                                  std::span<const std::string> names);
std::string render_matrix_section(const std::string& name, const AntisymTensor& matrix,
                                  std::span<const std::string> names);

/// A standalone system file holding one object: the vars line followed by
/// its section. Matrices are written as `matrix`, higher ranks as `tensor`.
std::string render_object_file(const std::string& name, const AntisymTensor& tensor,
                               std::span<const std::string> names);

}  // namespace nambu
