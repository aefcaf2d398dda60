#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nambu/polynomial.hpp"
#include "nambu/tensor.hpp"

namespace nambu {

class MapError : public std::invalid_argument {
 public:
  MapError(const std::string& message, std::size_t component, Polynomial residual)
      : std::invalid_argument(message), component_(component), residual_(std::move(residual)) {}

  // 0-based component whose composition failed to reduce to a coordinate.
  std::size_t component() const { return component_; }
  const Polynomial& residual() const { return residual_; }

 private:
  std::size_t component_;
  Polynomial residual_;
};

/// Invertible polynomial change of variables x = h(z), z = h~(x). Both
/// compositions are checked to be the identity at construction.
class CoordinateMap {
 public:
  static CoordinateMap validate(std::vector<Polynomial> forward, std::vector<Polynomial> inverse);
  static CoordinateMap identity(std::size_t dimension);

  std::size_t dimension() const { return forward_.size(); }
  const std::vector<Polynomial>& forward() const { return forward_; }
  const std::vector<Polynomial>& inverse() const { return inverse_; }

  CoordinateMap inverted() const;
  // x = second(first(z)).
  static CoordinateMap then(const CoordinateMap& first, const CoordinateMap& second);

 private:
  CoordinateMap(std::vector<Polynomial> forward, std::vector<Polynomial> inverse)
      : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

  std::vector<Polynomial> forward_;
  std::vector<Polynomial> inverse_;
};

CoordinateMap validate_map(std::vector<Polynomial> forward, std::vector<Polynomial> inverse);

/// lambda~_{i_1..i_r} = {h_{i_1}, ..., h_{i_r}} o h~, in the target variables.
AntisymTensor transform_tensor(const AntisymTensor& tensor, const CoordinateMap& map);
AntisymTensor transform_poisson(const AntisymTensor& poisson, const CoordinateMap& map);

/// Pulls the canonical Levi-Civita tensor on (1, 2, 3, ..., r) in the
/// Darboux coordinates x = map(z) back to the original coordinates z.
AntisymTensor pullback_canonical(const CoordinateMap& map, std::size_t rank);

}  // namespace nambu
