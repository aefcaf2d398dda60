#include "nambu/transform.hpp"

#include <numeric>
#include <string>

#include "nambu/brackets.hpp"

namespace nambu {

namespace {

void check_identity(const std::vector<Polynomial>& outer, const std::vector<Polynomial>& inner,
                    const char* direction) {
  const auto n = outer.size();
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial residual = compose(outer[i], inner) - Polynomial::variable(n, i);
    if (!residual.is_zero()) {
      throw MapError(std::string("map is not invertible: ") + direction + " composition of component " +
                         std::to_string(i + 1) + " differs from the identity by " +
                         render(residual, default_names(n, "v")),
                     i, std::move(residual));
    }
  }
}

}  // namespace

CoordinateMap CoordinateMap::validate(std::vector<Polynomial> forward,
                                      std::vector<Polynomial> inverse) {
  const auto n = forward.size();
  if (n == 0 || inverse.size() != n) {
    throw DimensionError("coordinate map: forward has " + std::to_string(n) +
                         " components, inverse has " + std::to_string(inverse.size()));
  }
  for (const auto& p : forward) {
    if (p.dimension() != n) throw DimensionError("coordinate map: forward component dimension");
  }
  for (const auto& p : inverse) {
    if (p.dimension() != n) throw DimensionError("coordinate map: inverse component dimension");
  }
  check_identity(inverse, forward, "inverse(forward(z))");
  check_identity(forward, inverse, "forward(inverse(x))");
  return CoordinateMap(std::move(forward), std::move(inverse));
}

CoordinateMap CoordinateMap::identity(std::size_t dimension) {
  auto z = coordinates(dimension);
  return CoordinateMap(z, z);
}

CoordinateMap CoordinateMap::inverted() const { return CoordinateMap(inverse_, forward_); }

CoordinateMap CoordinateMap::then(const CoordinateMap& first, const CoordinateMap& second) {
  if (first.dimension() != second.dimension()) {
    throw DimensionError("map composition: dimension mismatch");
  }
  std::vector<Polynomial> forward;
  std::vector<Polynomial> inverse;
  for (const auto& p : second.forward_) forward.push_back(compose(p, first.forward_));
  for (const auto& p : first.inverse_) inverse.push_back(compose(p, second.inverse_));
  return CoordinateMap(std::move(forward), std::move(inverse));
}

CoordinateMap validate_map(std::vector<Polynomial> forward, std::vector<Polynomial> inverse) {
  return CoordinateMap::validate(std::move(forward), std::move(inverse));
}

AntisymTensor transform_tensor(const AntisymTensor& tensor, const CoordinateMap& map) {
  if (tensor.dimension() != map.dimension()) {
    throw DimensionError("transform: tensor dimension " + std::to_string(tensor.dimension()) +
                         " does not match map dimension " + std::to_string(map.dimension()));
  }
  const auto n = tensor.dimension();
  std::vector<std::vector<Polynomial>> grads;
  grads.reserve(n);
  for (const auto& h : map.forward()) grads.push_back(gradient(h));

  TensorBuilder b(n, tensor.rank());
  std::vector<std::vector<Polynomial>> selected(tensor.rank());
  for (const auto& idx : increasing_tuples(n, tensor.rank())) {
    for (std::size_t a = 0; a < idx.size(); ++a) selected[a] = grads[idx[a]];
    const Polynomial value = bracket_of_gradients(tensor, selected);
    if (!value.is_zero()) b.set(idx, compose(value, map.inverse()));
  }
  return b.build();
}

AntisymTensor transform_poisson(const AntisymTensor& poisson, const CoordinateMap& map) {
  if (poisson.rank() != 2) {
    throw TensorError("transform_poisson: tensor rank " + std::to_string(poisson.rank()) +
                      ", expected 2");
  }
  return transform_tensor(poisson, map);
}

AntisymTensor pullback_canonical(const CoordinateMap& map, std::size_t rank) {
  if (rank < 3 || rank > map.dimension()) {
    throw TensorError("pullback_canonical: rank " + std::to_string(rank) +
                      " invalid for dimension " + std::to_string(map.dimension()));
  }
  // Darboux pair (x1, x2) followed by the first rank-2 Casimir coordinates.
  IndexTuple support(rank);
  std::iota(support.begin(), support.end(), std::size_t{0});
  return transform_tensor(levi_civita(map.dimension(), support), map.inverted());
}

}  // namespace nambu
