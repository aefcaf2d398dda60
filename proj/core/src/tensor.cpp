#include "nambu/tensor.hpp"

#include <algorithm>
#include <string>

namespace nambu {

namespace {

std::string tuple_text(std::span<const std::size_t> idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i] + 1);
  }
  return s + ")";
}

}  // namespace

CanonicalIndex canonicalize(std::span<const std::size_t> idx) {
  CanonicalIndex out;
  out.sorted.assign(idx.begin(), idx.end());
  int inversions = 0;
  // Transposition count of a bubble sort: parity equals permutation parity.
  for (std::size_t i = 0; i < out.sorted.size(); ++i) {
    for (std::size_t j = 0; j + 1 < out.sorted.size() - i; ++j) {
      if (out.sorted[j] > out.sorted[j + 1]) {
        std::swap(out.sorted[j], out.sorted[j + 1]);
        ++inversions;
      }
    }
  }
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  for (std::size_t i = 1; i < out.sorted.size(); ++i) {
    if (out.sorted[i] == out.sorted[i - 1]) {
      out.sign = 0;
      break;
    }
  }
  return out;
}

int permutation_sign(std::span<const std::size_t> idx) { return canonicalize(idx).sign; }

AntisymTensor::AntisymTensor(std::size_t dimension, std::size_t rank)
    : dimension_(dimension), rank_(rank) {
  if (rank < 2 || rank > dimension) {
    throw TensorError("tensor rank " + std::to_string(rank) + " invalid for dimension " +
                      std::to_string(dimension) + " (need 2 <= r <= N)");
  }
}

void AntisymTensor::check_tuple(std::span<const std::size_t> idx) const {
  if (idx.size() != rank_) {
    throw TensorError("index tuple " + tuple_text(idx) + " has arity " +
                      std::to_string(idx.size()) + ", tensor rank is " + std::to_string(rank_));
  }
  for (auto i : idx) {
    if (i >= dimension_) {
      throw std::out_of_range("index tuple " + tuple_text(idx) + " out of range for dimension " +
                              std::to_string(dimension_));
    }
  }
}

Polynomial AntisymTensor::get(std::span<const std::size_t> idx) const {
  check_tuple(idx);
  const auto c = canonicalize(idx);
  if (c.sign == 0) return Polynomial(dimension_);
  const auto it = entries_.find(c.sorted);
  if (it == entries_.end()) return Polynomial(dimension_);
  return c.sign > 0 ? it->second : -it->second;
}

const Polynomial* AntisymTensor::find(const IndexTuple& canonical) const {
  const auto it = entries_.find(canonical);
  return it == entries_.end() ? nullptr : &it->second;
}

TensorBuilder::TensorBuilder(std::size_t dimension, std::size_t rank)
    : tensor_(dimension, rank) {}

TensorBuilder& TensorBuilder::set(std::span<const std::size_t> idx, const Polynomial& value) {
  tensor_.check_tuple(idx);
  if (value.dimension() != tensor_.dimension_) {
    throw DimensionError("tensor entry " + tuple_text(idx) + " has dimension " +
                         std::to_string(value.dimension()) + ", tensor has " +
                         std::to_string(tensor_.dimension_));
  }
  const auto c = canonicalize(idx);
  if (c.sign == 0) {
    if (!value.is_zero()) {
      throw TensorError("repeated index in " + tuple_text(idx) + " with nonzero value");
    }
    return *this;
  }
  const Polynomial signed_value = c.sign > 0 ? value : -value;
  auto [it, inserted] = assigned_.try_emplace(c.sorted, signed_value);
  if (!inserted && !(it->second == signed_value)) {
    throw TensorError("antisymmetry contradiction at " + tuple_text(idx) +
                      ": conflicts with an earlier entry for the same index set");
  }
  if (signed_value.is_zero()) {
    tensor_.entries_.erase(c.sorted);
  } else {
    tensor_.entries_[c.sorted] = signed_value;
  }
  return *this;
}

TensorBuilder& TensorBuilder::accumulate(std::span<const std::size_t> idx,
                                         const Polynomial& value) {
  tensor_.check_tuple(idx);
  const auto c = canonicalize(idx);
  if (c.sign == 0) return *this;
  Polynomial& slot = tensor_.entries_.try_emplace(c.sorted, tensor_.dimension_).first->second;
  if (c.sign > 0) {
    slot += value;
  } else {
    slot -= value;
  }
  if (slot.is_zero()) tensor_.entries_.erase(c.sorted);
  assigned_[c.sorted] = tensor_.get(c.sorted);
  return *this;
}

AntisymTensor TensorBuilder::build() const { return tensor_; }

AntisymTensor levi_civita(std::size_t dimension, std::span<const std::size_t> support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] >= dimension) {
      throw TensorError("levi_civita: support index out of range");
    }
    if (i > 0 && support[i] <= support[i - 1]) {
      throw TensorError("levi_civita: support must be strictly increasing");
    }
  }
  TensorBuilder b(dimension, support.size());
  b.set(support, Polynomial::constant(dimension, Rational(1)));
  return b.build();
}

AntisymTensor levi_civita(std::size_t dimension, std::initializer_list<std::size_t> support) {
  return levi_civita(dimension, std::span<const std::size_t>(support.begin(), support.size()));
}

AntisymTensor linear_combination(std::span<const ScaledTensor> terms) {
  if (terms.empty()) throw TensorError("linear_combination: no terms");
  const auto n = terms.front().tensor.dimension();
  const auto r = terms.front().tensor.rank();
  TensorBuilder b(n, r);
  for (const auto& [coefficient, t] : terms) {
    if (t.dimension() != n || t.rank() != r) {
      throw TensorError("linear_combination: shape mismatch");
    }
    if (coefficient.dimension() != n) {
      throw DimensionError("linear_combination: coefficient dimension mismatch");
    }
    for (const auto& [idx, value] : t.entries()) b.accumulate(idx, coefficient * value);
  }
  return b.build();
}

AntisymTensor scale(const AntisymTensor& t, const Polynomial& coefficient) {
  const ScaledTensor term{coefficient, t};
  return linear_combination(std::span<const ScaledTensor>(&term, 1));
}

AntisymTensor operator+(const AntisymTensor& a, const AntisymTensor& b) {
  const Polynomial one = Polynomial::constant(a.dimension(), Rational(1));
  const ScaledTensor terms[] = {{one, a}, {one, b}};
  return linear_combination(terms);
}

PolyMatrix as_matrix(const AntisymTensor& t) {
  if (t.rank() != 2) {
    throw TensorError("as_matrix: tensor rank is " + std::to_string(t.rank()) + ", expected 2");
  }
  const auto n = t.dimension();
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (const auto& [idx, value] : t.entries()) {
    m[idx[0]][idx[1]] = value;
    m[idx[1]][idx[0]] = -value;
  }
  return m;
}

AntisymTensor from_matrix(const PolyMatrix& m) {
  const auto n = m.size();
  TensorBuilder b(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DimensionError("from_matrix: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m[i][j] == -m[j][i])) {
        throw TensorError("from_matrix: matrix is not antisymmetric at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
      if (i < j) b.set({i, j}, m[i][j]);
    }
  }
  return b.build();
}

std::vector<IndexTuple> increasing_tuples(std::size_t dimension, std::size_t rank) {
  std::vector<IndexTuple> out;
  if (rank > dimension) return out;
  IndexTuple idx(rank);
  for (std::size_t i = 0; i < rank; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t pos = rank;
    while (pos > 0 && idx[pos - 1] == dimension - rank + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < rank; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace nambu
