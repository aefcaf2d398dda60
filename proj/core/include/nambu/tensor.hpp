#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nambu/polynomial.hpp"

namespace nambu {

// Indices are 0-based in the API; text formats and reports use 1-based.
using IndexTuple = std::vector<std::size_t>;

struct CanonicalIndex {
  IndexTuple sorted;
  int sign = 0;  // 0 iff an index repeats
};

/// Sorts `idx` ascending and returns the sign of the sorting permutation
/// (transposition count parity); sign 0 when an index repeats.
CanonicalIndex canonicalize(std::span<const std::size_t> idx);

/// Sign of a permutation given as a tuple; 0 on repeats.
int permutation_sign(std::span<const std::size_t> idx);

class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fully antisymmetric rank-r tensor over dimension N with polynomial entries.
/// Only strictly increasing index tuples with nonzero entries are stored.
class AntisymTensor {
 public:
  using EntryMap = std::map<IndexTuple, Polynomial>;

  AntisymTensor() = default;
  AntisymTensor(std::size_t dimension, std::size_t rank);

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return rank_; }
  const EntryMap& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Polynomial get(std::span<const std::size_t> idx) const;
  Polynomial get(std::initializer_list<std::size_t> idx) const {
    return get(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  // Entry on a canonical tuple, or nullptr if it is zero. No sign handling.
  const Polynomial* find(const IndexTuple& canonical) const;

  friend bool operator==(const AntisymTensor& a, const AntisymTensor& b) {
    return a.dimension_ == b.dimension_ && a.rank_ == b.rank_ && a.entries_ == b.entries_;
  }

 private:
  friend class TensorBuilder;
  void check_tuple(std::span<const std::size_t> idx) const;

  std::size_t dimension_ = 0;
  std::size_t rank_ = 0;
  EntryMap entries_;
};

/// Accumulates entries given on arbitrary index orders. `set` rejects a
/// repeated index with a nonzero value and any second assignment to the same
/// index set whose signed value disagrees with the first.
class TensorBuilder {
 public:
  TensorBuilder(std::size_t dimension, std::size_t rank);

  TensorBuilder& set(std::span<const std::size_t> idx, const Polynomial& value);
  TensorBuilder& set(std::initializer_list<std::size_t> idx, const Polynomial& value) {
    return set(std::span<const std::size_t>(idx.begin(), idx.size()), value);
  }
  // Adds to the entry instead of assigning it.
  TensorBuilder& accumulate(std::span<const std::size_t> idx, const Polynomial& value);

  AntisymTensor build() const;

 private:
  AntisymTensor tensor_;
  std::map<IndexTuple, Polynomial> assigned_;
};

/// Entry +1 on `support` (strictly increasing, 0-based), zero elsewhere.
AntisymTensor levi_civita(std::size_t dimension, std::span<const std::size_t> support);
AntisymTensor levi_civita(std::size_t dimension, std::initializer_list<std::size_t> support);

struct ScaledTensor {
  Polynomial coefficient;
  AntisymTensor tensor;
};

AntisymTensor linear_combination(std::span<const ScaledTensor> terms);
AntisymTensor scale(const AntisymTensor& t, const Polynomial& coefficient);
AntisymTensor operator+(const AntisymTensor& a, const AntisymTensor& b);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Full N x N matrix of a rank-2 tensor, J[i][j] = get(i, j).
PolyMatrix as_matrix(const AntisymTensor& t);
AntisymTensor from_matrix(const PolyMatrix& m);

std::vector<IndexTuple> increasing_tuples(std::size_t dimension, std::size_t rank);

}  // namespace nambu
